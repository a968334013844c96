"""Weyl character formula vs the Freudenthal weight-sum oracle."""
import math
from fractions import Fraction as Q

import numpy as np
import pytest

from geomchar.compact_char import (
    NonDominantError,
    SingularPointError,
    character_by_weight_sum,
    dimension,
    weight_multiplicities,
    weyl_character,
)
from geomchar.lie_core import Weight, build_root_system


def _random_regular_theta(rs, rng, n):
    out = []
    while len(out) < n:
        th = rng.uniform(0.15, 2.9, size=rs.rank)
        try:
            weyl_character(rs, Weight(tuple(0 for _ in range(rs.rank))), th)
        except SingularPointError:
            continue
        out.append(th)
    return out


def test_trivial_representation():
    rs = build_root_system("A1")
    assert abs(weyl_character(rs, Weight((0,)), [0.9]) - 1.0) < 1e-12


def test_a1_spot_values():
    rs = build_root_system("A1")
    # weight-sum oracle: chi_1(theta) = 2 cos(theta), chi_2 = 2 cos(2 theta)+1
    assert abs(weyl_character(rs, Weight((1,)), [math.pi / 3]) - 1.0) < 1e-12
    assert abs(weyl_character(rs, Weight((2,)), [math.pi / 2]) - (-1.0)) < 1e-12


@pytest.mark.parametrize("label,cmax", [("A1", 4), ("A2", 3), ("B2", 3), ("G2", 2)])
def test_oracle_equivalence(label, cmax):
    rs = build_root_system(label)
    rng = np.random.default_rng(42)
    thetas = _random_regular_theta(rs, rng, 20)
    lams = (
        [Weight((c,)) for c in range(cmax + 1)]
        if rs.rank == 1
        else [Weight((a, b)) for a in range(cmax + 1) for b in range(cmax + 1)]
    )
    for lam in lams:
        for th in thetas:
            a = weyl_character(rs, lam, th)
            b = character_by_weight_sum(rs, lam, th)
            assert abs(a - b) <= 1e-9


def test_multiplicity_examples():
    a1 = build_root_system("A1")
    m = weight_multiplicities(a1, Weight((2,)))
    assert m == {(Q(2),): 1, (Q(0),): 1, (Q(-2),): 1}
    a2 = build_root_system("A2")
    m2 = weight_multiplicities(a2, Weight((1, 1)))
    assert m2[(Q(0), Q(0))] == 2
    assert weight_multiplicities(a2, Weight((0, 0))) == {(Q(0), Q(0)): 1}


def test_dimension_examples():
    a1 = build_root_system("A1")
    for m in range(6):
        assert dimension(a1, Weight((m,))) == m + 1
    a2 = build_root_system("A2")
    assert dimension(a2, Weight((1, 1))) == 8
    assert dimension(a2, Weight((0, 0))) == 1
    g2 = build_root_system("G2")
    assert dimension(g2, Weight((1, 0))) == 7
    assert dimension(g2, Weight((0, 1))) == 14


@pytest.mark.parametrize("label", ["A1", "A2", "B2", "G2"])
def test_dimension_equals_total_multiplicity(label):
    rs = build_root_system(label)
    lam = Weight(tuple(1 for _ in range(rs.rank)))
    assert sum(weight_multiplicities(rs, lam).values()) == dimension(rs, lam)


def test_conjugation_symmetry():
    rs = build_root_system("B2")
    lam = Weight((2, 1))
    rng = np.random.default_rng(1)
    for th in _random_regular_theta(rs, rng, 10):
        v1 = weyl_character(rs, lam, th)
        v2 = weyl_character(rs, lam, [-t for t in th])
        assert abs(v1 - np.conj(v2)) < 1e-10


@pytest.mark.parametrize("label,eps", [("A1", 1e-4), ("A2", 1e-4), ("B2", 3e-3), ("G2", 2e-2)])
def test_dimension_limit_at_small_theta(label, eps):
    # l'Hopital-free probe of the theta -> 0 limit; epsilon is taken as
    # large as the double-precision Weyl-denominator cancellation allows
    # (it shrinks like eps^|Phi+|), with one Richardson step in eps^2 for
    # G2 where a single probe cannot reach the tolerance.
    rs = build_root_system(label)
    lam = Weight(tuple(1 for _ in range(rs.rank)))
    rng = np.random.default_rng(7)
    d = dimension(rs, lam)
    u = rng.uniform(0.5, 1.0, size=rs.rank)
    val = weyl_character(rs, lam, eps * u)
    if label == "G2":
        half = weyl_character(rs, lam, 0.5 * eps * u)
        val = (4.0 * half - val) / 3.0
    assert abs(val - d) <= 1e-4 * d


def test_singular_theta_rejected_naming_root():
    rs = build_root_system("A2")
    with pytest.raises(SingularPointError) as exc:
        weyl_character(rs, Weight((1, 0)), [0.0, 1.0])
    assert "root" in str(exc.value)


def test_non_dominant_rejected():
    rs = build_root_system("A1")
    with pytest.raises(NonDominantError):
        weyl_character(rs, Weight((-1,)), [1.0])
    with pytest.raises(NonDominantError):
        weight_multiplicities(rs, Weight((Q(1, 2),)))


def test_imaginary_part_small():
    rs = build_root_system("G2")
    rng = np.random.default_rng(3)
    for th in _random_regular_theta(rs, rng, 5):
        v = weyl_character(rs, Weight((1, 1)), th)
        assert abs(v.imag) <= 1e-10
