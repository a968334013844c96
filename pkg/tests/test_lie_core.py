"""Root system and Weyl group tests against independent geometric oracles."""
import math
from fractions import Fraction as Q

import numpy as np
import pytest

from geomchar.lie_core import (
    RankMismatchError,
    UnsupportedSeriesError,
    Weight,
    act,
    build_root_system,
    compose,
    enumerate_weyl,
    longest_element,
    rho,
    sign,
    stabilizer,
)

# independent oracle: close explicit Euclidean simple-root vectors under
# reflections, with no shared code with the package
_EUCLIDEAN_SIMPLE = {
    "A1": [(1.0,)],
    "A2": [(1.0, 0.0), (-0.5, math.sqrt(3) / 2)],
    "B2": [(1.0, -1.0), (0.0, 1.0)],
    "G2": [(1.0, 0.0), (-1.5, math.sqrt(3) / 2)],
    "A1xA1": [(1.0, 0.0), (0.0, 1.0)],
}


def _closure_oracle(label):
    simple = [np.array(v) for v in _EUCLIDEAN_SIMPLE[label]]

    def reflect(u, v):
        return u - 2 * np.dot(u, v) / np.dot(v, v) * v

    roots = {tuple(np.round(v, 9)) for v in simple}
    frontier = list(simple)
    while frontier:
        new = []
        for beta in frontier:
            for alpha in simple:
                img = reflect(beta, alpha)
                key = tuple(np.round(img, 9))
                if key not in roots:
                    roots.add(key)
                    new.append(img)
        frontier = new
    return roots


def _weyl_count_oracle(label):
    simple = [np.array(v) for v in _EUCLIDEAN_SIMPLE[label]]
    n = len(simple[0])

    def refl_matrix(v):
        return np.eye(n) - 2 * np.outer(v, v) / np.dot(v, v)

    gens = [refl_matrix(v) for v in simple]
    seen = {tuple(np.round(np.eye(n), 9).ravel())}
    frontier = [np.eye(n)]
    while frontier:
        new = []
        for w in frontier:
            for g in gens:
                m = w @ g
                key = tuple(np.round(m, 9).ravel())
                if key not in seen:
                    seen.add(key)
                    new.append(m)
        frontier = new
    return len(seen)


@pytest.mark.parametrize("label,n_roots", [("A1", 2), ("A2", 6), ("B2", 8), ("G2", 12), ("A1xA1", 4)])
def test_root_counts_against_closure_oracle(label, n_roots):
    assert len(_closure_oracle(label)) == n_roots
    rs = build_root_system(label)
    assert len(rs.roots) == n_roots
    assert len(rs.positive_roots) == n_roots // 2


@pytest.mark.parametrize("label", ["A1", "A2", "B2", "G2", "A1xA1"])
def test_weyl_group_counts(label):
    rs = build_root_system(label)
    W = enumerate_weyl(rs)
    assert len(W) == _weyl_count_oracle(label)
    assert W[0].word == () and W[0].sign == 1  # identity first
    assert len({w.matrix for w in W}) == len(W)  # duplicate free


@pytest.mark.parametrize("label", ["A1", "A2", "B2", "G2"])
def test_weyl_acts_permuting_roots(label):
    rs = build_root_system(label)
    rootset = {r.coords for r in rs.roots}
    for w in enumerate_weyl(rs):
        assert {act(w, r).coords for r in rs.roots} == rootset


def test_rho_examples():
    for label in ("A1", "A2", "G2"):
        rs = build_root_system(label)
        assert rho(rs).coords == tuple(Q(1) for _ in range(rs.rank))


@pytest.mark.parametrize("label", ["A1", "A2", "B2", "G2"])
def test_rho_pairing_with_simple_roots(label):
    rs = build_root_system(label)
    for alpha in rs.simple_roots:
        assert rs.pairing(rs.rho, alpha) == Q(1)


def test_act_examples():
    rs = build_root_system("A1")
    W = enumerate_weyl(rs)
    omega = Weight((1,))
    assert act(W[0], omega) == omega and sign(W[0]) == 1
    s = W[1]
    assert act(s, omega) == Weight((-1,)) and sign(s) == -1


def test_longest_element_a2():
    rs = build_root_system("A2")
    w0 = longest_element(rs)
    assert len(w0.word) == 3
    assert w0.sign == -1


def test_composition_associativity_exhaustive_a2():
    rs = build_root_system("A2")
    W = enumerate_weyl(rs)
    lam = Weight((2, 3))
    for w1 in W:
        for w2 in W:
            assert act(compose(rs, w1, w2), lam) == act(w1, act(w2, lam))


@pytest.mark.parametrize("label", ["B2", "G2"])
def test_composition_random_pairs(label):
    rs = build_root_system(label)
    W = enumerate_weyl(rs)
    rng = np.random.default_rng(0)
    lam = Weight((1, 2))
    for _ in range(30):
        w1, w2 = W[rng.integers(len(W))], W[rng.integers(len(W))]
        assert act(compose(rs, w1, w2), lam) == act(w1, act(w2, lam))
        assert sign(compose(rs, w1, w2)) == sign(w1) * sign(w2)


def test_sign_equals_word_length_parity():
    for label in ("A2", "B2", "G2"):
        for w in enumerate_weyl(build_root_system(label)):
            assert w.sign == (-1) ** len(w.word)


def test_stabilizer():
    rs = build_root_system("A1")
    assert len(stabilizer(rs, Weight((2,)))) == 1
    assert len(stabilizer(rs, Weight((0,)))) == 2


def test_errors():
    with pytest.raises(UnsupportedSeriesError):
        build_root_system("E8")
    with pytest.raises(UnsupportedSeriesError):
        build_root_system("A1xA2")
    rs = build_root_system("A2")
    w = enumerate_weyl(rs)[1]
    with pytest.raises(RankMismatchError):
        act(w, Weight((1,)))


def test_weight_integrality_and_pairing_rationality():
    rs = build_root_system("G2")
    assert Weight((1, 2)).is_integral()
    assert not Weight((Q(1, 2), 0)).is_integral()
    val = rs.pairing(Weight((Q(1, 3), Q(2, 5))), rs.simple_roots[1])
    assert isinstance(val, Q)
