"""Cartan classification, orbit data, and element classification for SL(2,R)."""
import math

import numpy as np
import pytest

from geomchar.real_structure import (
    CIRCLE,
    COMPACT,
    LOWER,
    SPLIT,
    UPPER,
    NotRegular,
    UnsupportedGroupError,
    branch_value,
    classify_cartans,
    classify_element,
    compact_element,
    enumerate_orbits,
    fixed_points_on_p1,
    local_system_params,
    root_character,
    split_element,
    standard_sheaf,
)


def _random_sl2r(rng):
    while True:
        g = rng.normal(size=(2, 2))
        det = g[0, 0] * g[1, 1] - g[0, 1] * g[1, 0]
        if abs(det) > 1e-3:
            return g / math.sqrt(abs(det)) * (1 if det > 0 else 1)


def test_classify_cartans():
    cs = classify_cartans("SL2R")
    assert [c.kind for c in cs] == ["compact", "split"]
    assert cs[1].component_group_order == 2
    assert cs[0].component_group_order == 1
    assert [c.kind for c in classify_cartans("SU2")] == ["compact"]
    with pytest.raises(UnsupportedGroupError):
        classify_cartans("SL3R")


def test_eigenvalue_type_classification_oracle():
    # derived oracle: the Cartan type of a regular group element is read off
    # its eigenvalues (unit-modulus conjugate pair vs real reciprocal pair)
    rng = np.random.default_rng(0)
    kinds = set()
    for _ in range(200):
        g = _random_sl2r(rng)
        if abs(np.trace(g)) > 2 + 1e-9:
            kinds.add("split")
        elif abs(np.trace(g)) < 2 - 1e-9:
            kinds.add("compact")
    assert kinds == {"compact", "split"}


def test_enumerate_orbits():
    orbits = enumerate_orbits("SL2R")
    assert [o.label for o in orbits] == ["UpperHalfPlane", "LowerHalfPlane", "RealCircle"]
    assert UPPER.attached_cartan.kind == "compact"
    assert LOWER.attached_cartan.kind == "compact"
    assert CIRCLE.attached_cartan.kind == "split"
    assert CIRCLE.maximally_real and CIRCLE.c_invariant == 0
    assert all(o.c_invariant == 0 for o in orbits)


def test_maximally_real_condition_rank_one():
    # the criterion quantifies over complex positive roots; in rank one the
    # root is imaginary (compact Cartan) or real (split), so every orbit is
    # vacuously maximally real
    for orb in enumerate_orbits("SL2R"):
        complex_roots = []  # no complex roots exist in rank one
        assert all(False for _ in complex_roots) or orb.maximally_real


def test_orbit_base_point_stabilizers():
    # stabilizer of i in SL(2,R) is SO(2): random rotations fix i, random
    # non-rotations move it but stay in the upper half plane
    rng = np.random.default_rng(1)
    for _ in range(50):
        th = rng.uniform(0, 2 * math.pi)
        g = compact_element(th).matrix()
        z = (g[0, 0] * 1j + g[0, 1]) / (g[1, 0] * 1j + g[1, 1])
        assert abs(z - 1j) < 1e-12
    for _ in range(200):
        g = _random_sl2r(rng)
        z = (g[0, 0] * 1j + g[0, 1]) / (g[1, 0] * 1j + g[1, 1])
        assert z.imag > 0  # the orbit of i is the upper half plane


def test_classify_element_examples():
    kind, comp, par = classify_element(np.array([[0.0, 1.0], [-1.0, 0.0]]))
    assert (kind, comp) == ("compact", "+") and abs(par - 1.0) < 1e-12
    kind, comp, par = classify_element(np.array([[1.0, 0.0], [0.0, -1.0]]))
    assert kind == "split" and abs(par - 1.0) < 1e-12
    with pytest.raises(NotRegular):
        classify_element(np.array([[0.0, 1.0], [0.0, 0.0]]))
    with pytest.raises(NotRegular):
        classify_element(np.zeros((2, 2)))


def test_classification_conjugation_invariant():
    rng = np.random.default_rng(2)
    for _ in range(1000):
        zeta = rng.normal(size=(2, 2))
        zeta[1, 1] = -zeta[0, 0]
        g = _random_sl2r(rng)
        try:
            k1, c1, p1 = classify_element(zeta)
        except NotRegular:
            continue
        k2, c2, p2 = classify_element(g @ zeta @ np.linalg.inv(g))
        assert (k1, c1) == (k2, c2)
        assert abs(p1 - p2) <= 1e-9 * max(1.0, p1)


def test_regular_density():
    rng = np.random.default_rng(3)
    n_regular = 0
    for _ in range(1000):
        zeta = rng.normal(size=(2, 2))
        zeta[1, 1] = -zeta[0, 0]
        try:
            classify_element(zeta)
            n_regular += 1
        except NotRegular:
            pass
    assert n_regular == 1000


def test_local_system_params():
    assert len(local_system_params(UPPER, -1.0)) == 1  # lambda - rho = -2 integral
    assert len(local_system_params(UPPER, 0.5)) == 0   # non-integral
    assert len(local_system_params(UPPER, 0.25 + 0.5j)) == 0
    two = local_system_params(CIRCLE, 0.37j)
    assert len(two) == 2 and {p.chi_F for p in two} == {1, -1}
    for p in local_system_params(UPPER, -2.0):
        assert p.chi_F == 1


def test_standard_sheaf_errors():
    with pytest.raises(ValueError):
        standard_sheaf("UpperHalfPlane", 0.3)  # no local system
    sh = standard_sheaf("RealCircle", 0.5j, chi_F=-1)
    assert sh.local_system.chi_F == -1


def test_fixed_points():
    fps = fixed_points_on_p1(compact_element(0.9))
    assert sorted(str(z) for z in fps) == sorted([str(1j), str(-1j)]) or all(
        min(abs(z - 1j), abs(z + 1j)) < 1e-9 for z in fps
    )
    fps = fixed_points_on_p1(split_element(1, 0.5))
    assert None in fps and any(z is not None and abs(z) < 1e-12 for z in fps)
    with pytest.raises(NotRegular):
        fixed_points_on_p1(compact_element(0.0))


def test_branch_and_root_characters():
    t = compact_element(0.7)
    assert abs(root_character(t, "i") - np.exp(2j * 0.7)) < 1e-14
    assert abs(root_character(t, "-i") - np.exp(-2j * 0.7)) < 1e-14
    a = split_element(1, 0.4)
    assert abs(root_character(a, "0") - math.exp(0.8)) < 1e-14
    # integral weights on the eps=-1 component pick up the parity sign
    b = split_element(-1, 0.4)
    assert abs(branch_value(3, b, "0") - (-math.exp(1.2))) < 1e-12
    assert abs(branch_value(2, b, "0") - math.exp(0.8)) < 1e-12
    # non-integral weight needs the chi_F datum on the eps=-1 component
    with pytest.raises(ValueError):
        branch_value(0.5j, b, "0")
    assert abs(branch_value(0.5j, b, "0", chi_F=-1) + np.exp(0.2j)) < 1e-12


def test_component_labels():
    assert compact_element(0.3).component == "pos"
    assert compact_element(-0.3).component == "neg"
    assert compact_element(2 * math.pi - 0.3).component == "neg"
    assert split_element(1, 0.5).component == "p+"
    assert split_element(-1, -0.5).component == "m-"
    assert COMPACT.components() == ("pos", "neg")
    assert SPLIT.components() == ("p+", "p-", "m+", "m-")
