"""Geometry over P^1: moment maps, forms, f_lambda, and cycles."""
import math

import numpy as np
import pytest

from geomchar import orbit_geom as og
from geomchar.real_structure import E, F, H


def _random_su2(rng):
    a = rng.normal() + 1j * rng.normal()
    b = rng.normal() + 1j * rng.normal()
    n = math.sqrt(abs(a) ** 2 + abs(b) ** 2)
    a, b = a / n, b / n
    return np.array([[a, b], [-np.conj(b), np.conj(a)]])


def _random_sl2c(rng):
    g = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    return g / np.sqrt(np.linalg.det(g))


def test_vector_fields():
    assert og.vector_field(E, 0.3 + 0.1j) == 1.0
    assert og.vector_field(H, 0.0) == 0.0
    assert abs(og.vector_field(H, 1.5j) - 3.0j) < 1e-15
    z = 2.0
    assert abs(og.vector_field(F, z) - (-4.0)) < 1e-15


def test_vector_field_chart_consistency():
    # w = 1/z implies wdot = -zdot / z^2
    rng = np.random.default_rng(0)
    for _ in range(20):
        Y = rng.normal(size=(2, 2))
        Y[1, 1] = -Y[0, 0]
        z = complex(rng.normal(), rng.normal())
        vz = og.vector_field(Y, z, "z")
        vw = og.vector_field(Y, 1.0 / z, "w")
        assert abs(vw - (-vz / z**2)) < 1e-10 * max(1.0, abs(vz / z**2))


def test_moment_examples():
    p = og.CotangentPoint("z", 0.0, 2.3 + 0.4j)
    mu = og.moment(p)
    assert abs(mu.pair(E) - (2.3 + 0.4j)) < 1e-15  # field of E is 1
    zero = og.moment(og.CotangentPoint("z", 0.7, 0.0))
    assert np.allclose(zero.matrix, 0.0)


def test_moment_equivariance():
    rng = np.random.default_rng(1)
    for _ in range(100):
        g = _random_sl2c(rng)
        z = complex(rng.normal(), rng.normal())
        xi = complex(rng.normal(), rng.normal())
        a, b, c, d = g[0, 0], g[0, 1], g[1, 0], g[1, 1]
        gz = (a * z + b) / (c * z + d)
        gxi = xi * (c * z + d) ** 2  # covector transform under Moebius maps
        lhs = og.moment_matrix(gz, gxi, "z")
        rhs = g @ og.moment_matrix(z, xi, "z") @ np.linalg.inv(g)
        assert np.max(np.abs(lhs - rhs)) < 1e-10 * max(1.0, np.max(np.abs(rhs)))


def test_lambda_x_values():
    m = 3.0
    lam0 = og.lambda_matrix(0.0, m)
    assert abs(np.trace(lam0 @ H) - m) < 1e-14          # lambda(H) = m on omega-basis
    assert abs(np.trace(lam0 @ E)) < 1e-14 and abs(np.trace(lam0 @ F)) < 1e-14
    lam_inf = og.lambda_matrix(None, m, "z")
    assert np.allclose(lam_inf, -(m / 2) * H)           # Weyl flip of lambda_0


def test_lambda_x_ur_equivariance():
    rng = np.random.default_rng(2)
    m = 1.7
    for _ in range(100):
        u = _random_su2(rng)
        z = complex(rng.normal(), rng.normal())
        uz = (u[0, 0] * z + u[0, 1]) / (u[1, 0] * z + u[1, 1])
        lhs = og.lambda_matrix(uz, m)
        rhs = u @ og.lambda_matrix(z, m) @ np.linalg.inv(u)
        assert np.max(np.abs(lhs - rhs)) < 1e-10


def test_twisted_moment_reductions():
    z, xi = 0.4 - 0.2j, 1.1 + 0.3j
    assert np.allclose(og.twisted_moment_matrix(z, xi, 0.0), og.moment_matrix(z, xi, "z"))
    assert np.allclose(og.twisted_moment_matrix(0.0, 0.0, 2.0), og.lambda_matrix(0.0, 2.0))


def test_twisted_moment_lands_on_orbit():
    rng = np.random.default_rng(3)
    for _ in range(1000):
        z = complex(rng.normal(), rng.normal())
        xi = complex(rng.normal(), rng.normal())
        m = complex(rng.uniform(0.3, 3.0) * rng.choice([-1, 1]), rng.normal() * 0.5)
        Z = og.twisted_moment_matrix(z, xi, m)
        p = Z[0, 0] ** 2 + Z[0, 1] * Z[1, 0]
        assert abs(p - (m / 2) ** 2) <= 1e-10 * max(1.0, abs(m) ** 2)


def test_tau_lambda_antisymmetry_and_zero():
    u = (E - F).astype(complex)
    v = (1j * (E + F)).astype(complex)
    z = 0.3 + 0.5j
    assert og.tau_lambda(z, 2.0, u, u) == 0
    assert og.tau_lambda(z, 0.0, u, v) == 0
    assert abs(og.tau_lambda(z, 2.0, u, v) + og.tau_lambda(z, 2.0, v, u)) < 1e-14


def test_tau_lambda_closed_form_matches_bracket_definition():
    # tau evaluated on su(2) vector fields must equal the Fubini-Study
    # closed form on the corresponding tangent vectors
    rng = np.random.default_rng(4)
    sugens = [(E - F).astype(complex), (1j * (E + F)).astype(complex), (1j * H).astype(complex)]
    for _ in range(50):
        z = complex(rng.normal(), rng.normal())
        m = rng.uniform(-3, 3)
        c = rng.normal(size=(2, 3))
        u = sum(c[0, i] * sugens[i] for i in range(3))
        v = sum(c[1, i] * sugens[i] for i in range(3))
        lhs = og.tau_lambda(z, m, u, v)
        rhs = og.tau_lambda_form(z, m, og.vector_field(u, z), og.vector_field(v, z))
        assert abs(lhs - rhs) < 1e-10 * max(1.0, abs(lhs))


def test_prop33_identity():
    rng = np.random.default_rng(5)
    worst = 0.0
    for _ in range(200):
        z = complex(rng.normal(), rng.normal())
        xi = complex(rng.normal(), rng.normal())
        m = rng.uniform(0.5, 3.0) * rng.choice([-1, 1])
        v1 = (complex(rng.normal(), rng.normal()), complex(rng.normal(), rng.normal()))
        v2 = (complex(rng.normal(), rng.normal()), complex(rng.normal(), rng.normal()))
        Z = og.twisted_moment_matrix(z, xi, m)
        W1 = og.dmu_lambda(z, xi, m, v1[0], v1[1])
        W2 = og.dmu_lambda(z, xi, m, v2[0], v2[1])
        lhs = og.sigma_lambda_on_tangents(Z, W1, W2)
        rhs = -og.sigma(v1, v2) + og.tau_lambda_form(z, m, v1[0], v2[0])
        worst = max(worst, abs(lhs - rhs) / max(1.0, abs(rhs)))
    assert worst <= 1e-10


def test_chart_transition_consistency():
    p = og.CotangentPoint("z", 0.8 - 1.1j, 0.4 + 0.2j)
    q = p.to_chart("w")
    assert abs(q.base - 1.0 / p.base) < 1e-14
    assert abs(q.fiber - (-p.base**2 * p.fiber)) < 1e-14
    m = 1.3
    assert np.max(np.abs(
        og.twisted_moment_matrix(p.base, p.fiber, m, "z")
        - og.twisted_moment_matrix(q.base, q.fiber, m, "w")
    )) < 1e-12


def test_f_lambda_positive_and_critical_point():
    z = np.array([0.3 + 0.9j, -1.2 + 0.4j, 2.0 + 3.0j])
    f = og.f_lambda(z, -2.0)
    assert np.all(f > 0)
    assert abs(og.d_log_f(1j, -1.0)) < 1e-14
    assert abs(og.d_log_f(1j, -3.0)) < 1e-14


def test_f_lambda_boundary_vanishing_probe():
    # f decays like (Im z)^k at the boundary circle
    k = 2
    x0 = 0.7
    vals = []
    for j in range(1, 7):
        y = 10.0 ** (-j)
        vals.append(og.f_lambda(x0 + 1j * y, -float(k)) / y**k)
    vals = np.array(vals)
    assert np.all(vals > 0)
    assert np.max(vals) / np.min(vals) < 1.2  # bounded ratio: exact order k


def test_f_lambda_domain_errors():
    with pytest.raises(ValueError):
        og.f_lambda(-0.5j, -1.0)  # wrong half plane
    with pytest.raises(ValueError):
        og.f_lambda(0.5j, 1.0)  # not antidominant
    with pytest.raises(ValueError):
        og.d_log_f(np.array([0.4 + 0.0j]), -1.0)  # boundary point


def test_dlogf_image_in_real_orbit():
    # Lemma-type check: mu_lambda on the d log f graph lands on the real
    # elliptic sheet: i * real matrix, correct invariant, correct component
    rng = np.random.default_rng(6)
    k = 1.0
    for _ in range(200):
        z = complex(rng.uniform(-2, 2), rng.uniform(0.05, 3.0))
        xi = og.d_log_f(z, -k)
        Z = og.twisted_moment_matrix(z, xi, -k)
        p = Z[0, 0] ** 2 + Z[0, 1] * Z[1, 0]
        assert abs(p - (k / 2) ** 2) <= 1e-8
        Y = Z / 1j
        assert np.max(np.abs(Y.imag)) < 1e-9  # purely imaginary coadjoint value
        yr = Y.real
        assert yr[0, 1] > 0  # same elliptic component as lambda_i


def test_conormal_cycle_moment_purely_imaginary():
    cyc = og.conormal_circle_cycle(0.5j)
    U = np.linspace(-1.4, 1.4, 23)
    V = np.linspace(-0.9, 0.9, 11)
    UU, VV = np.meshgrid(U, V, indexing="ij")
    smp = cyc.sample(UU.ravel(), VV.ravel(), 6.0)
    assert float(np.max(smp.re_mu_norm)) < 1e-12


def test_dlogf_graph_projects_bijectively():
    cyc = og.dlogf_graph_cycle("UpperHalfPlane", -1.0)
    U = np.linspace(0.1, 3.0, 9)
    V = np.linspace(0.1, 0.9, 7)
    UU, VV = np.meshgrid(U, V, indexing="ij")
    smp = cyc.sample(UU.ravel(), VV.ravel(), 8.0)
    zs = smp.base
    assert np.all(zs.imag > 0)
    assert len(np.unique(np.round(zs, 10))) == zs.size  # injective on samples
    expected = og.d_log_f(zs, -1.0)
    assert np.max(np.abs(smp.fiber - expected)) < 1e-12


def test_su2_sphere_symplectic_volume():
    # Kirillov normalization: (2 pi)^{-1} integral of -i sigma = m + 1
    for m in (0, 1, 2):
        cyc = og.su2_orbit_cycle(float(m + 1))
        xs, ws = np.polynomial.legendre.leggauss(40)
        u = math.pi * (xs + 1.0)          # azimuth in [0, 2 pi]
        wu = math.pi * ws
        v = 0.5 * math.pi * (xs + 1.0)    # polar in [0, pi]
        wv = 0.5 * math.pi * ws
        UU, VV = np.meshgrid(u, v, indexing="ij")
        smp = cyc.sample(UU.ravel(), VV.ravel(), 1.0)
        W = np.outer(wu, wv).ravel()
        vol = cyc.orientation * np.sum(-1j * smp.density * W) / (2 * math.pi)
        assert abs(vol - (m + 1)) < 1e-6


def test_cycle_flip():
    cyc = og.omega_orbit_cycle("UpperHalfPlane", -1.0)
    assert cyc.flipped().orientation == -cyc.orientation
