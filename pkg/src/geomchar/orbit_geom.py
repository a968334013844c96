"""Concrete geometry over X = P^1 for SL(2,C), SL(2,R) and SU(2).

Vector fields of the Moebius action, moment and twisted moment maps, the
forms sigma and tau_lambda, the boundary-vanishing function f_lambda with
its logarithmic differential, and constructors for the three integration
cycles shipped with the package (conormal of the circle orbit, d log f
graph over an open orbit, coadjoint-orbit sheets).

Conventions, fixed once:
  * two charts on P^1: z and w = 1/z, covector transition eta = -z^2 xi;
  * g identified with g* by the trace form <Z, Y> = tr(Z Y);
  * weights are scalars m (coefficient of the fundamental weight omega);
    lambda = m omega corresponds at z = 0 to the matrix (m/2) H;
  * the Hermitian metric on X is Fubini-Study normalized so that the
    moment map is a fiberwise isometry: ||xi|| = |xi| (1 + |z|^2).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable, Optional

import numpy as np

from .real_structure import E, F, H

I2 = np.eye(2)


# --- Moebius action and vector fields -------------------------------------

def moebius(g: np.ndarray, z: complex | None) -> complex | None:
    """Action of g in SL(2,C) on P^1; None encodes infinity."""
    a, b, c, d = g[0, 0], g[0, 1], g[1, 0], g[1, 1]
    if z is None:
        return (a / c) if abs(c) > 1e-300 else None
    den = c * z + d
    if abs(den) < 1e-300:
        return None
    return (a * z + b) / den


def vector_field(Y: np.ndarray, z, chart: str = "z"):
    """Derivative at t=0 of exp(tY).z in the given chart (vectorized in z)."""
    a, b, c = Y[0, 0], Y[0, 1], Y[1, 0]
    z = np.asarray(z, dtype=complex)
    if chart == "z":
        return b + 2.0 * a * z - c * z * z
    if chart == "w":
        return c - 2.0 * a * z - b * z * z
    raise ValueError(f"unknown chart {chart!r}")


# --- cotangent points and the moment map -----------------------------------

@dataclass(frozen=True)
class CotangentPoint:
    """Point of T*X in one of the two charts."""

    chart: str       # "z" | "w"
    base: complex
    fiber: complex   # xi (z-chart) or eta (w-chart)

    def to_chart(self, chart: str) -> "CotangentPoint":
        if chart == self.chart:
            return self
        if self.base == 0:
            raise ValueError("chart transition undefined at the chart origin")
        nb = 1.0 / self.base
        return CotangentPoint(chart, nb, -self.base * self.base * self.fiber)


@dataclass(frozen=True)
class CoadjointVector:
    """Linear functional on sl(2,C), stored via the trace pairing."""

    matrix: np.ndarray

    def pair(self, Y: np.ndarray) -> complex:
        return complex(np.trace(self.matrix @ Y))

    def real_part(self) -> np.ndarray:
        """Component in sl(2,R)* under g* = g_R* + i g_R*."""
        return (self.matrix + np.conj(self.matrix)).real / 2.0

    def imag_part(self) -> np.ndarray:
        return ((self.matrix - np.conj(self.matrix)) / 2j).real


def _moment_kernel(base, chart: str):
    base = np.asarray(base, dtype=complex)
    K = np.empty(base.shape + (2, 2), dtype=complex)
    if chart == "z":
        K[..., 0, 0] = base
        K[..., 0, 1] = -base * base
        K[..., 1, 0] = 1.0
        K[..., 1, 1] = -base
    else:
        K[..., 0, 0] = -base
        K[..., 0, 1] = 1.0
        K[..., 1, 0] = -base * base
        K[..., 1, 1] = base
    return K


def moment_matrix(base, fiber, chart: str = "z") -> np.ndarray:
    """mu(x, xi) as a matrix batch; <mu, Y> = xi . (vector field of Y)."""
    fiber = np.asarray(fiber, dtype=complex)
    return fiber[..., None, None] * _moment_kernel(base, chart)


def moment(p: CotangentPoint) -> CoadjointVector:
    return CoadjointVector(moment_matrix(p.base, p.fiber, p.chart))


def lambda_matrix(base, m: complex, chart: str = "z") -> np.ndarray:
    """lambda_x in g* (trace-form matrix); base=None means infinity."""
    c = complex(m) / 2.0
    if base is None:
        return -c * H.astype(complex) if chart == "z" else c * H.astype(complex)
    base = np.asarray(base, dtype=complex)
    n = 1.0 + np.abs(base) ** 2
    out = np.empty(base.shape + (2, 2), dtype=complex)
    if chart == "z":
        out[..., 0, 0] = 1.0 - np.abs(base) ** 2
        out[..., 0, 1] = -2.0 * base
        out[..., 1, 0] = -2.0 * np.conj(base)
    else:
        out[..., 0, 0] = np.abs(base) ** 2 - 1.0
        out[..., 0, 1] = -2.0 * np.conj(base)
        out[..., 1, 0] = -2.0 * base
    out[..., 1, 1] = -out[..., 0, 0]
    return (c / n)[..., None, None] * out if base.shape else (c / n) * out


def lambda_x(x, m: complex, chart: str = "z") -> CoadjointVector:
    """The functional vanishing on [t_x, g] and matching m*omega on t_x."""
    return CoadjointVector(lambda_matrix(x, m, chart))


def twisted_moment_matrix(base, fiber, m: complex, chart: str = "z") -> np.ndarray:
    return lambda_matrix(base, m, chart) + moment_matrix(base, fiber, chart)


def twisted_moment(p: CotangentPoint, m: complex) -> CoadjointVector:
    return CoadjointVector(twisted_moment_matrix(p.base, p.fiber, m, p.chart))


def dlambda_matrix(base, m: complex, zdot, chart: str = "z") -> np.ndarray:
    """Directional derivative of x -> lambda_x along a base tangent zdot."""
    c = complex(m) / 2.0
    z = np.asarray(base, dtype=complex)
    zd = np.asarray(zdot, dtype=complex)
    n = 1.0 + np.abs(z) ** 2
    dn = 2.0 * (np.conj(z) * zd).real
    lam = lambda_matrix(base, m, chart)
    dnum = np.empty(np.shape(z) + (2, 2), dtype=complex)
    if chart == "z":
        dnum[..., 0, 0] = -dn
        dnum[..., 0, 1] = -2.0 * zd
        dnum[..., 1, 0] = -2.0 * np.conj(zd)
    else:
        dnum[..., 0, 0] = dn
        dnum[..., 0, 1] = -2.0 * np.conj(zd)
        dnum[..., 1, 0] = -2.0 * zd
    dnum[..., 1, 1] = -dnum[..., 0, 0]
    return c * dnum / _bcast(n, dnum) - lam * _bcast(dn / n, dnum)


def _bcast(a, like):
    a = np.asarray(a)
    return a[..., None, None] if a.shape else a


def dmu_lambda(base, fiber, m: complex, zdot, fdot, chart: str = "z") -> np.ndarray:
    """Differential of the twisted moment map on a real tangent (zdot, fdot)."""
    z = np.asarray(base, dtype=complex)
    K = _moment_kernel(z, chart)
    dK = np.empty_like(K)
    if chart == "z":
        dK[..., 0, 0] = zdot
        dK[..., 0, 1] = -2.0 * z * zdot
        dK[..., 1, 0] = 0.0
        dK[..., 1, 1] = -np.asarray(zdot, dtype=complex)
    else:
        dK[..., 0, 0] = -np.asarray(zdot, dtype=complex)
        dK[..., 0, 1] = 0.0
        dK[..., 1, 0] = -2.0 * z * zdot
        dK[..., 1, 1] = zdot
    f = np.asarray(fiber, dtype=complex)
    fd = np.asarray(fdot, dtype=complex)
    return dlambda_matrix(base, m, zdot, chart) + _bcast(fd, K) * K + _bcast(f, K) * dK


# --- the two-forms ----------------------------------------------------------

def sigma(v1: tuple, v2: tuple) -> complex:
    """Canonical symplectic form d xi ^ d z on tangent pairs (zdot, fdot)."""
    z1, f1 = v1
    z2, f2 = v2
    return f1 * z2 - f2 * z1


def tau_lambda(x, m: complex, u: np.ndarray, v: np.ndarray, chart: str = "z") -> complex:
    """tau_lambda(u_x, v_x) = lambda_x([u, v]) for u, v in su(2)."""
    lam = lambda_matrix(x, m, chart)
    return complex(np.trace(lam @ (u @ v - v @ u)))


def tau_lambda_form(base, m: complex, zdot1, zdot2):
    """tau_lambda on base tangent vectors, closed Fubini-Study form.

    Equals -m (zdot1 conj(zdot2) - zdot2 conj(zdot1)) / (1+|z|^2)^2; the
    same expression is valid in either chart.
    """
    z = np.asarray(base, dtype=complex)
    n2 = (1.0 + np.abs(z) ** 2) ** 2
    return -complex(m) * (zdot1 * np.conj(zdot2) - zdot2 * np.conj(zdot1)) / n2


def sigma_lambda_on_tangents(Z: np.ndarray, W1: np.ndarray, W2: np.ndarray) -> complex:
    """Holomorphic symplectic form of the coadjoint orbit at Z, on tangents.

    Solves ad_{Y_i} Z = W_i in the basis {H, E, F} and returns tr(Z [Y1,Y2]).
    Used for identity checks; cycle quadratures use closed forms instead.
    """
    basis = [H.astype(complex), E.astype(complex), F.astype(complex)]
    cols = [(B @ Z - Z @ B).reshape(4) for B in basis]
    A = np.stack(cols, axis=1)
    ys = []
    for W in (W1, W2):
        coef, *_ = np.linalg.lstsq(A, W.reshape(4), rcond=None)
        ys.append(sum(c * B for c, B in zip(coef, basis)))
    Y1, Y2 = ys
    return complex(np.trace(Z @ (Y1 @ Y2 - Y2 @ Y1)))


# --- f_lambda on open orbits ------------------------------------------------

def _orbit_sign(orbit_label: str) -> int:
    if orbit_label in ("UpperHalfPlane", "upper"):
        return +1
    if orbit_label in ("LowerHalfPlane", "lower"):
        return -1
    raise ValueError("f_lambda lives on an open orbit (upper or lower)")


def f_lambda(z, m: float, orbit_label: str = "UpperHalfPlane"):
    """Metric-ratio function on the open orbit, for antidominant lambda = m omega.

    f = (2 |Im z| / (1+|z|^2))^(-m), positive on the orbit, extending by a
    power to X with zero boundary value on the circle.  Requires m < 0.
    """
    if not (np.isreal(m) and m < 0):
        raise ValueError("f_lambda needs an antidominant real parameter m < 0")
    sgn = _orbit_sign(orbit_label)
    z = np.asarray(z, dtype=complex)
    im = sgn * z.imag
    if np.any(im <= 0):
        raise ValueError("point not in the open orbit (boundary or wrong half-plane)")
    return (2.0 * im / (1.0 + np.abs(z) ** 2)) ** (-float(m))


def d_log_f(z, m: float, orbit_label: str = "UpperHalfPlane"):
    """(1,0)-part of d log f_lambda, as a section of the holomorphic T*X."""
    if not (np.isreal(m) and m < 0):
        raise ValueError("d_log_f needs an antidominant real parameter m < 0")
    _orbit_sign(orbit_label)
    z = np.asarray(z, dtype=complex)
    if np.any(z.imag == 0):
        raise ValueError("d log f is undefined on the boundary circle")
    k = -float(m)
    return k * (1.0 / (z - np.conj(z)) - np.conj(z) / (1.0 + np.abs(z) ** 2))


def _dxi_parts(z, m: float):
    """(d xi/dz, d xi/dzbar) for xi = d_log_f at z."""
    k = -float(m)
    z = np.asarray(z, dtype=complex)
    d = z - np.conj(z)
    n = 1.0 + np.abs(z) ** 2
    dz = k * (-1.0 / (d * d) + np.conj(z) ** 2 / (n * n))
    dzb = k * (1.0 / (d * d) - 1.0 / (n * n))
    return dz, dzb


# --- cycles -----------------------------------------------------------------

@dataclass
class CycleSample:
    """Values of a cycle parameterization on a flat list of (u, v) nodes."""

    points: np.ndarray        # (N, 2, 2) matrices where phi-hat is evaluated
    density: np.ndarray       # (N,) complex, 2-form on the (u, v) frame incl. scalings
    mask: np.ndarray          # (N,) bool, truncation mask
    re_mu_norm: np.ndarray    # (N,) float, Frobenius norm of Re(mu) for Lemma-3.16 check
    base: np.ndarray          # (N,) complex base points (or 0 for coadjoint cycles)
    fiber: np.ndarray         # (N,) complex fiber coordinates (or 0)


@dataclass
class Cycle:
    """Parameterized oriented 2-chain in T*X or in a coadjoint orbit."""

    name: str
    space: str                 # "cotangent" | "coadjoint"
    lam: complex               # twist parameter m the cycle was built with
    domain: tuple              # ((u0,u1),(v0,v1))
    orientation: int
    compact: bool
    sampler: Callable[[np.ndarray, np.ndarray, float], CycleSample]
    # interior panel breakpoints for the quadrature (integrand structure
    # hints, e.g. fiber concentration near 0 under large truncation radii)
    u_breaks: tuple = ()
    v_breaks: tuple = ()

    def sample(self, U: np.ndarray, V: np.ndarray, r: float) -> CycleSample:
        return self.sampler(U, V, r)

    def flipped(self) -> "Cycle":
        return replace(self, orientation=-self.orientation)


def _re_norm(mats: np.ndarray) -> np.ndarray:
    re = (mats + np.conj(mats)).real / 2.0
    return np.sqrt(np.sum(re * re, axis=(-2, -1)))


def conormal_circle_cycle(m: complex) -> Cycle:
    """Conormal bundle of the circle orbit, oriented by -(Im sigma).

    Parameterized by (phi, uhat): base x = tan(phi), fiber xi = i u with
    u = r cos^2(phi) uhat, so the truncation ||xi|| <= r is built into the
    domain.  Chart switch to w = cot(phi) for |phi| > pi/4.
    """

    def sampler(U: np.ndarray, V: np.ndarray, r: float) -> CycleSample:
        phi, uhat = U, V
        u = r * np.cos(phi) ** 2 * uhat
        zmask = np.abs(phi) <= math.pi / 4.0
        base = np.where(zmask, np.tan(phi), _safe_cot(phi)).astype(complex)
        # fiber in the active chart: z-chart xi = i u; w-chart eta = -x^2 xi,
        # with x = tan(phi): eta = -i u tan^2(phi) and u tan^2 = r sin^2 uhat
        fiber = np.where(zmask, 1j * u, -1j * r * np.sin(phi) ** 2 * uhat)
        pts = np.empty(base.shape + (2, 2), dtype=complex)
        mu = np.empty_like(pts)
        for flag, chart in ((zmask, "z"), (~zmask, "w")):
            if np.any(flag):
                mu[flag] = moment_matrix(base[flag], fiber[flag], chart)
                pts[flag] = mu[flag] + lambda_matrix(base[flag], m, chart)
        # -sigma on (d/dphi, d/duhat) = i sec^2(phi) du/duhat = i r  (both charts)
        density = np.full(base.shape, 1j * r, dtype=complex)
        mask = np.ones(base.shape, dtype=bool)
        return CycleSample(pts, density, mask, _re_norm(mu), base, fiber)

    return Cycle(
        name="conormal",
        space="cotangent",
        lam=m,
        domain=((-math.pi / 2.0, math.pi / 2.0), (-1.0, 1.0)),
        orientation=+1,
        compact=False,
        sampler=sampler,
        v_breaks=(-0.25, -1.0 / 16, -1.0 / 64, 0.0, 1.0 / 64, 1.0 / 16, 0.25),
    )


def _safe_cot(phi):
    s = np.sin(phi)
    c = np.cos(phi)
    return np.where(np.abs(s) > 1e-300, c / np.where(np.abs(s) > 1e-300, s, 1.0), 0.0)


def _k_a_orbit_point(theta, s, base0: complex):
    """z = k(theta) a_s . base0 and its (theta, s) partials, via Moebius algebra."""
    p = np.exp(2.0 * s) * base0
    ct, st = np.cos(theta), np.sin(theta)
    den = -p * st + ct
    z = (p * ct + st) / den
    dz_dtheta = (1.0 + p * p) / (den * den)
    dz_ds = 2.0 * p / (den * den)
    return z, dz_dtheta, dz_ds


def dlogf_graph_cycle(orbit_label: str, m: float) -> Cycle:
    """Graph of d log f_lambda over an open orbit, complex-structure oriented.

    Parameterized by (theta, t) in [0, pi) x [-1, 1] with s = s_max(r) t and
    z = k(theta) a_s . x0; the fiber norm along the orbit is exactly
    ||xi|| = |m| sinh(2|s|), so s_max(r) = arcsinh(r/|m|)/2.
    """
    if not (np.isreal(m) and m < 0):
        raise ValueError("dlogf_graph_cycle needs antidominant real m < 0")
    base0 = 1j if _orbit_sign(orbit_label) > 0 else -1j
    k = -float(m)

    def sampler(U: np.ndarray, V: np.ndarray, r: float) -> CycleSample:
        # (theta, s) in [0, pi) x (0, smax] covers the orbit once: the
        # isotropy rotation at x0 has angle 2 theta, and negative s repeats
        # the (theta + pi/2)-sheet with opposite orientation.
        smax = 0.5 * math.asinh(r / k)
        theta, s = U, smax * V
        z, zt, zs = _k_a_orbit_point(theta, s, base0)
        zs = zs * smax  # chain rule for the scaled parameter
        xi = d_log_f(z, m, orbit_label)
        dxz, dxzb = _dxi_parts(z, m)
        xit = dxz * zt + dxzb * np.conj(zt)
        xis = dxz * zs + dxzb * np.conj(zs)
        mu = moment_matrix(z, xi, "z")
        pts = mu + lambda_matrix(z, m, "z")
        form = -(xit * zs - xis * zt) + tau_lambda_form(z, m, zt, zs)
        mask = np.ones(z.shape, dtype=bool)
        return CycleSample(pts, form, mask, _re_norm(mu), z, xi)

    # complex-structure orientation of the (theta, s) frame, from a sample
    z0, zt0, zs0 = _k_a_orbit_point(0.3, 0.2, base0)
    ori = 1 if (np.conj(zt0) * zs0).imag > 0 else -1

    return Cycle(
        name=f"dlogf[{orbit_label}]",
        space="cotangent",
        lam=m,
        domain=((0.0, math.pi), (0.0, 1.0)),
        orientation=ori,
        compact=False,
        sampler=sampler,
    )


def _ad(g: np.ndarray, M: np.ndarray) -> np.ndarray:
    return g @ M @ np.linalg.inv(g)


def omega_orbit_cycle(orbit_label: str, m: float) -> Cycle:
    """G_R-orbit of tau*_{x0} lambda in i g_R*, for an open SL(2,R) orbit.

    Sheet through lambda_{x0}, parameterized by (theta, s) via g = k(theta) a_s,
    oriented so that the top power of -i sigma_lambda is positive.
    """
    if not np.isreal(m) or m == 0:
        raise ValueError("omega_orbit_cycle needs a regular (nonzero real) parameter")
    base0 = 1j if _orbit_sign(orbit_label) > 0 else -1j
    lam0 = lambda_matrix(base0, m, "z")
    EmF = (E - F).astype(complex)

    def tangent_form(theta, s, lammat):
        ct, st = np.cos(2 * theta), np.sin(2 * theta)
        # Ad(k(theta)) H = cos(2 theta) H - sin(2 theta) (E + F)
        Y2 = ct[..., None, None] * H + (-st)[..., None, None] * (E + F)
        comm = EmF @ Y2 - Y2 @ EmF if Y2.ndim == 2 else np.einsum(
            "ij,...jk->...ik", EmF, Y2) - np.einsum("...ij,jk->...ik", Y2, EmF)
        return np.einsum("...ij,...ji->...", lammat, comm)

    def sampler(U: np.ndarray, V: np.ndarray, r: float) -> CycleSample:
        # D(r)-truncation pulled back through mu_lambda: ||xi|| = |m| sinh(2|s|)
        smax = 0.5 * math.asinh(max(r / abs(m), 1e-12))
        theta, s = U, smax * V
        e2, em2 = np.exp(2 * s), np.exp(-2 * s)
        ads_lam = (
            lam0[0, 0] * H
            + (lam0[0, 1] * e2)[..., None, None] * E
            + (lam0[1, 0] * em2)[..., None, None] * F
        )
        ct, st = np.cos(theta), np.sin(theta)
        kmat = np.moveaxis(np.array([[ct, st], [-st, ct]], dtype=complex), (0, 1), (-2, -1))
        kinv = np.moveaxis(np.array([[ct, -st], [st, ct]], dtype=complex), (0, 1), (-2, -1))
        pts = kmat @ ads_lam @ kinv
        form = tangent_form(theta, s, pts) * smax
        mask = np.ones(theta.shape, dtype=bool)
        return CycleSample(pts, form, mask, np.zeros(theta.shape), theta.astype(complex), s.astype(complex))

    cyc = Cycle(
        name=f"orbit[{orbit_label}]",
        space="coadjoint",
        lam=m,
        domain=((0.0, math.pi), (0.0, 1.0)),
        orientation=+1,
        compact=False,
        sampler=sampler,
    )
    smp = cyc.sample(np.array([0.4]), np.array([0.1]), 4.0)
    if (-1j * smp.density[0]).real < 0:
        cyc.orientation = -1
    return cyc


def su2_orbit_cycle(M: float) -> Cycle:
    """SU(2)-coadjoint sphere through (M/2) H, Kirillov-oriented; compact."""
    if M <= 0:
        raise ValueError("sphere cycle needs M > 0")
    radius = M / 2.0
    EmF = (E - F).astype(complex)
    iH = (1j * H).astype(complex)

    def sampler(U: np.ndarray, V: np.ndarray, r: float) -> CycleSample:
        # polar angle V in [0, pi] via Ad(k(V/2)), azimuth U in [0, 2 pi)
        thp, php = V, U
        ct, st = np.cos(thp), np.sin(thp)
        pts0 = radius * (ct[..., None, None] * H - st[..., None, None] * (E + F))
        ca, sa = np.cos(php / 2.0), np.sin(php / 2.0)
        g = np.zeros(php.shape + (2, 2), dtype=complex)
        g[..., 0, 0] = ca + 1j * sa
        g[..., 1, 1] = ca - 1j * sa
        ginv = np.conj(g)  # diagonal unitary
        pts = g @ pts0 @ ginv
        # tangents: d/dphp = [iH/2, .], d/dthp = [Ad(g)(E-F)/2, .]
        Y1 = np.broadcast_to(iH / 2.0, pts.shape)
        Y2 = (g @ (EmF / 2.0) @ ginv)
        comm = Y1 @ Y2 - Y2 @ Y1
        form = np.einsum("...ij,...ji->...", pts, comm)
        mask = np.ones(php.shape, dtype=bool)
        return CycleSample(pts, form, mask, np.zeros(php.shape), php.astype(complex), thp.astype(complex))

    cyc = Cycle(
        name="su2_sphere",
        space="coadjoint",
        lam=M,
        domain=((0.0, 2.0 * math.pi), (0.0, math.pi)),
        orientation=+1,
        compact=True,
        sampler=sampler,
    )
    smp = cyc.sample(np.array([0.5]), np.array([1.0]), 1.0)
    if (-1j * smp.density[0]).real < 0:
        cyc.orientation = -1
    return cyc
