"""Harish-Chandra local expressions: representation, evaluation, and numerical
pairing of invariant eigendistributions on sl(2,R).

A ``LocalExpression`` stores one complex coefficient d per (Cartan kind,
connected component of the regular set, fixed point).  Group values use the
numerators d * e^{(lambda-rho)_x}(t) against the Weyl denominator
prod_(alpha>0) (1 - e^{-alpha_x})(t); Lie-algebra values use d * e^{lambda_x(zeta)}
against prod alpha_x(zeta).  Branches of e^{lambda-rho} follow the convention
of real_structure.branch_value: value 1 at the identity on components meeting
the identity component's closure, chi_F-twisted on the eps = -1 split
components.

Pairings against test functions integrate over the ball in the adapted norm
x^2 + ((y+z)/2)^2 + ((y-z)/2)^2 (which contains the Euclidean ball of the
same radius), with the singular cone x^2 + yz = 0 handled by exclusion
shells |p| >= delta and Richardson extrapolation in sqrt(delta).  Lebesgue
measure in the matrix-entry coordinates (x, y, z) is used throughout.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field, replace
from typing import Iterable, Optional, Sequence

import numpy as np

from .cycle_integral import TestFunction
from .real_structure import (
    COMPACT,
    SPLIT,
    CartanElement,
    NotRegular,
    branch_value,
    classify_element,
    weyl_swap,
)

CKey = tuple[str, str, str]  # (cartan kind, component, fixed point)

ALL_KEYS: tuple[CKey, ...] = tuple(
    ("compact", comp, fp) for comp in COMPACT.components() for fp in COMPACT.fixed_points()
) + tuple(
    ("split", comp, fp) for comp in SPLIT.components() for fp in SPLIT.fixed_points()
)


class SingularElementError(ValueError):
    pass


@dataclass(frozen=True)
class LocalExpression:
    """Virtual-character data: infinitesimal character and local coefficients."""

    lam: complex
    coefficients: tuple
    chi_F: Optional[int] = None
    label: str = ""

    @property
    def coeff(self) -> dict[CKey, complex]:
        return {k: complex(v) for k, v in self.coefficients}

    def d(self, cartan: str, component: str, fixed_point: str) -> complex:
        return self.coeff.get((cartan, component, fixed_point), 0.0)

    def with_coeff(self, updates: dict[CKey, complex]) -> "LocalExpression":
        c = self.coeff
        c.update(updates)
        return replace(self, coefficients=_freeze(c))

    def __add__(self, other: "LocalExpression") -> "LocalExpression":
        if self.lam != other.lam:
            raise ValueError("can only add expressions with the same infinitesimal character")
        c = self.coeff
        for k, v in other.coeff.items():
            c[k] = c.get(k, 0.0) + v
        return replace(self, coefficients=_freeze(c), label=f"{self.label}+{other.label}")

    def __mul__(self, s: complex) -> "LocalExpression":
        return replace(self, coefficients=_freeze({k: s * v for k, v in self.coeff.items()}))

    __rmul__ = __mul__


def _freeze(c: dict[CKey, complex]) -> tuple:
    return tuple(sorted((k, complex(v)) for k, v in c.items() if v != 0))


def make_expression(lam: complex, coeff: dict[CKey, complex], chi_F: Optional[int] = None,
                    label: str = "") -> LocalExpression:
    for k in coeff:
        if k not in ALL_KEYS:
            raise KeyError(f"unknown coefficient key {k}")
    return LocalExpression(complex(lam), _freeze(coeff), chi_F, label)


def zero_expression(lam: complex = 0.0) -> LocalExpression:
    return make_expression(lam, {}, label="zero")


@dataclass(frozen=True)
class InvariantPolynomial:
    """The quadratic invariant p(zeta) = x^2 + yz and its operator data.

    ``symbol`` is the symmetric matrix of the constant-coefficient operator
    p(d) = sum symbol_ij d_i d_j in the coordinates (x, y, z).  Matching the
    operator to the invariant through the trace pairing <mu, zeta> = tr(M zeta)
    puts a 1/4 on the x-slot: p(d) = (1/4) d_x^2 + d_y d_z, with eigenvalue
    p(lambda-matrix) = lambda^2/4 on numerators e^{lambda_x}.  The constant
    ``eigenvalue_normalization`` (= 1/4 on the coefficient lambda^2) is
    calibrated once on the SU(2)/Weyl case (su2_casimir_calibration) and
    frozen.
    """

    symbol: tuple = ((0.25, 0.0, 0.0), (0.0, 0.0, 0.5), (0.0, 0.5, 0.0))
    eigenvalue_normalization: float = 0.25

    def value(self, zeta: np.ndarray) -> np.ndarray:
        zeta = np.asarray(zeta)
        return zeta[..., 0, 0] ** 2 + zeta[..., 0, 1] * zeta[..., 1, 0]

    def apply(self, phi: TestFunction) -> TestFunction:
        return phi.apply_quadratic_symbol(np.asarray(self.symbol))

    def eigenvalue(self, lam: complex) -> complex:
        return self.eigenvalue_normalization * complex(lam) ** 2


CASIMIR = InvariantPolynomial()


# --- evaluation ---------------------------------------------------------------

def evaluate_group(expr: LocalExpression, t: CartanElement) -> complex:
    """Sum over fixed points of c_{t,x} / prod (1 - e^{-alpha_x})(t)."""
    if not t.regular:
        raise SingularElementError("group evaluation needs a regular Cartan element")
    m1 = expr.lam - 1.0  # lambda - rho
    comp = t.component
    total = 0.0 + 0.0j
    for fp in t.cartan.fixed_points():
        d = expr.d(t.cartan.kind, comp, fp)
        if d == 0:
            continue
        c = d * branch_value(m1, t, fp, expr.chi_F)
        den = 1.0 - 1.0 / _root_char(t, fp)
        total += c / den
    return total


def _root_char(t: CartanElement, fp: str) -> complex:
    if t.cartan.kind == "compact":
        sgn = 1.0 if fp == "i" else -1.0
        return cmath.exp(2j * sgn * t.theta)
    sgn = 1.0 if fp == "0" else -1.0
    return cmath.exp(2.0 * sgn * t.s)


def elliptic_value(expr: LocalExpression, kappa: int, nu) -> np.ndarray:
    """Algebra value on the elliptic component of sign kappa, parameter nu > 0."""
    nu = np.asarray(nu, dtype=float)
    comp = "pos" if kappa > 0 else "neg"
    m = expr.lam
    a = 2j * kappa * nu
    out = np.zeros(nu.shape, dtype=complex)
    d_i = expr.d("compact", comp, "i")
    d_mi = expr.d("compact", comp, "-i")
    if d_i != 0:
        out += d_i * np.exp(1j * m * kappa * nu) / a
    if d_mi != 0:
        out += d_mi * np.exp(-1j * m * kappa * nu) / (-a)
    return out


def hyperbolic_value(expr: LocalExpression, s) -> np.ndarray:
    """Algebra value on the hyperbolic set, parameter s > 0 (conjugated to sH)."""
    s = np.asarray(s, dtype=float)
    m = expr.lam
    out = np.zeros(s.shape, dtype=complex)
    d0 = expr.d("split", "p+", "0")
    dinf = expr.d("split", "p+", "inf")
    if d0 != 0:
        out += d0 * np.exp(m * s) / (2.0 * s)
    if dinf != 0:
        out += dinf * np.exp(-m * s) / (-2.0 * s)
    return out


def evaluate_algebra(expr: LocalExpression, zeta: np.ndarray) -> complex:
    """theta(zeta) = sum_x d_{E,x} e^{lambda_x(zeta)} / prod alpha_x(zeta)."""
    kind, comp, par = classify_element(np.asarray(zeta, dtype=float))
    if kind == "compact":
        kappa = 1 if comp == "+" else -1
        return complex(elliptic_value(expr, kappa, np.array(par)))
    return complex(hyperbolic_value(expr, np.array(par)))


def algebra_denominator(zeta: np.ndarray) -> complex:
    """The Weyl-denominator factor prod_{alpha>0} alpha_x(zeta) at x with
    positive pullback; scales exactly linearly under zeta -> c zeta."""
    kind, comp, par = classify_element(np.asarray(zeta, dtype=float))
    if kind == "compact":
        kappa = 1 if comp == "+" else -1
        return 2j * kappa * par
    return 2.0 * par


# --- pairing against test functions -------------------------------------------

@dataclass
class PairingResult:
    value: complex
    error_estimate: float
    converged: bool
    values_at_delta: tuple = ()
    delta_schedule: tuple = ()

    def __complex__(self):
        return complex(self.value)


def _tau_nodes(tmax_cap: float, order: int, width: float = 0.6):
    """GL nodes on [0, 1] in panels fine enough to resolve width in tau."""
    k = max(1, int(math.ceil(tmax_cap / width)))
    xt, wt = np.polynomial.legendre.leggauss(order)
    nodes, wts = [], []
    for j in range(k):
        a, b = j / k, (j + 1) / k
        nodes.append(0.5 * (a + b) + 0.5 * (b - a) * xt)
        wts.append(0.5 * (b - a) * wt)
    return np.concatenate(nodes), np.concatenate(wts)


def _pair_region(expr, phi, kind: str, q0: float, q1: float, R: float,
                 orders, n_panels: int) -> complex:
    """One smooth region in cone-adapted coordinates (q, tau, psi).

    kind "ell+"/"ell-": r = q sinh(tau), v = +-q cosh(tau), measure
    2 q^2 sinh(tau); kind "hyp": r = q cosh(tau), v = q sinh(tau), measure
    2 q^2 cosh(tau), tau signed.  The factor q^2 cancels the 1/q singularity
    of the local expression exactly.
    """
    if q1 <= q0:
        return 0.0 + 0.0j
    oq, ot, opsi = orders
    psi, dpsi = np.linspace(0.0, 2.0 * math.pi, opsi, endpoint=False, retstep=True)
    cpsi, spsi = np.cos(psi), np.sin(psi)
    xq, wq0 = np.polynomial.legendre.leggauss(oq)
    qs = np.geomspace(q0, q1, n_panels + 1)
    total = 0.0 + 0.0j
    for a, b in zip(qs[:-1], qs[1:]):
        q = 0.5 * (a + b) + 0.5 * (b - a) * xq
        wq = 0.5 * (b - a) * wq0
        tmax = 0.5 * np.arccosh(np.maximum((R / q) ** 2, 1.0))
        cap = float(np.max(tmax))
        if cap == 0.0:
            continue
        xt, wt = _tau_nodes(cap, ot)
        if kind == "hyp":
            that = np.concatenate([-xt[::-1], xt])
            wthat = np.concatenate([wt[::-1], wt])
        else:
            that, wthat = xt, wt
        T = np.multiply.outer(tmax, that)                  # (nq, nt)
        WT = np.multiply.outer(tmax * wq, wthat)
        if kind == "hyp":
            r = q[:, None] * np.cosh(T)
            v = q[:, None] * np.sinh(T)
            meas = 2.0 * (q**2)[:, None] * np.cosh(T)
            theta_vals = hyperbolic_value(expr, q)
        else:
            kappa = 1 if kind == "ell+" else -1
            r = q[:, None] * np.sinh(T)
            v = kappa * q[:, None] * np.cosh(T)
            meas = 2.0 * (q**2)[:, None] * np.sinh(T)
            theta_vals = elliptic_value(expr, kappa, q)
        x = np.multiply.outer(r, cpsi)                     # (nq, nt, npsi)
        u = np.multiply.outer(r, spsi)
        y = u + v[..., None]
        z = u - v[..., None]
        pts = np.stack([x, y, z], axis=-1)
        phv = phi.value(pts)
        inner = np.sum(phv, axis=-1) * dpsi
        total += np.sum(theta_vals[:, None] * meas * inner * WT)
    return total


def _pair_shell(expr, phi, q0, q1, R, orders, n_panels) -> complex:
    total = 0.0 + 0.0j
    kinds = []
    if any(expr.d("compact", c, f) != 0 for c in ("pos", "neg") for f in ("i", "-i")):
        kinds += ["ell+", "ell-"]
    if any(expr.d("split", c, f) != 0 for c in SPLIT.components() for f in ("0", "inf")):
        kinds += ["hyp"]
    for kind in kinds:
        total += _pair_region(expr, phi, kind, q0, q1, R, orders, n_panels)
    return total


def _pair_at_cut(expr, phi, cut, R, orders, n_panels) -> complex:
    return _pair_shell(expr, phi, cut, R, R, orders, n_panels)


def pair_algebra(
    expr: LocalExpression,
    phi: TestFunction,
    rel_tol: float = 1e-3,
    R: Optional[float] = None,
    delta_schedule: Sequence[float] = (1e-2, 1e-3, 1e-4),
    orders: tuple[int, int, int] = (16, 12, 48),
    n_panels: int = 12,
    scale: Optional[float] = None,
) -> PairingResult:
    """int_{g_R} theta(zeta) phi(zeta) d zeta by singular-cone-aware quadrature.

    The integral over {|p| >= delta} is computed in cone-adapted coordinates
    (invariant, cosh/sinh-angle, rotation angle), where the 1/sqrt|p|
    singularity of theta is removed exactly by the measure; the remaining
    shell |p| < delta is extrapolated via the Richardson model
    I(delta) = I - c sqrt(delta) over the delta schedule.
    """
    R = float(R if R is not None else phi.radius)
    deltas = sorted(float(d) for d in delta_schedule)  # ascending
    cuts = [math.sqrt(d) for d in deltas]
    # base integral at the largest cut, plus shell increments going down
    vals = {}
    base_cut = cuts[-1]
    acc = _pair_at_cut(expr, phi, base_cut, R, orders, n_panels)
    vals[base_cut] = acc
    for hi, lo in zip(cuts[::-1][:-1], cuts[::-1][1:]):
        inc = _pair_shell(expr, phi, lo, hi, R, orders, max(4, n_panels // 2))
        acc = acc + inc
        vals[lo] = acc
    I = [vals[c] for c in cuts]  # I[k] = integral over |p| >= deltas[k]
    # Richardson: the shell obeys I(c) = I - a c - b c^2 in the cut c =
    # sqrt(delta) (the linear term from the cone at infinity, the quadratic
    # from the tip); fit and remove both from the three smallest cuts.
    if len(cuts) >= 3:
        c3 = np.asarray(cuts[:3])
        A = np.stack([np.ones(3), -c3, -c3 * c3], axis=1)
        sol = np.linalg.solve(A, np.asarray(I[:3], dtype=complex))
        extrap = complex(sol[0])
        two_pt = (I[0] * cuts[1] - I[1] * cuts[0]) / (cuts[1] - cuts[0])
        shell_err = 0.25 * abs(extrap - two_pt)
    elif len(cuts) == 2:
        extrap = (I[0] * cuts[1] - I[1] * cuts[0]) / (cuts[1] - cuts[0])
        shell_err = 0.5 * abs(extrap - I[0])
    else:
        extrap, shell_err = I[0], abs(I[0]) * 0.05
    # quadrature refinement estimate on the base region
    refined = _pair_at_cut(expr, phi, base_cut, R,
                           (orders[0] + 4, orders[1] + 4, orders[2] + 16), n_panels + 4)
    quad_err = abs(refined - vals[base_cut])
    err = quad_err + shell_err
    ref_scale = max(abs(extrap), scale if scale is not None else 0.0, 1e-12)
    converged = err <= max(rel_tol * ref_scale, 1e-12)
    return PairingResult(extrap, err, converged, tuple(I), tuple(deltas))


# --- eigendistribution verification --------------------------------------------

def verify_eigendistribution(
    expr: LocalExpression,
    lam: Optional[complex] = None,
    battery: Optional[Iterable[TestFunction]] = None,
    tol: float = 1e-3,
    poly: InvariantPolynomial = CASIMIR,
) -> dict:
    """Residuals |<theta, p(d)phi - p_norm(lambda) phi>| over a phi battery.

    Each record is {phi_id, residual, tolerance, pass}; residual is relative
    to the L1 scale of phi.  max_residual aggregates the battery.
    """
    from .cycle_integral import default_battery

    lam = expr.lam if lam is None else lam
    eig = poly.eigenvalue(lam)
    battery = list(battery) if battery is not None else default_battery(5)
    records = []
    for i, phi in enumerate(battery):
        combined = poly.apply(phi) - phi * eig
        scale = max(phi.l1_norm(), 1e-12)
        res = pair_algebra(expr, combined, scale=scale,
                           delta_schedule=(1e-2, 1e-3, 1e-4, 1e-5))
        rel = abs(res.value) / scale
        records.append(
            {"phi_id": i, "residual": rel, "tolerance": tol, "pass": bool(rel <= tol)}
        )
    return {
        "lambda": str(lam),
        "eigenvalue": str(eig),
        "max_residual": max(r["residual"] for r in records),
        "records": records,
        "pass": all(r["pass"] for r in records),
    }


def check_symmetry(expr: LocalExpression) -> bool:
    """Whether d_{E, vx} = sgn(v) d_{E, x} holds exactly for all v in W_lambda.

    W_lambda is trivial for regular lambda (vacuously true); for lambda = 0
    the nontrivial reflection exchanges the fixed points with sign -1.
    """
    if expr.lam != 0:
        return True
    c = expr.coeff
    for cartan, comps, fps in (
        ("compact", COMPACT.components(), COMPACT.fixed_points()),
        ("split", SPLIT.components(), SPLIT.fixed_points()),
    ):
        for comp in comps:
            for fp in fps:
                lhs = c.get((cartan, comp, weyl_swap(None, fp)), 0.0)
                rhs = -c.get((cartan, comp, fp), 0.0)
                if lhs != rhs:
                    return False
    return True


def symmetrize(expr: LocalExpression) -> LocalExpression:
    """Project the coefficients onto the (4.16)-symmetric part (lambda = 0 case)."""
    c = expr.coeff
    out: dict[CKey, complex] = {}
    for key in set(c) | {(k[0], k[1], weyl_swap(None, k[2])) for k in c}:
        cartan, comp, fp = key
        swapped = (cartan, comp, weyl_swap(None, fp))
        out[key] = (c.get(key, 0.0) - c.get(swapped, 0.0)) / 2.0
    return replace(expr, coefficients=_freeze(out))


# --- SU(2) calibration of the eigenvalue normalization ---------------------------

def su2_weyl_pullback(m: int, nu) -> np.ndarray:
    """The pullback j^{1/2} chi_m as a function of the su(2) radius nu."""
    nu = np.asarray(nu, dtype=float)
    return np.sin((m + 1) * nu) / nu


def _su2_pair(m: int, phi: TestFunction, order: int = 40) -> complex:
    """Pairing of the SU(2) Weyl pullback with phi over su(2) coords (a,b1,b2)."""
    nodes, wts = np.polynomial.legendre.leggauss(order)
    R = phi.radius
    g = R * nodes
    X, Y, Z = np.meshgrid(g, g, g, indexing="ij")
    pts = np.stack([X, Y, Z], axis=-1)
    nu = np.sqrt(np.maximum(np.sum(pts * pts, axis=-1), 1e-300))
    theta = su2_weyl_pullback(m, nu)
    vals = theta * phi.value(pts)
    W3 = (R**3) * np.einsum("i,j,k->ijk", wts, wts, wts)
    return complex(np.sum(vals * W3))


def su2_casimir_calibration(ms: Sequence[int] = (1, 2), n_phi: int = 3) -> float:
    """Fit the constant C in p_norm(lambda) = C lambda^2 on the SU(2) case.

    On su(2) coordinates (a, b1, b2) the trace-pairing-matched operator of
    the invariant polynomial is -Laplacian/4; the Weyl pullback of the
    character with highest weight m has infinitesimal character
    lambda = (m+1) omega and satisfies -Laplacian theta = (m+1)^2 theta.
    The fitted C freezes InvariantPolynomial.eigenvalue_normalization.
    """
    from .cycle_integral import default_battery

    Q = -np.eye(3) / 4.0
    ratios = []
    for m in ms:
        for phi in default_battery(n_phi, seed=11, sigma_range=(0.5, 0.8)):
            lhs = _su2_pair(m, phi.apply_quadratic_symbol(Q))
            rhs = (m + 1) ** 2 * _su2_pair(m, phi)
            if abs(rhs) > 1e-8:
                ratios.append((lhs / rhs).real)
    return float(np.mean(ratios))
