"""Structure theory of the supported real forms: SL(2,R) in full, SU(2) as
the compact cross-check.

Cartan subgroups with component data, the three SL(2,R)-orbits on the flag
variety X = P^1, and local-system parameters on orbits.  Conventions:

* compact Cartan of SL(2,R): SO(2), elements k(theta) = exp(theta(E-F));
  fixed points +-i; at x0 = i the positive root pulls back to the character
  e^{2 i theta} (this fixes the tau identification once and for all).
* split Cartan: {eps * a_s} with a_s = diag(e^s, e^{-s}), eps in {+1,-1};
  component group F = {+-1} of order 2; fixed points 0, infinity; at
  x0 = 0 the positive root pulls back to e^{2s}.

Weights are parameterized throughout by their coefficient m in the
fundamental-weight basis (lambda = m * omega); m may be complex for
principal-series parameters.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

REG_TOL = 1e-12

# sl(2) basis used everywhere
H = np.array([[1.0, 0.0], [0.0, -1.0]])
E = np.array([[0.0, 1.0], [0.0, 0.0]])
F = np.array([[0.0, 0.0], [1.0, 0.0]])


class UnsupportedGroupError(ValueError):
    pass


class NotRegular(ValueError):
    """Element is nilpotent/zero or numerically on the singular cone."""


@dataclass(frozen=True)
class CartanSubgroup:
    kind: str                    # "compact" | "split"
    component_group_order: int   # |F|

    def components(self) -> tuple[str, ...]:
        """Labels of the connected components of the regular set T'_R."""
        if self.kind == "compact":
            return ("pos", "neg")  # theta in (0,pi), (pi,2pi) i.e. (-pi,0)
        return ("p+", "p-", "m+", "m-")  # (eps, sign s)

    def fixed_points(self) -> tuple[str, ...]:
        return ("i", "-i") if self.kind == "compact" else ("0", "inf")


COMPACT = CartanSubgroup("compact", 1)
SPLIT = CartanSubgroup("split", 2)


@dataclass(frozen=True)
class CartanElement:
    """Group element of a Cartan subgroup.

    compact: parameter theta (angle, k(theta)); split: (eps, s) with
    eps in {+1,-1} and t = eps * a_s.
    """

    cartan: CartanSubgroup
    theta: float = 0.0
    eps: int = 1
    s: float = 0.0

    @property
    def regular(self) -> bool:
        if self.cartan.kind == "compact":
            return abs(math.remainder(self.theta, math.pi)) > REG_TOL
        return abs(self.s) > REG_TOL

    @property
    def component(self) -> str:
        if self.cartan.kind == "compact":
            # reduce to (-pi, pi); component by the sign of the angle
            t = math.remainder(self.theta, 2 * math.pi)
            return "pos" if t > 0 else "neg"
        return ("p" if self.eps == 1 else "m") + ("+" if self.s > 0 else "-")

    def matrix(self) -> np.ndarray:
        if self.cartan.kind == "compact":
            c, s = math.cos(self.theta), math.sin(self.theta)
            return np.array([[c, s], [-s, c]])
        return self.eps * np.array([[math.exp(self.s), 0.0], [0.0, math.exp(-self.s)]])


def compact_element(theta: float) -> CartanElement:
    return CartanElement(COMPACT, theta=theta)


def split_element(eps: int, s: float) -> CartanElement:
    if eps not in (1, -1):
        raise ValueError("eps must be +1 or -1")
    return CartanElement(SPLIT, eps=eps, s=s)


@dataclass(frozen=True)
class FlagOrbit:
    label: str                    # UpperHalfPlane | LowerHalfPlane | RealCircle
    attached_cartan: CartanSubgroup
    base_point: complex | None    # None encodes the point at infinity
    tau_sign: int                 # sign convention identifying t with h at x0
    maximally_real: bool
    c_invariant: int

    @property
    def is_open(self) -> bool:
        return self.label in ("UpperHalfPlane", "LowerHalfPlane")


UPPER = FlagOrbit("UpperHalfPlane", COMPACT, 1j, +1, True, 0)
LOWER = FlagOrbit("LowerHalfPlane", COMPACT, -1j, -1, True, 0)
CIRCLE = FlagOrbit("RealCircle", SPLIT, 0.0 + 0.0j, +1, True, 0)


@dataclass(frozen=True)
class LocalSystemParam:
    """Parameter of an irreducible equivariant twisted local system on an orbit.

    continuous_part is d(chi) expressed as the coefficient of omega for
    lambda - rho pulled back by tau_{x0}; chi_F is the character of the
    component group F (always +1 on open orbits, where F is trivial).
    """

    twist: complex               # lambda as coefficient of omega
    continuous_part: complex     # (lambda - rho) coefficient
    chi_F: int = +1


@dataclass(frozen=True)
class StandardSheafDescriptor:
    orbit: FlagOrbit
    local_system: LocalSystemParam

    @property
    def twist(self) -> complex:
        return self.local_system.twist


def classify_cartans(group: str) -> list[CartanSubgroup]:
    """Representatives of the Cartan conjugacy classes of the group."""
    if group == "SL2R":
        return [COMPACT, SPLIT]
    if group == "SU2":
        return [COMPACT]
    raise UnsupportedGroupError(f"unsupported group {group!r}; expected SL2R or SU2")


def enumerate_orbits(group: str = "SL2R") -> list[FlagOrbit]:
    """The three SL(2,R)-orbits on P^1, in deterministic order."""
    if group != "SL2R":
        raise UnsupportedGroupError("orbit enumeration is implemented for SL2R")
    return [UPPER, LOWER, CIRCLE]


def orbit_by_label(label: str) -> FlagOrbit:
    for orb in enumerate_orbits():
        if orb.label == label:
            return orb
    aliases = {"upper": UPPER, "lower": LOWER, "circle": CIRCLE}
    if label in aliases:
        return aliases[label]
    raise ValueError(f"unknown orbit {label!r}")


def classify_element(zeta: np.ndarray, tol: float = REG_TOL):
    """Classify a traceless real 2x2 matrix into Cartan type and parameters.

    Returns (kind, component, parameter):
      * elliptic (x^2 + yz < 0): ("compact", "+"|"-", nu) with nu = sqrt(-p)
        and component the sign of the upper-right entry y;
      * hyperbolic (x^2 + yz > 0): ("split", "+", s) with s = sqrt(p) --
        every hyperbolic element is conjugate to s*H with s > 0, and the
        hyperbolic set is connected in sl(2,R);
      * otherwise raises NotRegular.
    """
    zeta = np.asarray(zeta, dtype=float)
    if zeta.shape != (2, 2) or abs(zeta[0, 0] + zeta[1, 1]) > 1e-9:
        raise ValueError("zeta must be a traceless real 2x2 matrix")
    x, y = zeta[0, 0], zeta[0, 1]
    z = zeta[1, 0]
    p = x * x + y * z
    scale = max(1.0, x * x + y * y + z * z)
    if abs(p) <= tol * scale:
        raise NotRegular(f"element with x^2+yz = {p:.3e} is not regular")
    if p < 0:
        return ("compact", "+" if y > 0 else "-", math.sqrt(-p))
    return ("split", "+", math.sqrt(p))


def invariant_poly(zeta: np.ndarray) -> float:
    """p(zeta) = x^2 + yz, the conjugation invariant on sl(2,R)."""
    zeta = np.asarray(zeta)
    return zeta[..., 0, 0] ** 2 + zeta[..., 0, 1] * zeta[..., 1, 0]


def local_system_params(orbit: FlagOrbit, lam: complex) -> list[LocalSystemParam]:
    """Local systems on an orbit with twist lam (coefficient of omega).

    Open orbits: one iff lam - rho is integral (the local system is then
    unique), else none.  Circle orbit: exactly two, one per character of
    F = Z/2.  An empty list is a valid return, not an error.
    """
    mu = complex(lam) - 1.0  # lambda - rho, rho = omega
    if orbit.is_open:
        if abs(mu.imag) < 1e-12 and abs(mu.real - round(mu.real)) < 1e-12:
            return [LocalSystemParam(twist=complex(lam), continuous_part=mu, chi_F=+1)]
        return []
    return [
        LocalSystemParam(twist=complex(lam), continuous_part=mu, chi_F=+1),
        LocalSystemParam(twist=complex(lam), continuous_part=mu, chi_F=-1),
    ]


def standard_sheaf(orbit_label: str, lam: complex, chi_F: int = +1) -> StandardSheafDescriptor:
    orbit = orbit_by_label(orbit_label)
    params = local_system_params(orbit, lam)
    if not params:
        raise ValueError(
            f"no equivariant local system on {orbit.label} at twist {lam} (lambda - rho not integral)"
        )
    for p in params:
        if p.chi_F == chi_F:
            return StandardSheafDescriptor(orbit, p)
    raise ValueError(f"no local system with chi_F={chi_F} on {orbit.label}")


def fixed_points_on_p1(t: CartanElement) -> list[complex | None]:
    """Fixed points of a regular Cartan element acting on P^1 by Moebius maps.

    None encodes the point at infinity.  Solves c z^2 + (d - a) z - b = 0
    for g = [[a,b],[c,d]].
    """
    if not t.regular:
        raise NotRegular("fixed points only enumerated for regular elements")
    g = t.matrix()
    a, b, c, d = g[0, 0], g[0, 1], g[1, 0], g[1, 1]
    if abs(c) < 1e-14:
        # infinity is fixed; the other fixed point solves (d-a) z = b
        if abs(d - a) < 1e-14:
            return [None]
        return [complex(b / (d - a)), None]
    disc = cmath.sqrt((d - a) ** 2 + 4 * b * c)
    z1 = ((a - d) + disc) / (2 * c)
    z2 = ((a - d) - disc) / (2 * c)
    return [z1, z2]


def weyl_swap(cartan: CartanSubgroup, fp: str) -> str:
    """Action of the nontrivial Weyl element on the labeled fixed points."""
    table = {"i": "-i", "-i": "i", "0": "inf", "inf": "0"}
    return table[fp]


# --- character/branch data at the fixed points ---------------------------
#
# For weight mu = m * omega and a Cartan element t, branch_value gives the
# canonical branch of e^{mu_x}(t): on components meeting the closure of the
# identity component, the branch with value 1 at the identity; on the
# eps = -1 split components, the branch is fixed by the chi_F datum
# (for integral m the two recipes agree and no datum is needed).

FIXED_POINT_SIGNS = {
    ("compact", "i"): +1,    # e^{mu_i}(k(theta)) = e^{i m theta}
    ("compact", "-i"): -1,
    ("split", "0"): +1,      # e^{mu_0}(a_s) = e^{m s}
    ("split", "inf"): -1,
}


def branch_value(m: complex, t: CartanElement, fp: str, chi_F: Optional[int] = None) -> complex:
    sgn = FIXED_POINT_SIGNS[(t.cartan.kind, fp)]
    if t.cartan.kind == "compact":
        return cmath.exp(1j * m * sgn * t.theta)
    val = cmath.exp(m * sgn * t.s)
    if t.eps == -1:
        m_int = round(m.real) if abs(m.imag) < 1e-12 else None
        if m_int is not None and abs(m.real - m_int) < 1e-12:
            return ((-1) ** (m_int % 2)) * val
        if chi_F is None:
            raise ValueError(
                "branch on the eps=-1 split component needs a chi_F datum for non-integral weight"
            )
        return chi_F * val
    return val


def root_character(t: CartanElement, fp: str) -> complex:
    """e^{alpha_x}(t) for the positive root alpha (alpha = 2 omega)."""
    return branch_value(2.0, t, fp)
