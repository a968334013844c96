"""Local-expression coefficients for standard sheaves on X = P^1 by the
Euler-characteristic fixed-point recipe; discrete-series and induced
(principal-series) characters for SL(2,R).

The local cohomology behind each coefficient is computed by stratified
compact-support Euler characteristics on explicit germ-level cells:
chi_c(point) = 1, chi_c(open interval) = -1, chi_c(half-open interval) = 0,
chi_c(open 2-cell) = 1.  The disc radius is symbolic: the tables encode the
intersection pattern of each contraction cell with the orbit strata on a
punctured disc around the fixed point, so no numeric epsilon appears.

Two independent recipes are computed and compared for every coefficient:

  A  (attracting type)  d = chi_c(N' cap D_eps, F), summed over table cells;
  B  (repelling type)   d = (dual shift sign) * [chi(G_x) - chi(link of x in
     N'' with coefficients in G)], G the extension sheaf underlying the
     Verdier dual of F.

Both recipes agree on every shipped case, and their common value is the
integer coefficient multiplying the canonical branch of e^{lambda - rho}.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .eigendist import LocalExpression, make_expression
from .real_structure import (
    COMPACT,
    SPLIT,
    CartanElement,
    CartanSubgroup,
    FlagOrbit,
    StandardSheafDescriptor,
    compact_element,
    orbit_by_label,
    root_character,
    split_element,
    standard_sheaf,
)


class InadmissibleChoiceError(ValueError):
    pass


@dataclass(frozen=True)
class ContractionChoice:
    """Subsets Psi', Psi'' of the positive system (rank 1: subsets of {alpha})."""

    psi_prime: frozenset
    psi_dprime: frozenset
    canonical: bool = False

    def cell(self, which: str) -> str:
        s = self.psi_prime if which == "prime" else self.psi_dprime
        return "full" if "alpha" in s else "point"


def admissible_contraction_choices(t: CartanElement, x: str) -> list[ContractionChoice]:
    """All (Psi', Psi'') allowed by the contraction conditions at (t, x).

    If |e^{alpha_x}(t)| < 1 then alpha must lie in Psi' and not Psi''; if
    > 1, the other way around; on the unit circle both memberships are
    admissible.  The canonical choice takes Psi'' = {real roots with
    e^alpha(t) > 1} and Psi' maximal.
    """
    if not t.regular:
        raise InadmissibleChoiceError("contraction data needs a regular element")
    mod = abs(root_character(t, x))
    alpha = frozenset({"alpha"})
    empty = frozenset()
    if mod < 1.0 - 1e-12:
        return [ContractionChoice(alpha, empty, canonical=True)]
    if mod > 1.0 + 1e-12:
        return [ContractionChoice(empty, alpha, canonical=True)]
    # |e^{alpha_x}(t)| = 1: free choice; the canonical one has Psi' = Phi+
    out = []
    for pp in (alpha, empty):
        for pdd in (empty, alpha):
            out.append(ContractionChoice(pp, pdd, canonical=(pp == alpha and pdd == empty)))
    return out


# --- germ-level stratum tables ----------------------------------------------
#
# Orbit strata of P^1: "H+", "H-", "circle".  For each fixed point the table
# lists the cells of (full cell around x) cap D_eps, as (chi_c, stratum),
# together with {x} itself, and the cells of the link of x.

@dataclass(frozen=True)
class GermCell:
    name: str
    chi_c: int
    stratum: str


STRATUM_OF_FP = {"i": "H+", "-i": "H-", "0": "circle", "inf": "circle"}

# cells of D_eps \ {x} for the full 2-cell N = N^+ around x
_DISC_CELLS = {
    "i": (GermCell("punctured-disc", 0, "H+"),),
    "-i": (GermCell("punctured-disc", 0, "H-"),),
    "0": (
        GermCell("upper-half-disc", 1, "H+"),
        GermCell("lower-half-disc", 1, "H-"),
        GermCell("circle-arc-left", -1, "circle"),
        GermCell("circle-arc-right", -1, "circle"),
    ),
    "inf": (
        GermCell("upper-half-disc", 1, "H+"),
        GermCell("lower-half-disc", 1, "H-"),
        GermCell("circle-arc-left", -1, "circle"),
        GermCell("circle-arc-right", -1, "circle"),
    ),
}

# cells of the link of x inside the full cell (a small circle around x)
_LINK_CELLS = {
    "i": (GermCell("link-circle", 0, "H+"),),
    "-i": (GermCell("link-circle", 0, "H-"),),
    "0": (
        GermCell("link-point-left", 1, "circle"),
        GermCell("link-point-right", 1, "circle"),
        GermCell("link-arc-upper", -1, "H+"),
        GermCell("link-arc-lower", -1, "H-"),
    ),
    "inf": (
        GermCell("link-point-left", 1, "circle"),
        GermCell("link-point-right", 1, "circle"),
        GermCell("link-arc-upper", -1, "H+"),
        GermCell("link-arc-lower", -1, "H-"),
    ),
}


@dataclass(frozen=True)
class StratumTable:
    """Intersection pattern of a contraction cell with the orbit strata near x."""

    fixed_point: str
    cell: str  # "full" | "point"

    def disc_cells(self) -> tuple[GermCell, ...]:
        center = GermCell("center-point", 1, STRATUM_OF_FP[self.fixed_point])
        if self.cell == "point":
            return (center,)
        return (center,) + _DISC_CELLS[self.fixed_point]

    def link_cells(self) -> tuple[GermCell, ...]:
        if self.cell == "point":
            return ()
        return _LINK_CELLS[self.fixed_point]


# stalk Euler characteristics of the standard sheaf F = Rj_* L on each
# stratum germ near the fixed points (rank-one local systems contribute 1)
def _stalk_chi_F(orbit: FlagOrbit, stratum: str) -> int:
    if orbit.label == "UpperHalfPlane":
        return 1 if stratum in ("H+", "circle") else 0
    if orbit.label == "LowerHalfPlane":
        return 1 if stratum in ("H-", "circle") else 0
    return 1 if stratum == "circle" else 0


# the extension sheaf G underlying the Verdier dual D F = j_! (dual L)[dim S],
# and the parity sign of the shift
def _stalk_chi_G(orbit: FlagOrbit, stratum: str) -> int:
    if orbit.label == "UpperHalfPlane":
        return 1 if stratum == "H+" else 0
    if orbit.label == "LowerHalfPlane":
        return 1 if stratum == "H-" else 0
    return 1 if stratum == "circle" else 0


def _dual_shift_sign(orbit: FlagOrbit) -> int:
    return 1 if orbit.is_open else -1  # shift by dim_R S: 2 resp. 1


def _recipe_A(orbit: FlagOrbit, x: str, choice: ContractionChoice) -> int:
    table = StratumTable(x, choice.cell("prime"))
    return sum(c.chi_c * _stalk_chi_F(orbit, c.stratum) for c in table.disc_cells())


def _recipe_B(orbit: FlagOrbit, x: str, choice: ContractionChoice) -> int:
    table = StratumTable(x, choice.cell("dprime"))
    stalk = _stalk_chi_G(orbit, STRATUM_OF_FP[x])
    link = sum(c.chi_c * _stalk_chi_G(orbit, c.stratum) for c in table.link_cells())
    return _dual_shift_sign(orbit) * (stalk - link)


def _component_representative(cartan: CartanSubgroup, component: str) -> CartanElement:
    if cartan.kind == "compact":
        return compact_element(1.0 if component == "pos" else -1.0)
    eps = 1 if component[0] == "p" else -1
    s = 1.0 if component[1] == "+" else -1.0
    return split_element(eps, s)


def euler_coefficient(
    sheaf: StandardSheafDescriptor,
    cartan: CartanSubgroup,
    component: str,
    fixed_point: str,
    choice: Optional[ContractionChoice] = None,
) -> int:
    """Integer coefficient d_{E,x} of the standard sheaf at (Cartan, E, x).

    Computed by both the N'-type and N''-type recipes over every admissible
    contraction choice (or the given one); all values must agree.
    """
    if fixed_point not in cartan.fixed_points():
        raise ValueError(f"{fixed_point!r} is not a fixed point of the {cartan.kind} Cartan")
    t = _component_representative(cartan, component)
    choices = [choice] if choice is not None else admissible_contraction_choices(t, fixed_point)
    values = set()
    for ch in choices:
        values.add(_recipe_A(sheaf.orbit, fixed_point, ch))
        values.add(_recipe_B(sheaf.orbit, fixed_point, ch))
    if len(values) != 1:
        raise AssertionError(
            f"contraction choices disagree at ({cartan.kind},{component},{fixed_point}): {values}"
        )
    return values.pop()


def coefficient_table(sheaf: StandardSheafDescriptor) -> list[dict]:
    """All coefficients of a standard sheaf, with branch descriptions (JSON-able)."""
    rows = []
    m1 = sheaf.twist - 1.0  # lambda - rho
    for cartan in (COMPACT, SPLIT):
        for comp in cartan.components():
            for fp in cartan.fixed_points():
                d = euler_coefficient(sheaf, cartan, comp, fp)
                rows.append(
                    {
                        "sheaf": sheaf.orbit.label,
                        "cartan": cartan.kind,
                        "component": comp,
                        "fixed_point": fp,
                        "coefficient": d,
                        "branch": _branch_string(cartan.kind, comp, fp, m1,
                                                 sheaf.local_system.chi_F),
                    }
                )
    return rows


def _branch_string(kind: str, comp: str, fp: str, m1: complex, chi_F: int) -> str:
    m1s = _fmt(m1)
    if kind == "compact":
        sgn = "" if fp == "i" else "-"
        return f"exp({sgn}i*({m1s})*theta)"
    sgn = "" if fp == "0" else "-"
    core = f"exp({sgn}({m1s})*s)"
    if comp[0] == "m":
        return f"chi_F * {core}" if chi_F is not None else core
    return core


def _fmt(c: complex) -> str:
    if abs(c.imag) < 1e-14:
        v = c.real
        return str(int(v)) if v == int(v) else f"{v:g}"
    return f"{c.real:g}{c.imag:+g}i"


# --- assembled characters ------------------------------------------------------

def discrete_series_expression(orbit_label: str, lam: float) -> LocalExpression:
    """Local expression of the discrete series attached to an open orbit.

    lam is the antidominant parameter (lambda = lam * omega, lam a negative
    integer so that lambda - rho is integral and (lambda, alpha) < 0).
    Compact-Cartan coefficients are the indicator of x in S; split-Cartan
    coefficients vanish wherever |e^{lambda_x}(t)| > 1 (temperedness).
    """
    if lam != int(lam) or lam >= 0:
        raise ValueError("discrete series needs a negative integral parameter")
    orbit = orbit_by_label(orbit_label)
    if not orbit.is_open:
        raise ValueError("discrete series attach to open orbits")
    sheaf = standard_sheaf(orbit_label, float(lam))
    coeff = {}
    for cartan in (COMPACT, SPLIT):
        for comp in cartan.components():
            for fp in cartan.fixed_points():
                d = euler_coefficient(sheaf, cartan, comp, fp)
                if d:
                    coeff[(cartan.kind, comp, fp)] = complex(d)
    expr = make_expression(complex(lam), coeff, chi_F=None,
                           label=f"DS[{orbit_label},{int(lam)}]")
    _assert_tempered(expr)
    return expr


def _assert_tempered(expr: LocalExpression) -> None:
    for (kind, comp, fp), d in expr.coeff.items():
        if kind != "split" or d == 0:
            continue
        t = _component_representative(SPLIT, comp)
        from .real_structure import branch_value

        if abs(branch_value(expr.lam, t, fp, chi_F=1)) > 1.0 + 1e-12:
            raise AssertionError(f"temperedness violated at ({comp},{fp})")


def induced_expression(chi_F: int, nu: complex) -> LocalExpression:
    """Principal series induced from the split Cartan datum (triv, chi_F, nu).

    Compact-Cartan coefficients vanish identically; split-Cartan
    coefficients carry e^{+-nu} with the sign (-1)^{k_x} counting expanding
    real roots, which is exactly the circle-sheaf Euler coefficient.
    """
    if chi_F not in (1, -1):
        raise ValueError("chi_F must be +1 or -1")
    sheaf = standard_sheaf("RealCircle", complex(nu), chi_F=chi_F)
    coeff = {}
    for comp in SPLIT.components():
        for fp in SPLIT.fixed_points():
            d = euler_coefficient(sheaf, SPLIT, comp, fp)
            if d:
                coeff[("split", comp, fp)] = complex(d)
    return make_expression(complex(nu), coeff, chi_F=chi_F,
                           label=f"PS[chiF={chi_F:+d},nu={nu}]")
