"""Weyl character formula as a fixed-point sum, with a weight-multiplicity oracle.

Characters of compact connected groups are evaluated at torus points given
as angle vectors theta (one angle per simple coroot); the pairing between a
weight mu = sum m_j omega_j and theta is <mu, theta> = sum m_j theta_j.

``weyl_character`` is the Atiyah-Bott style fixed-point quotient; the
independent oracle is the weight sum built from Freudenthal multiplicities.
"""
from __future__ import annotations

import cmath
from fractions import Fraction
from typing import Sequence

from .lie_core import RootSystem, Weight, act, enumerate_weyl

SINGULAR_TOL = 1e-12


class NonDominantError(ValueError):
    pass


class SingularPointError(ValueError):
    """Torus point at which a Weyl-denominator factor vanishes."""

    def __init__(self, alpha: Weight, value: float):
        self.alpha = alpha
        super().__init__(f"singular torus point: root {tuple(alpha.coords)} factor ~ {value:.2e}")


def _pair(mu: Weight, theta: Sequence[float]) -> float:
    return float(sum(float(c) * t for c, t in zip(mu.coords, theta)))


def _check_regular(rs: RootSystem, theta: Sequence[float]) -> None:
    for alpha in rs.positive_roots:
        # the factor 1 - e^{-i<alpha,theta>} vanishes iff <alpha,theta> in 2 pi Z
        x = _pair(alpha, theta)
        frac = abs(x / (2 * cmath.pi) - round(x / (2 * cmath.pi)))
        if frac * 2 * cmath.pi < SINGULAR_TOL:
            raise SingularPointError(alpha, frac)


def weyl_character(rs: RootSystem, lam: Weight, theta: Sequence[float]) -> complex:
    """Character value sum_w sgn(w) e^{i<w(lam+rho),theta>} / sum_w sgn(w) e^{i<w rho,theta>}.

    Requires lam dominant integral and theta regular (no denominator factor
    vanishes within 1e-12).
    """
    if not (rs.is_dominant(lam) and lam.is_integral()):
        raise NonDominantError(f"lambda {tuple(lam.coords)} must be dominant integral")
    if len(theta) != rs.rank:
        raise ValueError(f"theta must have {rs.rank} angles")
    _check_regular(rs, theta)
    W = enumerate_weyl(rs)
    lam_rho = lam + rs.rho
    num = 0j
    den = 0j
    for w in W:
        num += w.sign * cmath.exp(1j * _pair(act(w, lam_rho), theta))
        den += w.sign * cmath.exp(1j * _pair(act(w, rs.rho), theta))
    return num / den


def weight_multiplicities(rs: RootSystem, lam: Weight) -> dict[tuple, int]:
    """Weight multiplicities of the irreducible with highest weight lam.

    Freudenthal recursion, exact rational arithmetic.  Keys are coordinate
    tuples (Fractions) in the fundamental-weight basis.
    """
    if not (rs.is_dominant(lam) and lam.is_integral()):
        raise NonDominantError(f"lambda {tuple(lam.coords)} must be dominant integral")
    rho_w = rs.rho
    lam_rho = lam + rho_w
    c_top = rs.inner(lam_rho, lam_rho)
    pos = rs.positive_roots

    # candidate set: descend from lam by simple roots, pruned to the ball
    # |mu| <= |lam| (every weight of the irreducible connects to lam through
    # weights by single simple-root steps, and all weights lie in the ball);
    # the descent level equals the height of lam - mu, which is exactly the
    # order Freudenthal's recursion needs.
    lam_norm = rs.inner(lam, lam)
    level: dict[tuple, int] = {lam.coords: 0}
    by_level: list[list[Weight]] = [[lam]]
    frontier = [lam]
    while frontier:
        nxt = []
        for mu in frontier:
            for alpha in rs.simple_roots:
                nu = mu - alpha
                if nu.coords in level or rs.inner(nu, nu) > lam_norm:
                    continue
                level[nu.coords] = level[mu.coords] + 1
                nxt.append(nu)
        if nxt:
            by_level.append(nxt)
        frontier = nxt

    mult: dict[tuple, int] = {lam.coords: 1}
    for tier in by_level[1:]:
        for mu in tier:
            mu_rho = mu + rho_w
            denom = c_top - rs.inner(mu_rho, mu_rho)
            if denom == 0:
                mult[mu.coords] = 0
                continue
            acc = Fraction(0)
            for alpha in pos:
                j = 1
                while True:
                    nu = mu + alpha.scale(j)
                    if rs.inner(nu, nu) > lam_norm:
                        break
                    m = mult.get(nu.coords, 0)
                    if m:
                        acc += m * rs.inner(nu, alpha)
                    j += 1
            val = 2 * acc / denom
            assert val.denominator == 1, "Freudenthal multiplicity must be an integer"
            mult[mu.coords] = int(val)
    return {k: v for k, v in mult.items() if v > 0}


def dimension(rs: RootSystem, lam: Weight) -> int:
    """Weyl dimension formula, exact."""
    if not (rs.is_dominant(lam) and lam.is_integral()):
        raise NonDominantError(f"lambda {tuple(lam.coords)} must be dominant integral")
    num = Fraction(1)
    den = Fraction(1)
    lam_rho = lam + rs.rho
    for alpha in rs.positive_roots:
        num *= rs.inner(lam_rho, alpha)
        den *= rs.inner(rs.rho, alpha)
    d = num / den
    assert d.denominator == 1 and d > 0
    return int(d)


def character_by_weight_sum(rs: RootSystem, lam: Weight, theta: Sequence[float]) -> complex:
    """Independent oracle: sum_mu mult(mu) e^{i<mu,theta>}."""
    total = 0j
    for coords, m in weight_multiplicities(rs, lam).items():
        total += m * cmath.exp(1j * _pair(Weight(coords), theta))
    return total
