"""Root systems, weights and Weyl groups with exact rational arithmetic.

Everything in this module is exact: weights and roots are tuples of
``fractions.Fraction`` in the fundamental-weight basis, Weyl elements are
exact rational matrices.  Floating point enters only in the evaluation
modules that consume these objects.

Supported systems: A1, A2, B2, G2 and products of A1 (labels like
"A1xA1").  Root ordering is lexicographic in simple-root coordinates, so
enumerations are deterministic across runs.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

Q = Fraction
Vector = tuple[Fraction, ...]


class UnsupportedSeriesError(ValueError):
    """Series/rank label outside the supported list."""


class RankMismatchError(ValueError):
    """Operands live in weight spaces of different rank."""


# Cartan matrices, convention A[i][j] = <alpha_j, alpha_i^vee>, and squared
# lengths (alpha_i, alpha_i) used to build the invariant form.
_CARTAN = {
    "A1": ([[2]], [Q(2)]),
    "A2": ([[2, -1], [-1, 2]], [Q(2), Q(2)]),
    # B2: alpha_1 long, alpha_2 short
    "B2": ([[2, -1], [-2, 2]], [Q(2), Q(1)]),
    # G2: alpha_1 short, alpha_2 long, normalized (short, short) = 2
    "G2": ([[2, -3], [-1, 2]], [Q(2), Q(6)]),
}


def _qv(v: Iterable) -> Vector:
    return tuple(Q(x) for x in v)


@dataclass(frozen=True)
class Weight:
    """Weight-space element, coordinates in the fundamental-weight basis."""

    coords: Vector

    def __post_init__(self):
        object.__setattr__(self, "coords", _qv(self.coords))

    @property
    def rank(self) -> int:
        return len(self.coords)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coords)

    def __add__(self, other: "Weight") -> "Weight":
        self._check(other)
        return Weight(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "Weight") -> "Weight":
        self._check(other)
        return Weight(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "Weight":
        return Weight(tuple(-a for a in self.coords))

    def scale(self, c) -> "Weight":
        c = Q(c)
        return Weight(tuple(c * a for a in self.coords))

    def _check(self, other: "Weight") -> None:
        if self.rank != other.rank:
            raise RankMismatchError(f"rank {self.rank} vs {other.rank}")


@dataclass(frozen=True)
class WeylElement:
    """Weyl group element: reduced word, exact matrix on weight space, sign.

    The matrix acts on fundamental-weight coordinates; column j is the
    image of the j-th fundamental weight.
    """

    word: tuple[int, ...]
    matrix: tuple[Vector, ...]
    sign: int

    @property
    def rank(self) -> int:
        return len(self.matrix)


@dataclass(frozen=True)
class RootSystem:
    """Root system data for one of the supported series.

    Roots are stored both in simple-root coordinates (integer vectors,
    ``roots_simple``) and fundamental-weight coordinates (``roots``).
    ``positive_roots`` are the roots with nonnegative simple-root
    coordinates; ordering is lexicographic in simple-root coordinates.
    """

    type_label: str
    rank: int
    cartan_matrix: tuple[tuple[int, ...], ...]
    root_lengths: Vector  # (alpha_i, alpha_i) for simple roots
    roots_simple: tuple[Vector, ...]
    positive_simple: tuple[Vector, ...]

    @property
    def simple_roots(self) -> tuple[Weight, ...]:
        return tuple(self.root_to_weight(_unit(self.rank, i)) for i in range(self.rank))

    @property
    def roots(self) -> tuple[Weight, ...]:
        return tuple(self.root_to_weight(c) for c in self.roots_simple)

    @property
    def positive_roots(self) -> tuple[Weight, ...]:
        return tuple(self.root_to_weight(c) for c in self.positive_simple)

    @property
    def rho(self) -> Weight:
        return rho(self)

    def root_to_weight(self, coords_simple: Sequence) -> Weight:
        """Convert simple-root coordinates to fundamental-weight coordinates.

        beta = sum_i c_i alpha_i has weight coordinates beta(alpha_j^vee)
        = sum_i c_i A[j][i].
        """
        c = _qv(coords_simple)
        A = self.cartan_matrix
        return Weight(tuple(sum(c[i] * A[j][i] for i in range(self.rank)) for j in range(self.rank)))

    def inner(self, lam: Weight, mu: Weight) -> Fraction:
        """Invariant bilinear form (lam, mu), long roots normalized per series."""
        lam._check(mu)
        # (omega_i, alpha_j) = delta_ij (alpha_j, alpha_j)/2; expand mu in
        # simple roots: mu = sum_j m_j alpha_j with fw(mu) = A m.
        m = _solve(self.cartan_matrix, mu.coords)
        return sum(lam.coords[j] * m[j] * self.root_lengths[j] / 2 for j in range(self.rank))

    def pairing(self, lam: Weight, alpha: Weight) -> Fraction:
        """2(lam, alpha)/(alpha, alpha), exact."""
        aa = self.inner(alpha, alpha)
        return 2 * self.inner(lam, alpha) / aa

    def is_dominant(self, lam: Weight) -> bool:
        return all(c >= 0 for c in lam.coords)

    def reflect_simple(self, i: int, lam: Weight) -> Weight:
        """Simple reflection s_i acting on a weight: lam - lam_i alpha_i."""
        A = self.cartan_matrix
        ci = lam.coords[i]
        return Weight(tuple(lam.coords[j] - ci * A[j][i] for j in range(self.rank)))


def _unit(n: int, i: int) -> Vector:
    return tuple(Q(1) if j == i else Q(0) for j in range(n))


def _transpose(M):
    return tuple(tuple(row[j] for row in M) for j in range(len(M[0])))


def _solve(M, b):
    """Exact solve M x = b by Gaussian elimination over Q."""
    n = len(b)
    aug = [[Q(M[i][j]) for j in range(n)] + [Q(b[i])] for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return tuple(aug[i][n] for i in range(n))


def _parse_label(type_label: str) -> list[str]:
    parts = type_label.split("x")
    if not parts or any(p not in _CARTAN for p in parts):
        raise UnsupportedSeriesError(
            f"unsupported series {type_label!r}; supported: A1, A2, B2, G2 and products of A1"
        )
    if len(parts) > 1 and any(p != "A1" for p in parts):
        raise UnsupportedSeriesError(f"only products of A1 are supported, got {type_label!r}")
    return parts


def build_root_system(type_label: str) -> RootSystem:
    """Build the root system for a supported label.

    Roots are generated by closing the simple roots under all simple
    reflections (acting in simple-root coordinates), then sorted
    lexicographically for determinism.
    """
    parts = _parse_label(type_label)
    blocks = [_CARTAN[p] for p in parts]
    rank = sum(len(b[0]) for b in blocks)
    A = [[0] * rank for _ in range(rank)]
    lengths: list[Fraction] = []
    off = 0
    for mat, lens in blocks:
        k = len(mat)
        for i in range(k):
            for j in range(k):
                A[off + i][off + j] = mat[i][j]
        lengths.extend(lens)
        off += k
    A_t = tuple(tuple(row) for row in A)

    # close simple roots under simple reflections, in simple-root coords:
    # s_i(beta)_j = beta_j - <beta, alpha_i^vee> delta_ij with
    # <beta, alpha_i^vee> = sum_k beta_k A[i][k].
    simple = [_unit(rank, i) for i in range(rank)]
    seen: set[Vector] = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for beta in frontier:
            for i in range(rank):
                pair = sum(beta[k] * A[i][k] for k in range(rank))
                img = tuple(beta[j] - (pair if j == i else 0) for j in range(rank))
                if img not in seen:
                    seen.add(img)
                    nxt.append(img)
        frontier = nxt
    roots = sorted(seen)
    positive = tuple(r for r in roots if all(c >= 0 for c in r))
    rs = RootSystem(
        type_label=type_label,
        rank=rank,
        cartan_matrix=A_t,
        root_lengths=tuple(lengths),
        roots_simple=tuple(roots),
        positive_simple=positive,
    )
    _check_invariants(rs)
    return rs


def _check_invariants(rs: RootSystem) -> None:
    neg = {tuple(-c for c in r) for r in rs.positive_simple}
    assert set(rs.roots_simple) == set(rs.positive_simple) | neg, "roots != Phi+ U -Phi+"
    r = rho(rs)
    assert r.coords == tuple(Q(1) for _ in range(rs.rank)), "rho != sum of fundamental weights"


def rho(rs: RootSystem) -> Weight:
    """Half the sum of positive roots (equals the sum of fundamental weights)."""
    total = [Q(0)] * rs.rank
    for alpha in rs.positive_roots:
        for j in range(rs.rank):
            total[j] += alpha.coords[j]
    return Weight(tuple(c / 2 for c in total))


def _identity(rank: int) -> WeylElement:
    return WeylElement(word=(), matrix=tuple(_unit(rank, i) for i in range(rank)), sign=1)


def _mat_of_simple(rs: RootSystem, i: int) -> tuple[Vector, ...]:
    cols = []
    for j in range(rs.rank):
        w = rs.reflect_simple(i, Weight(_unit(rs.rank, j)))
        cols.append(w.coords)
    # store as rows acting on column coordinate vectors: matrix[r][c]
    return tuple(tuple(cols[c][r] for c in range(rs.rank)) for r in range(rs.rank))


def _mat_mul(A, B):
    n = len(A)
    return tuple(tuple(sum(A[i][k] * B[k][j] for k in range(n)) for j in range(n)) for i in range(n))


def compose(rs: RootSystem, w1: WeylElement, w2: WeylElement) -> WeylElement:
    """Group composition (w1 w2), acting left to right on weights."""
    return WeylElement(
        word=w1.word + w2.word,
        matrix=_mat_mul(w1.matrix, w2.matrix),
        sign=w1.sign * w2.sign,
    )


def enumerate_weyl(rs: RootSystem) -> list[WeylElement]:
    """Complete duplicate-free list of Weyl elements, identity first.

    Breadth-first closure of the simple reflections; the word recorded for
    each element is reduced (BFS reaches each element at minimal length).
    """
    gens = [
        WeylElement(word=(i,), matrix=_mat_of_simple(rs, i), sign=-1)
        for i in range(rs.rank)
    ]
    ident = _identity(rs.rank)
    elements: dict[tuple, WeylElement] = {ident.matrix: ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for w in frontier:
            for i, s in enumerate(gens):
                cand = WeylElement(word=w.word + (i,), matrix=_mat_mul(w.matrix, s.matrix), sign=w.sign * s.sign)
                if cand.matrix not in elements:
                    elements[cand.matrix] = cand
                    nxt.append(cand)
        frontier = nxt
    out = list(elements.values())
    out.sort(key=lambda w: (len(w.word), w.word))
    return out


def act(w: WeylElement, lam: Weight) -> Weight:
    """Apply a Weyl element to a weight (exact)."""
    if w.rank != lam.rank:
        raise RankMismatchError(f"rank {w.rank} vs {lam.rank}")
    return Weight(tuple(sum(w.matrix[i][j] * lam.coords[j] for j in range(w.rank)) for i in range(w.rank)))


def sign(w: WeylElement) -> int:
    return w.sign


def longest_element(rs: RootSystem) -> WeylElement:
    """The longest element (maximal reduced-word length)."""
    return max(enumerate_weyl(rs), key=lambda w: len(w.word))


def stabilizer(rs: RootSystem, lam: Weight) -> list[WeylElement]:
    """W_lambda, the isotropy subgroup of a weight."""
    return [w for w in enumerate_weyl(rs) if act(w, lam) == lam]
