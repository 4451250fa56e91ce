"""Dimension sequences, Schubert cells and points, and closed-form counts.

The partial flag is always the standard one: A_i is spanned by the first
alpha_i coordinate vectors.  Indices into alpha, jump spots and rows follow
the 1-based convention of the usual notation (alpha_1 .. alpha_ell).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Iterator

import numpy as np

from .counting import binom, gauss_binom, int_det
from .errors import (
    BudgetExceeded,
    DimensionMismatch,
    InvalidInput,
    NotStrictlyIncreasing,
    OutOfRange,
    ZeroInput,
)
from .exterior import Multivector, annihilator, is_decomposable, pluecker
from .gf import GF
from .linalg import (
    DEFAULT_SUBSPACE_BUDGET,
    Subspace,
    coordinate_subspace,
    enumerate_subspaces,
    intersect,
    meet_coordinate_dim,
)


@dataclass(frozen=True)
class DimSeq:
    """The dimension sequence alpha of a flag A_1 < ... < A_ell in GF(q)^m."""

    ell: int
    m: int
    alpha: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "alpha", tuple(int(a) for a in self.alpha))
        if len(self.alpha) != self.ell:
            raise InvalidInput(f"alpha has {len(self.alpha)} entries but ell={self.ell}")
        if not 1 <= self.ell < self.m:
            raise OutOfRange(f"need 1 <= ell < m, got ell={self.ell}, m={self.m}")
        if any(b <= a for a, b in zip(self.alpha, self.alpha[1:])):
            raise NotStrictlyIncreasing(f"alpha {self.alpha} is not strictly increasing")
        if self.alpha[0] < 1 or self.alpha[-1] > self.m:
            raise OutOfRange(f"alpha {self.alpha} must lie in 1..{self.m}")

    def a(self, i: int) -> int:
        """alpha_i with alpha_j = 0 for j <= 0 and m for j > ell."""
        if i <= 0:
            return 0
        if i > self.ell:
            return self.m
        return self.alpha[i - 1]

    @property
    def delta(self) -> int:
        return sum(a - i for i, a in enumerate(self.alpha, start=1))

    @cached_property
    def jumps(self) -> tuple[int, ...]:
        """Jump spots p_1 < ... < p_u (1-based)."""
        return tuple(i for i in range(1, self.ell) if self.alpha[i] - self.alpha[i - 1] >= 2)

    @property
    def u(self) -> int:
        return len(self.jumps)

    @property
    def p(self) -> tuple[int, ...]:
        """(p_0, p_1, ..., p_u, p_{u+1}) = (0, jumps..., ell)."""
        return (0,) + self.jumps + (self.ell,)

    @property
    def r(self) -> tuple[int, ...]:
        """r_i = alpha_{p_i} - p_i for i = 1..u+1."""
        return tuple(self.a(p) - p for p in self.p[1:])

    @property
    def completely_consecutive(self) -> bool:
        return self.u == 0

    @property
    def completely_non_consecutive(self) -> bool:
        return self.u == self.ell - 1

    @property
    def is_grassmann(self) -> bool:
        return self.alpha == tuple(range(self.m - self.ell + 1, self.m + 1))

    def flag(self, F: GF, i: int) -> Subspace:
        """A_i as a coordinate subspace (zero for i <= 0, V for i > ell)."""
        return coordinate_subspace(F, self.m, self.a(i))

    def truncated(self) -> "DimSeq":
        """alpha' = (alpha_1 .. alpha_{ell-1}) in the same ambient space."""
        return DimSeq(self.ell - 1, self.m, self.alpha[:-1])

    def label(self) -> str:
        return ",".join(map(str, self.alpha))


def dimseq_make(ell: int | None, m: int, alpha) -> DimSeq:
    alpha = tuple(int(a) for a in alpha)
    return DimSeq(len(alpha) if ell is None else ell, m, alpha)


def all_dimseqs(m: int) -> Iterator[DimSeq]:
    """Every legal alpha with 1 <= ell < m, by ell then lexicographically."""
    from itertools import combinations

    for ell in range(1, m):
        for alpha in combinations(range(1, m + 1), ell):
            yield DimSeq(ell, m, alpha)


# -- closed forms ------------------------------------------------------------


def cells(ds: DimSeq) -> Iterator[tuple[int, ...]]:
    """Strictly increasing beta with beta_i <= alpha_i, lexicographically."""

    def extend(prefix: tuple[int, ...]):
        i = len(prefix)
        if i == ds.ell:
            yield prefix
            return
        lo = prefix[-1] + 1 if prefix else 1
        for b in range(lo, ds.alpha[i] + 1):
            yield from extend(prefix + (b,))

    return extend(())


def cell_dim(beta: tuple[int, ...]) -> int:
    return sum(b - i for i, b in enumerate(beta, start=1))


def n_alpha(ds: DimSeq, q: int) -> int:
    """Number of points of the Schubert variety: sum over cells of q**delta(beta)."""
    return sum(q ** cell_dim(beta) for beta in cells(ds))


def k_alpha(ds: DimSeq) -> int:
    """det( C(alpha_j - j + 1, i - j + 1) ), i, j = 1..ell."""
    ell = ds.ell
    M = [
        [binom(ds.alpha[j - 1] - j + 1, i - j + 1) for j in range(1, ell + 1)]
        for i in range(1, ell + 1)
    ]
    return int_det(M)


def m_alpha_formula(ds: DimSeq, q: int) -> int:
    """Closed-form count of codewords from Schubert decomposable elements.

    (q-1) q^P prod_{j=0}^{u} [alpha_{p_{j+1}} - alpha_{p_j} choose p_{j+1} - p_j]_q
    with P = sum_{j=1}^{u} p_j (alpha_{p_{j+1}} - alpha_{p_j} - p_{j+1} + p_j).
    """
    p = ds.p
    a = [ds.a(x) for x in p]
    prod = 1
    for j in range(ds.u + 1):
        prod *= gauss_binom(a[j + 1] - a[j], p[j + 1] - p[j], q)
    P = sum(p[j] * (a[j + 1] - a[j] - p[j + 1] + p[j]) for j in range(1, ds.u + 1))
    return (q - 1) * q**P * prod


def count_subspaces_formula(b: int, a: int, r: int, udim: int, q: int) -> int:
    """#{U in G_udim(B) : U ∩ A = R} for dim B = b, dim A = a, dim R = r."""
    if not (0 <= r <= a <= b and r <= udim <= b):
        raise InvalidInput(f"need 0 <= r <= a <= b and r <= u <= b, got b={b} a={a} r={r} u={udim}")
    return gauss_binom(b - a, udim - r, q) * q ** ((a - r) * (udim - r))


def count_subspaces_bruteforce(
    F: GF, b: int, a: int, r: int, udim: int, budget: int = DEFAULT_SUBSPACE_BUDGET
) -> int:
    """Enumerate G_udim(GF(q)^b) and count U with U ∩ A = R (coordinate A, R)."""
    if not (0 <= r <= a <= b and r <= udim <= b):
        raise InvalidInput(f"need 0 <= r <= a <= b and r <= u <= b, got b={b} a={a} r={r} u={udim}")
    A = coordinate_subspace(F, b, a)
    R = coordinate_subspace(F, b, r)
    return sum(1 for U in enumerate_subspaces(F, b, udim, budget) if intersect(U, A) == R)


def lambda_count_formula(ds: DimSeq, q: int) -> int:
    """|Lambda_alpha| by chaining the subspace count over the jump-spot flag members.

    Lambda_alpha is the set of (m-ell)-subspaces W with
    dim(W ∩ A_{p_i}) = alpha_{p_i} - p_i for i = 1..u+1.
    """
    p = list(ds.p[1:])
    a = [ds.a(x) for x in p] + [ds.m]
    r = list(ds.r) + [ds.m - ds.ell]
    total = gauss_binom(a[0], r[0], q)
    for j in range(len(p)):
        total *= count_subspaces_formula(a[j + 1], a[j], r[j], r[j + 1], q)
    return total


# -- points ------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class SchubertPoint:
    """One point of the Schubert variety with its canonical representative.

    Row i of ``matrix`` has its last nonzero entry, a 1, in column beta_i
    (1-based) and zeros in the columns beta_j for j < i.
    """

    beta: tuple[int, ...]
    matrix: np.ndarray
    field: GF

    @cached_property
    def pluck(self) -> Multivector:
        return pluecker(self.field, self.matrix)

    @cached_property
    def subspace(self) -> Subspace:
        return Subspace.span(self.field, self.matrix)

    def __repr__(self):
        return f"SchubertPoint(beta={self.beta}, rows={self.matrix.tolist()})"


def _cell_points(ds: DimSeq, F: GF, beta: tuple[int, ...]) -> Iterator[SchubertPoint]:
    ell, m = ds.ell, ds.m
    free = [
        (i, c - 1)
        for i, b in enumerate(beta)
        for c in range(1, b)
        if c not in beta[:i]
    ]
    base = np.zeros((ell, m), dtype=np.int64)
    for i, b in enumerate(beta):
        base[i, b - 1] = 1
    for values in product(range(F.q), repeat=len(free)):
        M = base.copy()
        for (i, c), v in zip(free, values):
            M[i, c] = v
        M.setflags(write=False)
        yield SchubertPoint(beta, M, F)


def enumerate_points(ds: DimSeq, F: GF, budget: int = DEFAULT_SUBSPACE_BUDGET) -> list[SchubertPoint]:
    """All points, cells in lexicographic beta order, free entries as an odometer."""
    n = n_alpha(ds, F.q)
    if n > budget:
        raise BudgetExceeded("Schubert points", n, budget)
    return [pt for beta in cells(ds) for pt in _cell_points(ds, F, beta)]


def is_member(L: Subspace, ds: DimSeq, jumps_only: bool = True) -> bool:
    """Whether L satisfies dim(L ∩ A_i) >= i for every i.

    With ``jumps_only`` the equivalent reduced test is used: L inside A_ell
    and the condition at the jump spots only.
    """
    if L.dim != ds.ell or L.ambient != ds.m:
        raise DimensionMismatch(f"expected an {ds.ell}-subspace of GF(q)^{ds.m}")
    if jumps_only:
        indices = list(ds.jumps) + [ds.ell]
    else:
        indices = range(1, ds.ell + 1)
    return all(meet_coordinate_dim(L, ds.a(i)) >= i for i in indices)


def is_schubert_decomposable(f: Multivector, ds: DimSeq) -> bool:
    """Decomposable, and dim(V_f ∩ A_{p_i}) = alpha_{p_i} - p_i at every jump spot."""
    if f.d != ds.m - ds.ell or f.m != ds.m:
        raise DimensionMismatch(f"expected degree {ds.m - ds.ell} in m={ds.m}")
    if f.is_zero():
        raise ZeroInput("zero multivector")
    if not is_decomposable(f):
        return False
    V = annihilator(f)
    return all(meet_coordinate_dim(V, ds.a(p)) == ds.a(p) - p for p in ds.jumps)


def in_lambda(W: Subspace, ds: DimSeq) -> bool:
    return W.dim == ds.m - ds.ell and all(
        meet_coordinate_dim(W, ds.a(p)) == ds.a(p) - p for p in ds.p[1:]
    )


def enumerate_lambda(ds: DimSeq, F: GF, budget: int = DEFAULT_SUBSPACE_BUDGET) -> list[Subspace]:
    """(m-ell)-subspaces W with dim(W ∩ A_{p_i}) = alpha_{p_i} - p_i, i = 1..u+1."""
    return [W for W in enumerate_subspaces(F, ds.m, ds.m - ds.ell, budget) if in_lambda(W, ds)]


def intersection_signature(W: Subspace, ds: DimSeq) -> tuple[Subspace, ...]:
    """(W ∩ A_{p_1}, ..., W ∩ A_{p_{u+1}})."""
    return tuple(intersect(W, ds.flag(W.field, p)) for p in ds.p[1:])
