"""Dense exact linear algebra over GF(q) and subspaces in canonical form.

Matrices are 2-D ``numpy.int64`` arrays of element indices.  A
:class:`Subspace` stores its basis in reduced row echelon form with leftmost
pivots, so equality and hashing are plain tuple comparisons.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable, Iterator

import numpy as np

from .counting import gauss_binom
from .errors import AmbientMismatch, BudgetExceeded, InvalidInput
from .gf import GF, field_from_order

DEFAULT_SUBSPACE_BUDGET = 10**7


def as_matrix(M) -> np.ndarray:
    M = np.asarray(M, dtype=np.int64)
    return M[None, :] if M.ndim == 1 else M


def rref(F: GF, M, ncols: int | None = None) -> tuple[np.ndarray, int, list[int]]:
    """Reduced row echelon form with leftmost pivots.

    Only the first ``ncols`` columns are used for pivoting (all by default);
    row operations are applied to the full rows, which lets callers track a
    transform by appending an identity block.  Returns ``(R, rank, pivots)``
    with zero rows at the bottom of ``R``.
    """
    R = np.array(M, dtype=np.int64, copy=True)
    if R.ndim != 2:
        raise InvalidInput("rref expects a 2-D matrix")
    nrows, cols = R.shape
    if ncols is None:
        ncols = cols
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(R[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            R[[r, i]] = R[[i, r]]
        lead = int(R[r, c])
        if lead != 1:
            R[r] = F.mul_t[F.inv(lead), R[r]]
        col = R[:, c].copy()
        col[r] = 0
        others = np.flatnonzero(col)
        if others.size:
            factors = F.neg_t[col[others]]
            R[others] = F.add_t[R[others], F.mul_t[factors[:, None], R[r][None, :]]]
        pivots.append(c)
        r += 1
    return R, r, pivots


def rank(F: GF, M) -> int:
    M = as_matrix(M)
    if M.size == 0:
        return 0
    return rref(F, M)[1]


def det(F: GF, M) -> int:
    """Determinant of a square matrix by elimination."""
    A = np.array(M, dtype=np.int64, copy=True)
    n = A.shape[0]
    if A.shape != (n, n):
        raise InvalidInput("determinant of a non-square matrix")
    result = 1
    for c in range(n):
        nz = np.flatnonzero(A[c:, c])
        if nz.size == 0:
            return 0
        i = c + int(nz[0])
        if i != c:
            A[[c, i]] = A[[i, c]]
            result = F.neg(result)
        piv = int(A[c, c])
        result = F.mul(result, piv)
        inv = F.inv(piv)
        below = np.flatnonzero(A[c + 1 :, c]) + c + 1
        if below.size:
            factors = F.neg_t[F.mul_t[A[below, c], inv]]
            A[below] = F.add_t[A[below], F.mul_t[factors[:, None], A[c][None, :]]]
    return result


@dataclass(frozen=True)
class Subspace:
    """A subspace of GF(q)^ambient held by its canonical basis.

    Build with :meth:`span`; the rows are kept in reduced echelon form with
    strictly increasing pivots, so ``==`` is subspace equality.
    """

    field: GF
    ambient: int
    rows: tuple[tuple[int, ...], ...]

    @classmethod
    def span(cls, F: GF, vectors, ambient: int | None = None) -> "Subspace":
        M = np.asarray(vectors, dtype=np.int64)
        if M.ndim == 1:
            M = M.reshape(0, ambient) if M.size == 0 else M[None, :]
        if ambient is None:
            ambient = M.shape[1]
        elif M.shape[1] != ambient:
            raise AmbientMismatch(f"vectors of length {M.shape[1]} in ambient {ambient}")
        if M.shape[0] == 0:
            return cls(F, ambient, ())
        R, r, _ = rref(F, M)
        return cls(F, ambient, tuple(tuple(row) for row in R[:r].tolist()))

    @classmethod
    def zero(cls, F: GF, ambient: int) -> "Subspace":
        return cls(F, ambient, ())

    @classmethod
    def full(cls, F: GF, ambient: int) -> "Subspace":
        return coordinate_subspace(F, ambient, ambient)

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def matrix(self) -> np.ndarray:
        return np.array(self.rows, dtype=np.int64).reshape(self.dim, self.ambient)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(j for j, x in enumerate(row) if x) for row in self.rows)

    def contains(self, v) -> bool:
        v = np.asarray(v, dtype=np.int64)
        if v.shape != (self.ambient,):
            raise AmbientMismatch("vector length differs from ambient dimension")
        if not v.any():
            return True
        # reduce v against the canonical basis
        w = v.copy()
        for row, p in zip(self.rows, self.pivots):
            c = int(w[p])
            if c:
                w = self.field.vsub(w, self.field.scale(c, np.asarray(row)))
        return not w.any()

    def issubspace(self, other: "Subspace") -> bool:
        _check_same(self, other)
        return all(other.contains(row) for row in self.rows)

    def vectors(self) -> Iterator[tuple[int, ...]]:
        """Every element of the subspace (q**dim of them)."""
        F = self.field
        M = self.matrix
        for coeffs in product(range(F.q), repeat=self.dim):
            if self.dim == 0:
                yield (0,) * self.ambient
            else:
                yield tuple(F.matmul(np.asarray(coeffs)[None, :], M)[0].tolist())

    def __len__(self) -> int:
        return self.field.q**self.dim

    def sort_key(self):
        return (self.dim, self.rows)

    def __repr__(self):
        return f"Subspace(q={self.field.q}, ambient={self.ambient}, rows={list(self.rows)})"


def _check_same(A: Subspace, B: Subspace) -> None:
    if A.ambient != B.ambient or A.field != B.field:
        raise AmbientMismatch(f"ambient {A.ambient} over {A.field!r} vs {B.ambient} over {B.field!r}")


def coordinate_subspace(F: GF, m: int, k: int) -> Subspace:
    """Span of the first k standard basis vectors of GF(q)^m."""
    k = max(0, min(k, m))
    eye = np.eye(m, dtype=np.int64)[:k]
    return Subspace(F, m, tuple(tuple(r) for r in eye.tolist()))


def kernel_basis(F: GF, M) -> Subspace:
    """Right kernel ``{x : M x = 0}`` as a subspace of GF(q)^cols."""
    M = as_matrix(M)
    cols = M.shape[1]
    if M.shape[0] == 0:
        return Subspace.full(F, cols)
    R, r, pivots = rref(F, M)
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = []
    for f in free:
        x = np.zeros(cols, dtype=np.int64)
        x[f] = 1
        for i, p in enumerate(pivots):
            x[p] = F.neg(int(R[i, f]))
        basis.append(x)
    return Subspace.span(F, np.array(basis, dtype=np.int64).reshape(len(basis), cols), cols)


def left_kernel(F: GF, M) -> Subspace:
    """``{y : y M = 0}``."""
    return kernel_basis(F, as_matrix(M).T)


def subspace_sum(A: Subspace, B: Subspace) -> Subspace:
    _check_same(A, B)
    return Subspace.span(A.field, list(A.rows) + list(B.rows), A.ambient)


def intersect(A: Subspace, B: Subspace) -> Subspace:
    """A ∩ B, from the relations between the two bases."""
    _check_same(A, B)
    F = A.field
    if A.dim == 0 or B.dim == 0:
        return Subspace.zero(F, A.ambient)
    stacked = np.vstack([A.matrix, B.matrix])
    K = left_kernel(F, stacked)
    if K.dim == 0:
        return Subspace.zero(F, A.ambient)
    coeffs = K.matrix[:, : A.dim]
    return Subspace.span(F, F.matmul(coeffs, A.matrix), A.ambient)


def meet_coordinate_dim(S: Subspace, k: int) -> int:
    """dim(S ∩ <e_1..e_k>), via the rank of the trailing coordinates."""
    if k >= S.ambient:
        return S.dim
    if k <= 0 or S.dim == 0:
        return 0
    return S.dim - rank(S.field, S.matrix[:, k:])


def enumerate_subspaces(
    F: GF, m: int, k: int, budget: int = DEFAULT_SUBSPACE_BUDGET
) -> Iterator[Subspace]:
    """Every k-dimensional subspace of GF(q)^m exactly once.

    Order: pivot column sets lexicographically, then the free entries
    (row-major, last entry fastest) as an odometer over element indices.
    """
    if not 0 <= k <= m:
        raise InvalidInput(f"need 0 <= k <= m, got k={k}, m={m}")
    total = gauss_binom(m, k, F.q)
    if total > budget:
        raise BudgetExceeded("subspaces", total, budget)
    return _enumerate_subspaces(F, m, k)


def _enumerate_subspaces(F: GF, m: int, k: int) -> Iterator[Subspace]:
    if k == 0:
        yield Subspace.zero(F, m)
        return
    for pivots in combinations(range(m), k):
        pset = set(pivots)
        free = [(i, c) for i, p in enumerate(pivots) for c in range(p + 1, m) if c not in pset]
        base = np.zeros((k, m), dtype=np.int64)
        for i, p in enumerate(pivots):
            base[i, p] = 1
        for values in product(range(F.q), repeat=len(free)):
            M = base.copy()
            for (i, c), v in zip(free, values):
                M[i, c] = v
            yield Subspace(F, m, tuple(tuple(r) for r in M.tolist()))


def random_matrix(F: GF, rows: int, cols: int, rng: np.random.Generator) -> np.ndarray:
    return rng.integers(0, F.q, size=(rows, cols), dtype=np.int64)


def random_full_rank(F: GF, rows: int, cols: int, rng: np.random.Generator) -> np.ndarray:
    if rows > cols:
        raise InvalidInput("more rows than columns cannot be full rank")
    while True:
        M = random_matrix(F, rows, cols, rng)
        if rank(F, M) == rows:
            return M


def random_subspace(F: GF, m: int, k: int, rng: np.random.Generator) -> Subspace:
    if k == 0:
        return Subspace.zero(F, m)
    return Subspace.span(F, random_full_rank(F, k, m, rng), m)


# -- text format -------------------------------------------------------------


def write_matrix(F: GF, M, header: Iterable[str] = ()) -> str:
    """``rows cols q`` then one line of space-separated indices per row.

    Optional ``header`` lines are emitted first as ``#`` comments.
    """
    M = as_matrix(M)
    lines = [f"# {h}" for h in header]
    lines.append(f"{M.shape[0]} {M.shape[1]} {F.q}")
    lines.extend(" ".join(str(x) for x in row) for row in M.tolist())
    return "\n".join(lines) + "\n"


def read_matrix(text: str) -> tuple[GF, np.ndarray]:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise InvalidInput("empty matrix text")
    try:
        rows, cols, q = (int(x) for x in lines[0].split())
        data = [[int(x) for x in ln.split()] for ln in lines[1 : 1 + rows]]
    except ValueError:
        raise InvalidInput("malformed matrix text") from None
    if len(data) != rows or any(len(r) != cols for r in data):
        raise InvalidInput(f"expected a {rows}x{cols} matrix")
    F = field_from_order(q)
    M = np.array(data, dtype=np.int64).reshape(rows, cols)
    if M.size and (M.min() < 0 or M.max() >= q):
        raise InvalidInput(f"entries must lie in [0, {q})")
    return F, M
