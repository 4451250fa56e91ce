"""Exterior powers of V = GF(q)^m with the standard basis e_1, ..., e_m.

A :class:`Multivector` of degree d is a sparse map from ascending d-subsets
S of {1..m} to coefficients of e_S = e_{s1} ∧ ... ∧ e_{sd}.  Subsets are
1-based (matching e_1..e_m); coordinate vectors passed in as arrays are
0-based, so array index i is the coefficient of e_{i+1}.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Mapping

import numpy as np

from .errors import (
    AmbientMismatch,
    DegreeEqualsAmbient,
    DegreeMismatch,
    DegreeOverflow,
    InvalidInput,
    RankDeficient,
    ZeroDimension,
    ZeroInput,
)
from .gf import GF, field_from_order
from .linalg import Subspace, det, left_kernel

Subset = tuple[int, ...]


@lru_cache(maxsize=None)
def subsets(m: int, d: int) -> tuple[Subset, ...]:
    """All ascending d-subsets of {1..m} in lexicographic order."""
    return tuple(combinations(range(1, m + 1), d))


@lru_cache(maxsize=None)
def subset_index(m: int, d: int) -> dict[Subset, int]:
    return {S: i for i, S in enumerate(subsets(m, d))}


def merge_sign(S: Subset, T: Subset) -> int:
    """Sign of e_S ∧ e_T = ±e_{S∪T}: +1, -1, or 0 when S and T overlap.

    Counts pairs (s, t) with s > t by a single merge pass.
    """
    inversions = 0
    i = j = 0
    while i < len(S) and j < len(T):
        if S[i] == T[j]:
            return 0
        if S[i] < T[j]:
            i += 1
        else:
            inversions += len(S) - i
            j += 1
    return -1 if inversions % 2 else 1


def _signed(F: GF, sign: int, c: int) -> int:
    return c if sign > 0 else F.neg(c)


@dataclass(frozen=True, eq=False)
class Multivector:
    field: GF
    m: int
    d: int
    terms: tuple[tuple[Subset, int], ...]  # sorted, nonzero coefficients only

    @classmethod
    def from_coeffs(cls, F: GF, m: int, d: int, coeffs: Mapping[Subset, int]) -> "Multivector":
        if not 0 <= d <= m:
            raise DegreeOverflow(f"degree {d} outside [0, {m}]")
        terms = []
        for S, c in coeffs.items():
            S = tuple(S)
            if len(S) != d or list(S) != sorted(set(S)) or (S and not 1 <= S[0] <= S[-1] <= m):
                raise InvalidInput(f"{S} is not an ascending {d}-subset of 1..{m}")
            c = int(c)
            if not 0 <= c < F.q:
                raise InvalidInput(f"coefficient {c} is not an element of {F!r}")
            if c:
                terms.append((S, c))
        return cls(F, m, d, tuple(sorted(terms)))

    @classmethod
    def zero(cls, F: GF, m: int, d: int) -> "Multivector":
        return cls(F, m, d, ())

    @classmethod
    def basis(cls, F: GF, m: int, S: Iterable[int], c: int = 1) -> "Multivector":
        """c * e_S for an ascending subset S."""
        S = tuple(S)
        return cls.from_coeffs(F, m, len(S), {S: c})

    @classmethod
    def from_vector(cls, F: GF, v) -> "Multivector":
        v = np.asarray(v, dtype=np.int64)
        return cls(F, len(v), 1, tuple(((i + 1,), int(c)) for i, c in enumerate(v.tolist()) if c))

    @classmethod
    def from_dense(cls, F: GF, m: int, d: int, vec) -> "Multivector":
        vec = np.asarray(vec, dtype=np.int64)
        S_all = subsets(m, d)
        if vec.shape != (len(S_all),):
            raise DegreeMismatch(f"dense vector of length {vec.shape} for degree {d} in m={m}")
        return cls(F, m, d, tuple((S, int(c)) for S, c in zip(S_all, vec.tolist()) if c))

    @property
    def coeffs(self) -> dict[Subset, int]:
        return dict(self.terms)

    def coeff(self, S: Iterable[int]) -> int:
        return self.coeffs.get(tuple(S), 0)

    def to_dense(self) -> np.ndarray:
        idx = subset_index(self.m, self.d)
        out = np.zeros(len(idx), dtype=np.int64)
        for S, c in self.terms:
            out[idx[S]] = c
        return out

    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other: "Multivector") -> None:
        if self.m != other.m or self.field != other.field:
            raise AmbientMismatch("multivectors over different spaces")

    def __add__(self, other: "Multivector") -> "Multivector":
        self._check(other)
        if self.d != other.d:
            raise DegreeMismatch("adding multivectors of different degree")
        F = self.field
        acc = self.coeffs
        for S, c in other.terms:
            acc[S] = F.add(acc.get(S, 0), c)
        return Multivector(F, self.m, self.d, tuple(sorted((S, c) for S, c in acc.items() if c)))

    def __neg__(self) -> "Multivector":
        return self.scaled(self.field.neg(1))

    def __sub__(self, other: "Multivector") -> "Multivector":
        return self + (-other)

    def scaled(self, c: int) -> "Multivector":
        F = self.field
        if c == 0:
            return Multivector.zero(F, self.m, self.d)
        return Multivector(F, self.m, self.d, tuple((S, F.mul(c, a)) for S, a in self.terms))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Multivector)
            and self.field == other.field
            and (self.m, self.d, self.terms) == (other.m, other.d, other.terms)
        )

    def __hash__(self):
        return hash((self.field, self.m, self.d, self.terms))

    def __repr__(self):
        if not self.terms:
            return f"Multivector(0, m={self.m}, d={self.d})"
        body = " + ".join(f"{c}*e{''.join(map(str, S))}" if S else str(c) for S, c in self.terms)
        return f"Multivector({body}, m={self.m})"


def wedge(u: Multivector, v: Multivector) -> Multivector:
    u._check(v)
    if u.d + v.d > u.m:
        raise DegreeOverflow(f"degree {u.d}+{v.d} exceeds m={u.m}")
    F = u.field
    acc: dict[Subset, int] = {}
    for S, a in u.terms:
        for T, b in v.terms:
            s = merge_sign(S, T)
            if s:
                U = tuple(sorted(S + T))
                acc[U] = F.add(acc.get(U, 0), _signed(F, s, F.mul(a, b)))
    return Multivector(F, u.m, u.d + v.d, tuple(sorted((S, c) for S, c in acc.items() if c)))


def wedge_rows(F: GF, M) -> Multivector:
    """Wedge of the rows of M, top row first."""
    M = np.asarray(M, dtype=np.int64)
    if M.shape[0] == 0:
        return Multivector.basis(F, M.shape[1], ())
    out = Multivector.from_vector(F, M[0])
    for row in M[1:]:
        out = wedge(out, Multivector.from_vector(F, row))
    return out


def top_scalar(w: Multivector) -> int:
    """Coefficient of e_1 ∧ ... ∧ e_m (the identification of the top power with GF(q))."""
    if w.d != w.m:
        raise DegreeMismatch(f"top_scalar needs degree {w.m}, got {w.d}")
    return w.terms[0][1] if w.terms else 0


def wedge_matrix(f: Multivector) -> np.ndarray:
    """Matrix (m x C(m, d+1)) whose row i is f ∧ e_{i+1}."""
    F, m, d = f.field, f.m, f.d
    idx = subset_index(m, d + 1)
    A = np.zeros((m, len(idx)), dtype=np.int64)
    for i in range(1, m + 1):
        for S, c in f.terms:
            s = merge_sign(S, (i,))
            if s:
                U = tuple(sorted(S + (i,)))
                A[i - 1, idx[U]] = F.add(int(A[i - 1, idx[U]]), _signed(F, s, c))
    return A


def annihilator(f: Multivector) -> Subspace:
    """V_f = {x in V : f ∧ x = 0}."""
    F, m = f.field, f.m
    if f.d >= m:
        return Subspace.full(F, m)
    return left_kernel(F, wedge_matrix(f))


def is_decomposable(f: Multivector) -> bool:
    """A nonzero f of degree d < m is a wedge of vectors iff dim V_f = d."""
    if f.d >= f.m:
        raise DegreeEqualsAmbient(f"degree {f.d} must be below m={f.m}")
    if f.is_zero():
        raise ZeroInput("zero multivector")
    return annihilator(f).dim == f.d


def pluecker(F: GF, M) -> Multivector:
    """Maximal minors of a full-rank l x m matrix as a degree-l multivector."""
    M = np.asarray(M, dtype=np.int64)
    ell, m = M.shape
    terms = []
    for S in subsets(m, ell):
        c = det(F, M[:, [s - 1 for s in S]])
        if c:
            terms.append((S, c))
    if not terms:
        raise RankDeficient(f"matrix of shape {M.shape} has rank below {ell}")
    return Multivector(F, m, ell, tuple(terms))


def basis_multivector(W: Subspace) -> Multivector:
    """Wedge of the canonical basis rows of W (a decomposable element with V_f = W)."""
    if W.dim == 0:
        raise ZeroDimension("zero subspace has no basis multivector")
    return pluecker(W.field, W.matrix)


# -- text format -------------------------------------------------------------


def write_multivector(f: Multivector) -> str:
    """``m d`` header, then one ``s1 .. sd coeff`` line per nonzero term."""
    lines = [f"{f.m} {f.d}"]
    lines.extend(" ".join(str(s) for s in S + (c,)) for S, c in f.terms)
    return "\n".join(lines) + "\n"


def read_multivector(text: str, F: GF | int) -> Multivector:
    if isinstance(F, int):
        F = field_from_order(F)
    lines = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    try:
        m, d = (int(x) for x in lines[0])
        coeffs: dict[Subset, int] = {}
        for parts in lines[1:]:
            vals = [int(x) for x in parts]
            if len(vals) != d + 1:
                raise InvalidInput(f"expected {d} indices and a coefficient, got {parts}")
            S = tuple(vals[:d])
            coeffs[S] = F.add(coeffs.get(S, 0), vals[d])
    except (ValueError, IndexError):
        raise InvalidInput("malformed multivector text") from None
    return Multivector.from_coeffs(F, m, d, coeffs)
