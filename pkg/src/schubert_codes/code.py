"""Schubert codes: construction, exhaustive spectra and minimum-weight analysis.

Coordinates of a code are the Schubert points in the order produced by
:func:`~schubert_codes.schubert.enumerate_points` (cells by beta, then the
free-entry odometer).  The representative of each point is the wedge of the
rows of its canonical matrix taken top to bottom; any other choice of
representatives only rescales coordinates, so weights are unaffected.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import permutations, product
from typing import Iterator

import numpy as np

from .errors import (
    BudgetExceeded,
    DegreeMismatch,
    EllTooSmall,
    InvalidInput,
    MinimumDistanceMismatch,
    RankMismatch,
)
from .exterior import Multivector, basis_multivector, merge_sign, subset_index, subsets, wedge
from .gf import GF, parse_q
from .linalg import (
    DEFAULT_SUBSPACE_BUDGET,
    Subspace,
    enumerate_subspaces,
    intersect,
    left_kernel,
    rank,
    read_matrix,
    rref,
    write_matrix,
)
from .schubert import (
    DimSeq,
    SchubertPoint,
    enumerate_lambda,
    enumerate_points,
    in_lambda,
    is_schubert_decomposable,
    k_alpha,
)

DEFAULT_MESSAGE_BUDGET = 2**26
_BLOCK_ENTRIES = 2**22


@dataclass(frozen=True)
class Codeword:
    values: tuple[int, ...]

    @property
    def weight(self) -> int:
        return sum(1 for v in self.values if v)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(i for i, v in enumerate(self.values) if v)

    def normalized(self, F: GF) -> tuple[int, ...]:
        """Scalar multiple whose first nonzero coordinate is 1."""
        lead = next((v for v in self.values if v), 0)
        if lead in (0, 1):
            return self.values
        inv = F.inv(lead)
        return tuple(F.mul(inv, v) for v in self.values)

    def __len__(self):
        return len(self.values)


def _batched_minors(F: GF, mats: np.ndarray, ell: int, m: int) -> np.ndarray:
    """All ell x ell minors of a stack of ell x m matrices, shape (n, C(m, ell))."""
    n = mats.shape[0]
    cols = subsets(m, ell)
    out = np.zeros((n, len(cols)), dtype=np.int64)
    perms = [(p, _perm_sign(p)) for p in permutations(range(ell))]
    for s_idx, S in enumerate(cols):
        acc = np.zeros(n, dtype=np.int64)
        for perm, sign in perms:
            term = np.ones(n, dtype=np.int64)
            for i in range(ell):
                term = F.mul_t[term, mats[:, i, S[perm[i]] - 1]]
            if sign < 0:
                term = F.neg_t[term]
            acc = F.add_t[acc, term]
        out[:, s_idx] = acc
    return out


def _perm_sign(p: tuple[int, ...]) -> int:
    inv = sum(1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j])
    return -1 if inv % 2 else 1


class SchubertCode:
    """The code C_alpha(ell, m) over GF(q), built by :func:`build_code`.

    ``eval_matrix`` has one row per (m-ell)-subset T of {1..m} (lexicographic),
    row T being the codeword of e_T.  ``gen_matrix`` is its reduced row
    echelon basis, and ``gen_preimage[i]`` holds coefficients of an element of
    the (m-ell)-th exterior power whose codeword is ``gen_matrix[i]``.
    """

    def __init__(self, ds: DimSeq, F: GF, points, eval_matrix, gen_matrix, gen_preimage, kernel):
        self.ds = ds
        self.field = F
        self.points: list[SchubertPoint] = points
        self.eval_matrix: np.ndarray = eval_matrix
        self.gen_matrix: np.ndarray = gen_matrix
        self.gen_preimage: np.ndarray = gen_preimage
        self.kernel: Subspace = kernel
        self.row_subsets = subsets(ds.m, ds.m - ds.ell)
        for a in (eval_matrix, gen_matrix, gen_preimage):
            a.setflags(write=False)
        self._cache: dict = {}

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def k(self) -> int:
        return self.gen_matrix.shape[0]

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def delta(self) -> int:
        return self.ds.delta

    @property
    def designed_distance(self) -> int:
        return self.q**self.ds.delta

    def __repr__(self):
        return f"SchubertCode(q={self.q}, m={self.ds.m}, alpha={self.ds.alpha}, n={self.n}, k={self.k})"

    def child(self, budget: int = DEFAULT_SUBSPACE_BUDGET) -> "SchubertCode":
        """C_{alpha'}(ell-1, m) for the truncated flag."""
        if "child" not in self._cache:
            if self.ds.ell < 2:
                raise EllTooSmall("the truncated code needs ell > 1")
            self._cache["child"] = build_code(self.ds.truncated(), self.field, budget)
        return self._cache["child"]

    def encode_dense(self, fvec) -> np.ndarray:
        return self.field.matmul(np.asarray(fvec, dtype=np.int64), self.eval_matrix)

    def message_preimage(self, msg) -> Multivector:
        """An element f with c_f = msg @ gen_matrix."""
        fvec = self.field.matmul(np.asarray(msg, dtype=np.int64), self.gen_preimage)
        return Multivector.from_dense(self.field, self.ds.m, self.ds.m - self.ds.ell, fvec)

    def message_digits(self, index: int) -> np.ndarray:
        q, k = self.q, self.k
        return np.array([(index // q ** (k - 1 - i)) % q for i in range(k)], dtype=np.int64)

    def support_points(self, word: Codeword) -> list[SchubertPoint]:
        """W(f): the points where the codeword does not vanish."""
        return [self.points[i] for i in word.support]


def build_code(ds: DimSeq, F: GF, budget: int = DEFAULT_SUBSPACE_BUDGET) -> SchubertCode:
    """Enumerate the points, evaluate every e_T, and reduce to a generator matrix."""
    points = enumerate_points(ds, F, budget)
    n = len(points)
    ell, m = ds.ell, ds.m
    rows_T = subsets(m, m - ell)
    N = len(rows_T)
    if N * n > budget:
        raise BudgetExceeded("evaluations", N * n, budget)

    mats = np.stack([pt.matrix for pt in points])
    minors = _batched_minors(F, mats, ell, m)  # (n, C(m, ell))
    l_index = subset_index(m, ell)
    full = set(range(1, m + 1))
    E = np.zeros((N, n), dtype=np.int64)
    for t, T in enumerate(rows_T):
        S = tuple(sorted(full - set(T)))
        col = minors[:, l_index[S]]
        # e_T ∧ e_S = sign * e_{1..m}
        E[t] = col if merge_sign(T, S) > 0 else F.neg_t[col]

    if (E != 0).sum(axis=0).min(initial=1) == 0:
        raise RankMismatch("evaluation matrix has a zero column")
    aug = np.hstack([E, np.eye(N, dtype=np.int64)])
    R, r, _ = rref(F, aug, ncols=n)
    expected = k_alpha(ds)
    if r != expected:
        raise RankMismatch(f"rank of evaluation matrix is {r}, determinant formula gives {expected}")
    kernel = Subspace.span(F, R[r:, n:], N)
    if kernel.dim != N - r:
        raise RankMismatch("kernel of the evaluation map has the wrong dimension")
    return SchubertCode(ds, F, points, E, R[:r, :n].copy(), R[:r, n:].copy(), kernel)


def encode(code: SchubertCode, f: Multivector) -> Codeword:
    """c_f = (f ∧ P_1, ..., f ∧ P_n)."""
    ds = code.ds
    if f.d != ds.m - ds.ell or f.m != ds.m:
        raise DegreeMismatch(f"expected degree {ds.m - ds.ell} in m={ds.m}, got degree {f.d} in m={f.m}")
    return Codeword(tuple(code.encode_dense(f.to_dense()).tolist()))


def weakly_equivalent(c1: SchubertCode, c2: SchubertCode, budget: int = DEFAULT_MESSAGE_BUDGET) -> bool:
    """Same length, dimension and weight distribution.

    Necessary for monomial equivalence, not sufficient; no permutation
    search is attempted.
    """
    return (
        c1.field == c2.field
        and (c1.n, c1.k) == (c2.n, c2.k)
        and weight_distribution(c1, budget) == weight_distribution(c2, budget)
    )


# -- exhaustive message scan -------------------------------------------------


@dataclass
class _Scan:
    spectrum: dict[int, int]
    d: int | None
    min_messages: list[int]
    min_words: np.ndarray


def _all_combinations(F: GF, rows: np.ndarray) -> np.ndarray:
    """Every combination of ``rows``, indexed lexicographically by coefficients."""
    table = np.zeros((1, rows.shape[1]), dtype=np.int64)
    for row in rows:
        scaled = F.mul_t[np.arange(F.q)[:, None], row[None, :]]
        table = F.add_t[np.repeat(table, F.q, axis=0), np.tile(scaled, (table.shape[0], 1))]
    return table


def iter_codeword_blocks(code: SchubertCode, budget: int = DEFAULT_MESSAGE_BUDGET) -> Iterator[tuple[int, np.ndarray]]:
    """Yield ``(first_message_index, words)`` blocks covering all q**k messages.

    Message index i has base-q digits (most significant first) equal to the
    coefficients on the rows of ``gen_matrix``.
    """
    F, k, n = code.field, code.k, code.n
    total = F.q**k
    if total > budget:
        raise BudgetExceeded("messages", total, budget)
    k_low = 0
    while k_low < k and F.q ** (k_low + 1) * max(n, 1) <= _BLOCK_ENTRIES:
        k_low += 1
    k_low = max(k_low, min(k, 1))
    G = code.gen_matrix
    low = _all_combinations(F, G[k - k_low :])
    high_rows = G[: k - k_low]
    block = low.shape[0]
    for hi_index, hi_msg in enumerate(product(range(F.q), repeat=k - k_low)):
        if hi_index == 0:
            words = low
        else:
            h = F.matmul(np.array(hi_msg, dtype=np.int64), high_rows)
            words = F.add_t[h[None, :], low]
        yield hi_index * block, words


def _scan(code: SchubertCode, budget: int) -> _Scan:
    if "scan" in code._cache:
        return code._cache["scan"]
    n = code.n
    hist = np.zeros(n + 1, dtype=np.int64)
    best = n + 1
    msgs: list[np.ndarray] = []
    words: list[np.ndarray] = []
    for start, block in iter_codeword_blocks(code, budget):
        wts = np.count_nonzero(block, axis=1)
        hist += np.bincount(wts, minlength=n + 1)
        nonzero = wts > 0
        if not nonzero.any():
            continue
        bmin = int(wts[nonzero].min())
        if bmin < best:
            best, msgs, words = bmin, [], []
        if bmin == best:
            idx = np.flatnonzero(wts == best)
            msgs.append(idx + start)
            words.append(block[idx])
    spectrum = {int(w): int(c) for w, c in enumerate(hist) if c}
    d = best if best <= n else None
    result = _Scan(
        spectrum,
        d,
        np.concatenate(msgs).tolist() if msgs else [],
        np.vstack(words) if words else np.zeros((0, n), dtype=np.int64),
    )
    code._cache["scan"] = result
    return result


def weight_distribution(code: SchubertCode, budget: int = DEFAULT_MESSAGE_BUDGET) -> dict[int, int]:
    """Exhaustive weight distribution {weight: count}, zero word included."""
    return dict(_scan(code, budget).spectrum)


def min_distance(code: SchubertCode, budget: int = DEFAULT_MESSAGE_BUDGET, strict: bool = True) -> tuple[int, Codeword]:
    """Minimum nonzero weight with the first codeword attaining it.

    With ``strict`` (default) a value other than q**delta raises
    :class:`MinimumDistanceMismatch`.
    """
    s = _scan(code, budget)
    if s.d is None:
        raise InvalidInput("code has no nonzero codewords")
    if strict and s.d != code.designed_distance:
        raise MinimumDistanceMismatch(
            f"{code!r}: exhaustive minimum distance {s.d} != q^delta = {code.designed_distance}"
        )
    return s.d, Codeword(tuple(s.min_words[0].tolist()))


@dataclass
class Census:
    """All minimum-weight codewords, in message order."""

    d: int
    n: int
    words: list[Codeword]
    messages: list[int]
    projective_count: int

    @property
    def count(self) -> int:
        return len(self.words)

    @property
    def m_alpha(self) -> int:
        """Largest number of points on a hyperplane section: n - d."""
        return self.n - self.d

    def as_set(self) -> set[Codeword]:
        return set(self.words)


def min_weight_census(code: SchubertCode, budget: int = DEFAULT_MESSAGE_BUDGET) -> Census:
    s = _scan(code, budget)
    if s.d is None:
        raise InvalidInput("code has no nonzero codewords")
    words = [Codeword(tuple(w)) for w in s.min_words.tolist()]
    projective = len({w.normalized(code.field) for w in words})
    return Census(s.d, code.n, words, list(s.min_messages), projective)


def census_preimage(code: SchubertCode, census: Census, i: int) -> Multivector:
    return code.message_preimage(code.message_digits(census.messages[i]))


def min_word_span_rank(code: SchubertCode, census: Census | list[Codeword]) -> int:
    """Rank of the span of the given codewords (the census by default)."""
    words = census.words if isinstance(census, Census) else list(census)
    if not words:
        return 0
    return rank(code.field, np.array([w.values for w in words], dtype=np.int64))


# -- Schubert decomposable codewords -----------------------------------------


@dataclass
class SAlpha:
    """Codewords of Schubert decomposable elements, deduplicated exactly.

    Every nonzero scalar multiple of each basis multivector is included, so
    ``words`` is closed under scaling.
    """

    words: list[Codeword]
    lambda_size: int
    weights: set[int]
    source: dict[Codeword, Subspace] = field(repr=False)

    @property
    def size(self) -> int:
        return len(self.words)

    def as_set(self) -> set[Codeword]:
        return set(self.words)


def schubert_decomposable_codewords(code: SchubertCode, budget: int = DEFAULT_SUBSPACE_BUDGET) -> SAlpha:
    if "salpha" in code._cache:
        return code._cache["salpha"]
    F = code.field
    lam = enumerate_lambda(code.ds, F, budget)
    source: dict[Codeword, Subspace] = {}
    for W in lam:
        base = code.encode_dense(basis_multivector(W).to_dense())
        for c in F.nonzero():
            w = Codeword(tuple(F.mul_t[c, base].tolist()))
            source.setdefault(w, W)
    words = sorted(source, key=lambda w: w.values)
    result = SAlpha(words, len(lam), {w.weight for w in words}, source)
    code._cache["salpha"] = result
    return result


@dataclass
class WordReport:
    word: Codeword
    in_s_alpha: bool
    preimage: Subspace | None  # W with c_{basis_multivector(W)} proportional to word
    preimages_schubert_decomposable: bool | None


@dataclass
class Classification:
    entries: list[WordReport]
    min_words_are_s_alpha: bool
    census_size: int
    s_alpha_size: int
    s_alpha_subset_of_census: bool

    @property
    def all_have_decomposable_preimage(self) -> bool:
        return all(e.preimage is not None for e in self.entries)

    @property
    def decomposable_preimages_are_schubert(self) -> bool:
        return all(e.preimages_schubert_decomposable is not False for e in self.entries)


def decomposable_projective_images(code: SchubertCode, budget: int = DEFAULT_SUBSPACE_BUDGET) -> dict[tuple, list[Subspace]]:
    """Normalized codeword -> every W in G_{m-ell}(V) whose wedge encodes to it.

    Subspaces in Lambda_alpha are listed before the others.
    """
    if "decomp" in code._cache:
        return code._cache["decomp"]
    F, ds = code.field, code.ds
    lam, rest = [], []
    for W in enumerate_subspaces(F, ds.m, ds.m - ds.ell, budget):
        (lam if in_lambda(W, ds) else rest).append(W)
    images: dict[tuple, list[Subspace]] = {}
    for W in lam + rest:
        w = Codeword(tuple(code.encode_dense(basis_multivector(W).to_dense()).tolist()))
        if w.weight:
            images.setdefault(w.normalized(F), []).append(W)
    code._cache["decomp"] = images
    return images


def classify_min_words(
    code: SchubertCode,
    budget: int = DEFAULT_MESSAGE_BUDGET,
    subspace_budget: int = DEFAULT_SUBSPACE_BUDGET,
) -> Classification:
    """Compare the census with S_alpha and look for decomposable preimages."""
    F, ds = code.field, code.ds
    census = min_weight_census(code, budget)
    sa = schubert_decomposable_codewords(code, subspace_budget)
    sset = sa.as_set()
    images = decomposable_projective_images(code, subspace_budget)
    entries = []
    for w in census.words:
        pre = images.get(w.normalized(F), [])
        sd = None
        if pre:
            sd = all(is_schubert_decomposable(basis_multivector(W), ds) for W in pre)
        entries.append(WordReport(w, w in sset, pre[0] if pre else None, sd))
    cset = census.as_set()
    return Classification(entries, cset == sset, len(cset), len(sset), sset <= cset)


# -- E / F analysis ---------------------------------------------------------


@dataclass
class EFReport:
    """E = {x in A_ell : c_{f∧x} = 0 in the truncated code}, F = A_ell minus E."""

    E: Subspace
    t: int
    t_prime: int
    size_F: int
    child_words: np.ndarray  # row i: codeword of f ∧ e_{i+1} in the truncated code

    def F_vectors(self, field: GF) -> Iterator[np.ndarray]:
        """x in F, as coefficient vectors on e_1..e_{alpha_ell}."""
        a_ell = self.child_words.shape[0]
        for coeffs in product(range(field.q), repeat=a_ell):
            x = np.zeros(self.E.ambient, dtype=np.int64)
            x[:a_ell] = coeffs
            if not self.E.contains(x):
                yield x[:a_ell]


def compute_EF(code: SchubertCode, f: Multivector, budget: int = DEFAULT_SUBSPACE_BUDGET) -> EFReport:
    ds, F = code.ds, code.field
    if ds.ell < 2:
        raise EllTooSmall("E and F are defined for ell > 1")
    if f.d != ds.m - ds.ell:
        raise DegreeMismatch(f"expected degree {ds.m - ds.ell}")
    child = code.child(budget)
    a_ell, a_prev = ds.a(ds.ell), ds.a(ds.ell - 1)
    rows = []
    for i in range(a_ell):
        x = np.zeros(ds.m, dtype=np.int64)
        x[i] = 1
        g = wedge(f, Multivector.from_vector(F, x))
        rows.append(child.encode_dense(g.to_dense()))
    C = np.array(rows, dtype=np.int64).reshape(a_ell, child.n)
    K = left_kernel(F, C)  # coefficient vectors in GF(q)^{alpha_ell}
    basis = np.zeros((K.dim, ds.m), dtype=np.int64)
    basis[:, :a_ell] = K.matrix
    E = Subspace.span(F, basis, ds.m)
    t = a_ell - E.dim
    t_prime = a_prev - intersect(E, ds.flag(F, ds.ell - 1)).dim
    size_F = F.q**a_ell - F.q**E.dim
    return EFReport(E, t, t_prime, size_F, C)


# -- text round trip ---------------------------------------------------------

_HEADER = re.compile(r"schubert-code q=(\S+) ell=(\d+) m=(\d+) alpha=([\d,]+)")


def _q_label(F: GF) -> str:
    return str(F.p) if F.e == 1 else f"{F.p}^{F.e}"


def code_header(code: SchubertCode) -> list[str]:
    ds = code.ds
    return [
        f"schubert-code q={_q_label(code.field)} ell={ds.ell} m={ds.m} alpha={ds.label()}",
        "point order: cells by beta ascending, free entries row-major odometer",
    ]


def code_to_text(code: SchubertCode) -> str:
    """Generator matrix in the matrix text format, identified by ``#`` header lines."""
    return write_matrix(code.field, code.gen_matrix, header=code_header(code))


def code_from_text(text: str, budget: int = DEFAULT_SUBSPACE_BUDGET) -> SchubertCode:
    """Rebuild a code from :func:`code_to_text` output and check the matrix matches."""
    match = _HEADER.search(text)
    if not match:
        raise InvalidInput("missing schubert-code header line")
    F = parse_q(match.group(1))
    ds = DimSeq(int(match.group(2)), int(match.group(3)), tuple(int(a) for a in match.group(4).split(",")))
    Fm, M = read_matrix(text)
    if Fm != F:
        raise InvalidInput("field in matrix header disagrees with code header")
    code = build_code(ds, F, budget)
    if M.shape != code.gen_matrix.shape or not np.array_equal(M, code.gen_matrix):
        raise InvalidInput("generator matrix does not match the rebuilt code")
    return code
