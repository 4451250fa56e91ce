"""Brute-force reference computations written without the package (prime q only).

Everything here works on plain Python lists with arithmetic mod p, so the
tests can compare the vectorised implementation with an independent one.
"""

from __future__ import annotations

from itertools import combinations, product


def det_mod(M, p):
    A = [list(r) for r in M]
    n = len(A)
    result = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if A[i][c] % p), None)
        if piv is None:
            return 0
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            result = -result
        result = result * A[c][c] % p
        inv = pow(A[c][c], p - 2, p)
        for i in range(c + 1, n):
            f = A[i][c] * inv % p
            A[i] = [(a - f * b) % p for a, b in zip(A[i], A[c])]
    return result % p


def rank_mod(M, p):
    A = [list(r) for r in M]
    if not A:
        return 0
    rows, cols = len(A), len(A[0])
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if A[i][c] % p), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = pow(A[r][c], p - 2, p)
        A[r] = [x * inv % p for x in A[r]]
        for i in range(rows):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [(a - f * b) % p for a, b in zip(A[i], A[r])]
        r += 1
        if r == rows:
            break
    return r


def all_subspaces(m, k, p):
    """Every k-subspace of GF(p)^m as a canonical tuple of RREF rows."""
    out = []
    for piv in combinations(range(m), k):
        free = [(i, c) for i, pc in enumerate(piv) for c in range(pc + 1, m) if c not in piv]
        for vals in product(range(p), repeat=len(free)):
            M = [[0] * m for _ in range(k)]
            for i, pc in enumerate(piv):
                M[i][pc] = 1
            for (i, c), v in zip(free, vals):
                M[i][c] = v
            out.append(tuple(tuple(r) for r in M))
    return out


def meet_dim(L, a, p):
    """dim(L ∩ <e_1..e_a>) for L given by independent rows."""
    if a <= 0 or not L:
        return 0
    return len(L) - rank_mod([r[a:] for r in L], p) if a < len(L[0]) else len(L)


def schubert_points(ell, m, alpha, p):
    """Points of the Schubert variety by filtering the whole Grassmannian."""
    return [
        L for L in all_subspaces(m, ell, p)
        if all(meet_dim(L, alpha[i - 1], p) >= i for i in range(1, ell + 1))
    ]


def evaluate(T, L, m, p):
    """e_T ∧ (rows of L) as a multiple of e_1 ∧ ... ∧ e_m."""
    rows = [[1 if j == t - 1 else 0 for j in range(m)] for t in T] + [list(r) for r in L]
    return det_mod(rows, p)


def all_codewords(ell, m, alpha, p):
    """The set of codewords of every element of the (m-ell)-th exterior power.

    Entries use the RREF representative of each point, which differs from the
    package's representative only by nonzero column scalings.
    """
    pts = schubert_points(ell, m, alpha, p)
    Ts = list(combinations(range(1, m + 1), m - ell))
    E = [[evaluate(T, L, m, p) for L in pts] for T in Ts]
    words = set()
    for f in product(range(p), repeat=len(Ts)):
        words.add(tuple(sum(c * row[j] for c, row in zip(f, E)) % p for j in range(len(pts))))
    return pts, words


def weight_spectrum(words):
    out = {}
    for w in words:
        wt = sum(1 for x in w if x)
        out[wt] = out.get(wt, 0) + 1
    return out


def count_meeting(b, a, r, u, p):
    """#{U in G_u(GF(p)^b) : U ∩ <e_1..e_a> = <e_1..e_r>}."""
    total = 0
    for U in all_subspaces(b, u, p):
        if meet_dim(U, a, p) != r:
            continue
        # the intersection contains <e_1..e_r> iff adding those vectors keeps the rank
        ext = [list(x) for x in U] + [[1 if j == i else 0 for j in range(b)] for i in range(r)]
        if rank_mod(ext, p) == u:
            total += 1
    return total
