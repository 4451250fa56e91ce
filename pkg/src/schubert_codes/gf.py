"""Finite fields GF(p^e), q <= 256, backed by lookup tables.

Elements are plain integers in ``range(q)``.  The base-p digits of an
element (least significant first) are the coefficients of its polynomial
representative modulo the field's defining polynomial; for prime fields the
integer is the residue itself.  The defining polynomial of an extension field
is the lexicographically least monic irreducible of degree e, so element
indices mean the same thing on every run.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product

import numpy as np

from .errors import DivisionByZero, InvalidInput, NonPrime, OrderTooLarge

MAX_ORDER = 256


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, int(n**0.5) + 1))


# -- polynomials over GF(p), little-endian coefficient lists ---------------


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: list[int], b: list[int], p: int) -> list[int]:
    """Remainder of a modulo the monic polynomial b."""
    a = _trim(list(a))
    db = len(b) - 1
    while len(a) - 1 >= db:
        c = a[-1]
        shift = len(a) - 1 - db
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
        _trim(a)
    return a


def _is_irreducible(f: list[int], p: int) -> bool:
    # trial division by every monic polynomial of degree <= deg(f)/2
    e = len(f) - 1
    for d in range(1, e // 2 + 1):
        for low in product(range(p), repeat=d):
            if not _poly_mod(f, list(low) + [1], p):
                return False
    return True


def least_irreducible(p: int, e: int) -> tuple[int, ...]:
    """Lexicographically least monic irreducible of degree e over GF(p).

    Candidates are ordered by their coefficient tuples read from the
    highest non-leading degree down, i.e. by the integer whose base-p digits
    are the low coefficients.  Returned little-endian, leading 1 included.
    """
    for idx in range(p**e):
        low = [(idx // p**i) % p for i in range(e)]
        f = low + [1]
        if _is_irreducible(f, p):
            return tuple(f)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


class GF:
    """The finite field with ``q = p**e`` elements.

    Use :func:`field_make` (cached) rather than constructing directly.
    Scalars go through :meth:`add`, :meth:`mul`, ...; the numpy tables
    ``add_t``, ``mul_t``, ``neg_t``, ``inv_t`` apply elementwise to arrays
    of element indices.
    """

    def __init__(self, p: int, e: int = 1):
        if not isinstance(p, int) or not isinstance(e, int):
            raise InvalidInput("p and e must be integers")
        if e < 1:
            raise InvalidInput(f"extension degree must be >= 1, got {e}")
        if not is_prime(p):
            raise NonPrime(f"{p} is not prime")
        if p**e > MAX_ORDER:
            raise OrderTooLarge(f"q = {p}^{e} = {p**e} exceeds {MAX_ORDER}")
        self.p = p
        self.e = e
        self.q = q = p**e
        self.modulus: tuple[int, ...] = () if e == 1 else least_irreducible(p, e)

        digits = np.array([[(a // p**i) % p for i in range(e)] for a in range(q)], dtype=np.int64)
        weights = p ** np.arange(e, dtype=np.int64)
        self.add_t = ((digits[:, None, :] + digits[None, :, :]) % p) @ weights
        self.neg_t = ((-digits) % p) @ weights

        if e == 1:
            a = np.arange(q, dtype=np.int64)
            self.mul_t = (a[:, None] * a[None, :]) % p
        else:
            self.mul_t = self._poly_mul_table()

        self.exp_t, self.log_t, self.generator = self._log_tables()
        self.inv_t = np.zeros(q, dtype=np.int64)
        for a in range(1, q):
            self.inv_t[a] = self.exp_t[(q - 1 - self.log_t[a]) % (q - 1)]

        for t in (self.add_t, self.mul_t, self.neg_t, self.inv_t):
            t.setflags(write=False)
        # python-level copies for fast scalar access
        self._add = self.add_t.tolist()
        self._mul = self.mul_t.tolist()
        self._neg = self.neg_t.tolist()
        self._inv = self.inv_t.tolist()

    def _poly_mul_table(self) -> np.ndarray:
        p, e, q = self.p, self.e, self.q
        digits = np.array([[(a // p**i) % p for i in range(e)] for a in range(q)], dtype=np.int64)
        weights = p ** np.arange(e, dtype=np.int64)
        times_x = np.zeros(q, dtype=np.int64)
        for a in range(q):
            r = _poly_mod([0] + digits[a].tolist(), list(self.modulus), p)
            times_x[a] = sum(c * p**i for i, c in enumerate(r))
        # shifted[i][a] = a * x^i ; smul[c][a] = c * a for c in GF(p)
        shifted = [np.arange(q, dtype=np.int64)]
        for _ in range(e - 1):
            shifted.append(times_x[shifted[-1]])
        smul = [((c * digits) % p) @ weights for c in range(p)]
        table = np.zeros((q, q), dtype=np.int64)
        for b in range(q):
            acc = np.zeros(q, dtype=np.int64)
            for i in range(e):
                c = int(digits[b, i])
                if c:
                    acc = self.add_t[acc, smul[c][shifted[i]]]
            table[:, b] = acc
        return table

    def _log_tables(self):
        q = self.q
        for g in range(1, q):
            exp = [1]
            for _ in range(q - 2):
                exp.append(int(self.mul_t[exp[-1], g]))
            if len(set(exp)) == q - 1:
                break
        else:  # pragma: no cover
            raise AssertionError("no primitive element")
        exp_t = np.array(exp, dtype=np.int64)
        log_t = np.zeros(q, dtype=np.int64)
        log_t[exp_t] = np.arange(q - 1)
        exp_t.setflags(write=False)
        log_t.setflags(write=False)
        return exp_t, log_t, g

    # -- scalar arithmetic --------------------------------------------------

    def add(self, a: int, b: int) -> int:
        return self._add[a][b]

    def sub(self, a: int, b: int) -> int:
        return self._add[a][self._neg[b]]

    def mul(self, a: int, b: int) -> int:
        return self._mul[a][b]

    def neg(self, a: int) -> int:
        return self._neg[a]

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of zero")
        return self._inv[a]

    def div(self, a: int, b: int) -> int:
        return self._mul[a][self.inv(b)]

    def log(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("log of zero")
        return int(self.log_t[a])

    def antilog(self, k: int) -> int:
        return int(self.exp_t[k % (self.q - 1)])

    def elements(self) -> range:
        return range(self.q)

    def nonzero(self) -> range:
        return range(1, self.q)

    # -- arrays ---------------------------------------------------------------

    def vadd(self, a, b) -> np.ndarray:
        return self.add_t[a, b]

    def vsub(self, a, b) -> np.ndarray:
        return self.add_t[a, self.neg_t[b]]

    def scale(self, c: int, v) -> np.ndarray:
        return self.mul_t[c, v]

    def dot(self, u, v) -> int:
        acc = 0
        for a, b in zip(u, v):
            if a and b:
                acc = self._add[acc][self._mul[a][b]]
        return acc

    def matmul(self, a, b) -> np.ndarray:
        """Matrix product over the field."""
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if a.ndim == 1:
            return self.matmul(a[None, :], b)[0]
        if a.shape[1] != b.shape[0]:
            raise ValueError(f"shape mismatch {a.shape} @ {b.shape}")
        if self.e == 1:
            return (a @ b) % self.p
        out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
        for k in range(a.shape[1]):
            out = self.add_t[out, self.mul_t[a[:, k, None], b[None, k, :]]]
        return out

    # -- identity -------------------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, GF) and (self.p, self.e) == (other.p, other.e)

    def __hash__(self):
        return hash((self.p, self.e))

    def __repr__(self):
        return f"GF({self.q})" if self.e == 1 else f"GF({self.p}^{self.e})"

    def __reduce__(self):
        return (field_make, (self.p, self.e))


@lru_cache(maxsize=None)
def field_make(p: int, e: int = 1) -> GF:
    """Return the (cached) field GF(p**e)."""
    return GF(p, e)


def field_from_order(q: int) -> GF:
    """GF(q) for a prime power q."""
    for p in range(2, q + 1):
        if q % p == 0:
            e, r = 0, q
            while r % p == 0:
                r //= p
                e += 1
            if r != 1:
                raise NonPrime(f"{q} is not a prime power")
            return field_make(p, e)
    raise InvalidInput(f"invalid field order {q}")


def parse_q(text: str) -> GF:
    """Parse ``"p"`` or ``"p^e"`` into a field."""
    text = text.strip()
    try:
        if "^" in text:
            p_s, e_s = text.split("^", 1)
            p, e = int(p_s), int(e_s)
        else:
            p, e = int(text), 1
    except ValueError:
        raise InvalidInput(f"cannot parse field order {text!r}; expected 'p' or 'p^e'") from None
    if e == 1 and not is_prime(p):
        raise NonPrime(f"{p} is not prime; write the order as 'p^e'")
    return field_make(p, e)


def arith(F: GF, op: str, a: int, b: int | None = None) -> int:
    """Dispatch one of ``add``, ``mul``, ``neg``, ``inv`` by name."""
    for x in (a, b):
        if x is not None and not 0 <= x < F.q:
            raise InvalidInput(f"{x} is not an element of {F!r}")
    if op == "add":
        return F.add(a, b)
    if op == "mul":
        return F.mul(a, b)
    if op == "neg":
        return F.neg(a)
    if op == "inv":
        return F.inv(a)
    raise InvalidInput(f"unknown operation {op!r}")
