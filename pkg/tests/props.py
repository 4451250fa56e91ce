"""Seeded structural properties shared by the hypothesis suite and the acceptance run.

Each property takes an instance ``(q, m, alpha)`` and a seed and returns True
when the property holds for the sampled object (vacuous samples also return
True).  Instances cover every legal alpha with m <= 5 over GF(2) and GF(3).
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from schubert_codes.code import build_code, census_preimage, compute_EF, encode, min_weight_census
from schubert_codes.exterior import Multivector, basis_multivector, pluecker, subsets, wedge_rows
from schubert_codes.gf import field_from_order
from schubert_codes.linalg import random_full_rank, random_subspace
from schubert_codes.schubert import (
    all_dimseqs,
    dimseq_make,
    enumerate_lambda,
    intersection_signature,
    is_member,
    is_schubert_decomposable,
)
from schubert_codes.verify import (
    child_words_minimal,
    codim_one_support_holds,
    dichotomy_holds,
    flag_members_in_e_hold,
    top_intersection_criterion_holds,
    annihilator_bounds_hold,
)

INSTANCES = [(q, m, ds.alpha) for q in (2, 3) for m in range(2, 6) for ds in all_dimseqs(m)]
MULTI_ROW = [inst for inst in INSTANCES if len(inst[2]) > 1]
TRIES = 30


@lru_cache(maxsize=None)
def code_of(q, m, alpha):
    return build_code(dimseq_make(None, m, alpha), field_from_order(q))


@lru_cache(maxsize=None)
def census_of(q, m, alpha):
    return min_weight_census(code_of(q, m, alpha))


@lru_cache(maxsize=None)
def lambda_of(q, m, alpha):
    code = code_of(q, m, alpha)
    lam = enumerate_lambda(code.ds, code.field)
    groups: dict[tuple, list] = {}
    for W in lam:
        groups.setdefault(intersection_signature(W, code.ds), []).append(W)
    return lam, groups


def _weight(code, f) -> int:
    return int(np.count_nonzero(code.encode_dense(f.to_dense())))


def _nonvanishing_decomposable(code, rng):
    """A random decomposable f with c_f != 0, or None after TRIES attempts."""
    ds = code.ds
    for _ in range(TRIES):
        f = basis_multivector(random_subspace(code.field, ds.m, ds.m - ds.ell, rng))
        if _weight(code, f):
            return f
    return None


def _random_element(code, rng):
    F, ds = code.field, code.ds
    d = ds.m - ds.ell
    return Multivector.from_dense(F, ds.m, d, rng.integers(0, F.q, len(subsets(ds.m, d))))


def annihilator_bounds(inst, seed) -> bool:
    code = code_of(*inst)
    f = _nonvanishing_decomposable(code, np.random.default_rng(seed))
    return f is None or annihilator_bounds_hold(f, code.ds)


def top_intersection_iff_codim_one(inst, seed) -> bool:
    code = code_of(*inst)
    f = _nonvanishing_decomposable(code, np.random.default_rng(seed))
    return f is None or top_intersection_criterion_holds(code, f, compute_EF(code, f).t)


def flag_member_inside_e(inst, seed) -> bool:
    code = code_of(*inst)
    rng = np.random.default_rng(seed)
    f = _random_element(code, rng) if rng.random() < 0.5 else _nonvanishing_decomposable(code, rng)
    return f is None or flag_members_in_e_hold(code.ds, code.field, compute_EF(code, f))


def codim_one_support_avoids_top(inst, seed) -> bool:
    code = code_of(*inst)
    rng = np.random.default_rng(seed)
    f = _random_element(code, rng) if rng.random() < 0.5 else _nonvanishing_decomposable(code, rng)
    if f is None:
        return True
    return codim_one_support_holds(code, encode(code, f), compute_EF(code, f))


def min_word_dichotomy(inst, seed) -> bool:
    code, census = code_of(*inst), census_of(*inst)
    rng = np.random.default_rng(seed)
    i = int(rng.integers(census.count))
    ef = compute_EF(code, census_preimage(code, census, i))
    return dichotomy_holds(code.ds, ef) and child_words_minimal(code, ef)


def schubert_decomposable_is_min_weight(inst, seed) -> bool:
    code = code_of(*inst)
    rng = np.random.default_rng(seed)
    lam, _ = lambda_of(*inst)
    W = lam[int(rng.integers(len(lam)))]
    if _weight(code, basis_multivector(W)) != code.designed_distance:
        return False
    f = _nonvanishing_decomposable(code, rng)
    return f is None or not is_schubert_decomposable(f, code.ds) or _weight(code, f) == code.designed_distance


def min_weight_decomposable_is_schubert(inst, seed) -> bool:
    code = code_of(*inst)
    rng = np.random.default_rng(seed)
    for _ in range(TRIES):
        f = basis_multivector(random_subspace(code.field, code.ds.m, code.ds.m - code.ds.ell, rng))
        if _weight(code, f) == code.designed_distance:
            return is_schubert_decomposable(f, code.ds)
    return True


def equal_intersections_proportional(inst, seed) -> bool:
    code = code_of(*inst)
    F = code.field
    rng = np.random.default_rng(seed)
    lam, groups = lambda_of(*inst)
    W = lam[int(rng.integers(len(lam)))]
    peers = groups[intersection_signature(W, code.ds)]
    W2 = peers[int(rng.integers(len(peers)))]
    a = code.encode_dense(basis_multivector(W).to_dense())
    b = code.encode_dense(basis_multivector(W2).to_dense())
    return any(np.array_equal(F.mul_t[c, b], a) for c in range(1, F.q))


def wedge_matches_pluecker(inst, seed) -> bool:
    q, m, _ = inst
    F = field_from_order(q)
    rng = np.random.default_rng(seed)
    ell = int(rng.integers(1, m + 1))
    M = random_full_rank(F, ell, m, rng)
    return pluecker(F, M) == wedge_rows(F, M)


def jump_spot_membership(inst, seed) -> bool:
    q, m, alpha = inst
    ds = dimseq_make(None, m, alpha)
    L = random_subspace(field_from_order(q), m, ds.ell, np.random.default_rng(seed))
    return is_member(L, ds, jumps_only=True) == is_member(L, ds, jumps_only=False)


PROPERTIES = {
    "annihilator flag bounds": (annihilator_bounds, INSTANCES),
    "top intersection iff codim E = 1": (top_intersection_iff_codim_one, MULTI_ROW),
    "flag member inside E": (flag_member_inside_e, MULTI_ROW),
    "codim one support avoids A_(ell-1)": (codim_one_support_avoids_top, MULTI_ROW),
    "(t, t') dichotomy and truncated words": (min_word_dichotomy, MULTI_ROW),
    "Schubert decomposable gives minimum weight": (schubert_decomposable_is_min_weight, INSTANCES),
    "minimum weight decomposable is Schubert decomposable": (min_weight_decomposable_is_schubert, INSTANCES),
    "equal flag intersections give proportional words": (equal_intersections_proportional, INSTANCES),
    "wedge agrees with Pluecker minors": (wedge_matches_pluecker, INSTANCES),
    "jump-spot membership equals full membership": (jump_spot_membership, INSTANCES),
}


def pick_instance(pool, seed):
    return pool[int(np.random.default_rng([seed, 1]).integers(len(pool)))]


def count_violations(name: str, samples: int = 200) -> int:
    prop, pool = PROPERTIES[name]
    return sum(not prop(pick_instance(pool, s), s) for s in range(samples))
