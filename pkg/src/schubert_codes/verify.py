"""Claim-by-claim verification of a Schubert code instance.

Each check records a status of ``pass``, ``fail``, ``report-only`` (the
comparison concerns an unproven statement, so the outcome is recorded but
never judged) or ``skipped`` (a budget was exhausted).  A check is only
judged pass/fail when the hypotheses of the claim it tests are met.
"""

from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from importlib import resources
from itertools import product
from typing import Iterable

import numpy as np

from .counting import binom
from .errors import BudgetExceeded, RankMismatch
from .exterior import annihilator, basis_multivector
from .gf import GF, field_make
from .linalg import (
    DEFAULT_SUBSPACE_BUDGET,
    enumerate_subspaces,
    meet_coordinate_dim,
    random_subspace,
)
from .code import (
    DEFAULT_MESSAGE_BUDGET,
    Codeword,
    SchubertCode,
    build_code,
    census_preimage,
    classify_min_words,
    compute_EF,
    min_distance,
    min_weight_census,
    min_word_span_rank,
    schubert_decomposable_codewords,
)
from .schubert import (
    DimSeq,
    all_dimseqs,
    count_subspaces_bruteforce,
    count_subspaces_formula,
    enumerate_lambda,
    intersection_signature,
    is_schubert_decomposable,
    k_alpha,
    lambda_count_formula,
    m_alpha_formula,
    n_alpha,
)

PASS, FAIL, REPORT, SKIPPED = "pass", "fail", "report-only", "skipped"
CHECK_GROUPS = ("params", "mdc", "decomposable", "census", "span", "ef")
DEFAULT_SAMPLES = 20


@dataclass
class Check:
    name: str
    status: str
    expected: object
    observed: object
    claim: str


@dataclass
class VerifyReport:
    q: int
    q_label: str
    ell: int
    m: int
    alpha: tuple[int, ...]
    seed: int
    checks: list[Check] = field(default_factory=list)
    runtime_ms: float = 0.0

    @property
    def failed(self) -> list[Check]:
        return [c for c in self.checks if c.status == FAIL]

    @property
    def skipped(self) -> list[Check]:
        return [c for c in self.checks if c.status == SKIPPED]

    @property
    def status(self) -> str:
        if self.failed:
            return "fail"
        if self.skipped:
            return "budget"
        return "ok"

    @property
    def exit_code(self) -> int:
        return {"ok": 0, "fail": 1, "budget": 2}[self.status]

    def check(self, name: str) -> Check:
        return next(c for c in self.checks if c.name == name)

    def to_dict(self) -> dict:
        return {
            "instance": {"q": self.q, "q_label": self.q_label, "ell": self.ell, "m": self.m, "alpha": list(self.alpha)},
            "seed": self.seed,
            "runtime_ms": round(self.runtime_ms, 3),
            "status": self.status,
            "checks": [_jsonable(asdict(c)) for c in self.checks],
        }


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.integer):
        return int(obj)
    return obj


# -- verified-instance list ----------------------------------------------------


@lru_cache(maxsize=1)
def verified_instances() -> dict:
    """Instances (and rules) on which census = M_alpha is treated as checkable."""
    text = resources.files("schubert_codes.data").joinpath("verified_instances.json").read_text()
    return json.loads(text)


def on_verified_list(ds: DimSeq, q: int) -> bool:
    data = verified_instances()
    for entry in data.get("instances", []):
        if entry["q"] == q and entry["m"] == ds.m and tuple(entry["alpha"]) == ds.alpha:
            return True
    rules = set(data.get("rules", []))
    return ("completely_consecutive" in rules and ds.completely_consecutive) or (
        "grassmann" in rules and ds.is_grassmann
    )


def census_equals_s_alpha_proven(ds: DimSeq) -> bool:
    """ell = 2, completely consecutive, or completely non-consecutive."""
    return ds.ell == 2 or ds.u in (0, ds.ell - 1)


def s_alpha_span_is_proper(ds: DimSeq) -> bool:
    """The span of S_alpha is a proper subcode when u > 1, or u = 1 and alpha_{p_1} > p_1."""
    return ds.u > 1 or (ds.u == 1 and ds.a(ds.jumps[0]) > ds.jumps[0])


def generated_by_min_words(ds: DimSeq) -> bool:
    """Grassmann-equivalent cases: u = 0, or u = 1 with alpha_{p_1} = p_1."""
    return ds.u == 0 or (ds.u == 1 and ds.a(ds.jumps[0]) == ds.jumps[0])


# -- individual property predicates, shared with the test-suite ---------------


def annihilator_bounds_hold(f, ds: DimSeq) -> bool:
    """alpha_i - ell <= dim(V_f ∩ A_i) <= alpha_i - i, with equality on the right at i = ell."""
    V = annihilator(f)
    for i in range(1, ds.ell + 1):
        dim = meet_coordinate_dim(V, ds.a(i))
        if not ds.a(i) - ds.ell <= dim <= ds.a(i) - i:
            return False
    return meet_coordinate_dim(V, ds.a(ds.ell)) == ds.a(ds.ell) - ds.ell


def top_intersection_criterion_holds(code: SchubertCode, f, t: int) -> bool:
    """dim(V_f ∩ A_{ell-1}) = alpha_{ell-1} - (ell-1) exactly when t = 1."""
    ds = code.ds
    top = meet_coordinate_dim(annihilator(f), ds.a(ds.ell - 1)) == ds.a(ds.ell - 1) - (ds.ell - 1)
    return top == (t == 1)


def flag_members_in_e_hold(ds: DimSeq, F: GF, ef) -> bool:
    """A_{ell - t0} ⊆ E for every t0 >= codim E."""
    return all(ds.flag(F, ds.ell - t0).issubspace(ef.E) for t0 in range(ef.t, ds.ell + 1))


def codim_one_support_holds(code: SchubertCode, word: Codeword, ef) -> bool:
    """When codim E = 1, no point of W(f) lies inside A_{ell-1}."""
    if ef.t != 1:
        return True
    ds = code.ds
    return all(meet_coordinate_dim(pt.subspace, ds.a(ds.ell - 1)) < ds.ell for pt in code.support_points(word))


def dichotomy_holds(ds: DimSeq, ef) -> bool:
    """(t, t′) = (1, 0), or t′ = t >= 2 with alpha_ell - alpha_{ell-1} = 1."""
    if (ef.t, ef.t_prime) == (1, 0):
        return True
    return ef.t == ef.t_prime >= 2 and ds.a(ds.ell) - ds.a(ds.ell - 1) == 1


def child_words_minimal(code: SchubertCode, ef) -> bool:
    """c_{f∧x} has minimum weight in the truncated code for every x in F."""
    F = code.field
    target = code.child().designed_distance
    C = ef.child_words
    for x in ef.F_vectors(F):
        if np.count_nonzero(F.matmul(x, C)) != target:
            return False
    return True


def decomposable_t_values(ds: DimSeq) -> set[int]:
    """Allowed codim E for Schubert decomposable f: 1 or ell - p_u."""
    return {1, ds.ell - ds.p[ds.u]}


def signature_groups_proportional(code: SchubertCode, lam) -> bool:
    """Subspaces of Lambda_alpha with equal flag intersections give proportional codewords."""
    F = code.field
    groups: dict[tuple, set] = {}
    for W in lam:
        w = Codeword(tuple(code.encode_dense(basis_multivector(W).to_dense()).tolist()))
        groups.setdefault(intersection_signature(W, code.ds), set()).add(w.normalized(F))
    return all(len(g) == 1 for g in groups.values())


# -- orchestration -----------------------------------------------------------


class _Runner:
    def __init__(self, report: VerifyReport):
        self.report = report

    def add(self, name, status, expected, observed, claim):
        self.report.checks.append(Check(name, status, expected, observed, claim))

    def judge(self, name, ok: bool, expected, observed, claim, guard: bool = True):
        status = (PASS if ok else FAIL) if guard else REPORT
        self.add(name, status, expected, observed, claim)

    def skip(self, names: Iterable[str], err: BudgetExceeded, claim="budget exhausted"):
        for name in names:
            self.add(name, SKIPPED, None, str(err), claim)


def _q_label(F: GF) -> str:
    return str(F.p) if F.e == 1 else f"{F.p}^{F.e}"


def verify_instance(
    ds: DimSeq,
    F: GF,
    budget_messages: int = DEFAULT_MESSAGE_BUDGET,
    budget_subspaces: int = DEFAULT_SUBSPACE_BUDGET,
    which: Iterable[str] | None = None,
    seed: int = 0,
    samples: int = DEFAULT_SAMPLES,
) -> VerifyReport:
    """Run the selected check groups (all of CHECK_GROUPS by default) in order."""
    groups = set(CHECK_GROUPS if which is None else which)
    unknown = groups - set(CHECK_GROUPS)
    if unknown:
        raise ValueError(f"unknown check groups {sorted(unknown)}")
    started = time.perf_counter()
    report = VerifyReport(F.q, _q_label(F), ds.ell, ds.m, ds.alpha, seed)
    run = _Runner(report)
    rng = np.random.default_rng(seed)
    q, d_expected = F.q, F.q**ds.delta

    try:
        code = build_code(ds, F, budget_subspaces)
    except BudgetExceeded as err:
        run.skip(["code construction"], err)
        report.runtime_ms = (time.perf_counter() - started) * 1e3
        return report
    except RankMismatch as err:
        run.add("dimension k", FAIL, k_alpha(ds), str(err), "rank of the evaluation map equals the determinant formula")
        report.runtime_ms = (time.perf_counter() - started) * 1e3
        return report

    if "params" in groups:
        run.judge("length n", code.n == n_alpha(ds, q), n_alpha(ds, q), code.n,
                  "number of points equals the sum of q^delta(beta) over cells")
        run.judge("dimension k", code.k == k_alpha(ds), k_alpha(ds), code.k,
                  "rank of the evaluation map equals the binomial determinant")
        N = binom(ds.m, ds.ell)
        run.judge("kernel dimension", code.kernel.dim == N - code.k, N - code.k, code.kernel.dim,
                  "the evaluation map has a kernel of dimension C(m, ell) - k")

    census = None
    if groups & {"mdc", "census", "span", "ef"}:
        try:
            d, _ = min_distance(code, budget_messages, strict=False)
            census = min_weight_census(code, budget_messages)
        except BudgetExceeded as err:
            run.skip(["minimum distance", "census"], err)
            d = None
        if d is not None and "mdc" in groups:
            run.judge("minimum distance", d == d_expected, d_expected, d,
                      "minimum distance equals q^delta(alpha)")

    sa = None
    if groups & {"decomposable", "census", "span"}:
        try:
            sa = schubert_decomposable_codewords(code, budget_subspaces)
        except BudgetExceeded as err:
            run.skip(["Schubert decomposable weights"], err)

    if "decomposable" in groups and sa is not None:
        run.judge("Schubert decomposable weights", sa.weights == {d_expected}, [d_expected], sorted(sa.weights),
                  "every codeword of a Schubert decomposable element has weight q^delta(alpha)")
        formula = lambda_count_formula(ds, q)
        run.judge("Lambda count", sa.lambda_size == formula, formula, sa.lambda_size,
                  "subspaces meeting each jump-spot flag member in the prescribed dimension, chained subspace count")
        _decomposable_equivalence(run, code, budget_subspaces)
        try:
            lam = enumerate_lambda(ds, F, budget_subspaces)
            run.judge("equal flag intersections give proportional words", signature_groups_proportional(code, lam),
                      True, signature_groups_proportional(code, lam),
                      "Schubert decomposable f, g with equal intersections at every jump spot have c_f = lambda c_g")
        except BudgetExceeded as err:
            run.skip(["equal flag intersections give proportional words"], err)

    if "census" in groups and census is not None and sa is not None:
        cset, sset = census.as_set(), sa.as_set()
        run.judge("S_alpha inside census", sset <= cset, True, sset <= cset,
                  "codewords of Schubert decomposable elements are minimum weight codewords")
        proven = census_equals_s_alpha_proven(ds) or on_verified_list(ds, q)
        run.judge("census equals S_alpha", cset == sset, len(sset), len(cset),
                  "minimum weight codewords are exactly the Schubert decomposable codewords", guard=proven)
        verified = on_verified_list(ds, q)
        M = m_alpha_formula(ds, q)
        run.judge("census equals M_alpha", census.count == M, M,
                  {"census": census.count, "discrepancy": census.count != M},
                  "number of minimum weight codewords equals the closed-form M_alpha", guard=verified)
        run.judge("S_alpha size equals M_alpha", sa.size == M, M,
                  {"S_alpha": sa.size, "Lambda": sa.lambda_size, "discrepancy": sa.size != M},
                  "number of Schubert decomposable codewords equals the closed-form M_alpha", guard=verified)
        run.add("projective census", REPORT, census.count // (q - 1), census.projective_count,
                "minimum weight codewords up to scalars")
        run.add("max points on a hyperplane", REPORT, code.n - d_expected, census.m_alpha,
                "largest hyperplane section equals n - d")
        try:
            cl = classify_min_words(code, budget_messages, budget_subspaces)
            run.judge("census words with decomposable preimage are Schubert decomposable",
                      cl.decomposable_preimages_are_schubert, True, cl.decomposable_preimages_are_schubert,
                      "a minimum weight codeword of a decomposable element comes from a Schubert decomposable one")
            guard_dec = ds.u == ds.ell - 1 or proven
            run.judge("census words have decomposable preimage", cl.all_have_decomposable_preimage, True,
                      cl.all_have_decomposable_preimage,
                      "every minimum weight codeword is c_h for a decomposable h", guard=guard_dec)
            run.judge("classification of minimum weight words", cl.min_words_are_s_alpha, True, cl.min_words_are_s_alpha,
                      "minimum weight codewords are exactly the Schubert decomposable codewords",
                      guard=census_equals_s_alpha_proven(ds))
        except BudgetExceeded as err:
            run.skip(["classification of minimum weight words"], err)

    if "span" in groups and sa is not None:
        r_s = min_word_span_rank(code, sa.words)
        if s_alpha_span_is_proper(ds):
            run.judge("S_alpha span proper", r_s < code.k, f"< {code.k}", r_s,
                      "Schubert decomposable codewords span a proper subcode")
        else:
            run.add("S_alpha span rank", REPORT, code.k, r_s, "rank of the span of Schubert decomposable codewords")
        if census is not None:
            r_c = min_word_span_rank(code, census)
            if generated_by_min_words(ds):
                run.judge("census span full", r_c == code.k, code.k, r_c,
                          "Grassmann-equivalent codes are generated by their minimum weight codewords")
            elif s_alpha_span_is_proper(ds):
                same = census.as_set() == sa.as_set()
                run.judge("census span proper", r_c < code.k, f"< {code.k}", r_c,
                          "minimum weight codewords span a proper subcode (applies once census equals S_alpha)",
                          guard=same)

    if "ef" in groups and census is not None and ds.ell > 1:
        try:
            _ef_checks(run, code, census, rng, samples, budget_subspaces)
        except BudgetExceeded as err:
            run.skip(["E/F structure"], err)

    report.runtime_ms = (time.perf_counter() - started) * 1e3
    return report


def _decomposable_equivalence(run: _Runner, code: SchubertCode, budget: int) -> None:
    """Over every W in G_{m-ell}: weight q^delta exactly when Schubert decomposable.

    Schubert decomposability only constrains the jump spots p_1..p_u, so when
    alpha_ell < m a Schubert decomposable f can still vanish on every point;
    the weight claim is judged on those with c_f != 0 and on all of Lambda_alpha,
    and the vanishing ones are counted separately.
    """
    ds, F = code.ds, code.field
    target = code.designed_distance
    names = ["Schubert decomposable implies minimum weight", "minimum weight decomposable is Schubert decomposable"]
    try:
        subspaces = enumerate_subspaces(F, ds.m, ds.m - ds.ell, budget)
    except BudgetExceeded as err:
        run.skip(names, err)
        return
    forward = backward = True
    vanishing = 0
    for W in subspaces:
        f = basis_multivector(W)
        wt = int(np.count_nonzero(code.encode_dense(f.to_dense())))
        sd = is_schubert_decomposable(f, ds)
        if sd and wt == 0:
            vanishing += 1
        elif sd:
            forward &= wt == target
        backward &= wt != target or sd
    run.judge(names[0], forward, True, forward,
              "c_f has weight q^delta(alpha) for every Schubert decomposable f with c_f != 0")
    run.judge(names[1], backward, True, backward,
              "a decomposable f with c_f of minimum weight is Schubert decomposable")
    run.add("Schubert decomposable with zero codeword", REPORT, 0, vanishing,
            "Schubert decomposable subspaces (jump-spot conditions only) whose codeword vanishes")


def _ef_checks(run: _Runner, code: SchubertCode, census, rng, samples: int, budget: int) -> None:
    ds, F = code.ds, code.field
    idx = rng.choice(census.count, size=min(samples, census.count), replace=False)
    ok = {k: True for k in ("t", "flag in E", "codim one", "dichotomy", "child")}
    top_ok = True
    for i in sorted(idx.tolist()):
        f = census_preimage(code, census, i)
        ef = compute_EF(code, f, budget)
        ok["t"] &= ef.t >= 1 and ef.t_prime <= ef.t
        ok["flag in E"] &= flag_members_in_e_hold(ds, F, ef)
        ok["codim one"] &= codim_one_support_holds(code, census.words[i], ef)
        ok["dichotomy"] &= dichotomy_holds(ds, ef)
        ok["child"] &= child_words_minimal(code, ef)
    n = len(idx)
    run.judge("E codimension bounds", ok["t"], "t >= 1 and t' <= t", ok["t"],
              f"codim E is positive and bounds codim of E ∩ A_(ell-1) ({n} sampled words)")
    run.judge("E contains A_(ell-t)", ok["flag in E"], True, ok["flag in E"],
              f"codim E <= t forces A_(ell-t) inside E ({n} sampled words)")
    run.judge("codim one support avoids A_(ell-1)", ok["codim one"], True, ok["codim one"],
              f"when codim E = 1 no support point lies in A_(ell-1) ({n} sampled words)")
    run.judge("(t, t') dichotomy", ok["dichotomy"], "(1,0) or t'=t>=2 with unit last gap", ok["dichotomy"],
              f"minimum weight words have (t,t') = (1,0) or t' = t >= 2 ({n} sampled words)")
    run.judge("truncated words minimal", ok["child"], True, ok["child"],
              f"c_(f wedge x) is minimum weight in the truncated code for x in F ({n} sampled words)")

    lam = enumerate_lambda(ds, F, budget)
    pick = rng.choice(len(lam), size=min(samples, len(lam)), replace=False)
    allowed = decomposable_t_values(ds)
    seen, t_ok = set(), True
    for j in sorted(pick.tolist()):
        f = basis_multivector(lam[j])
        ef = compute_EF(code, f, budget)
        seen.add(ef.t)
        t_ok &= ef.t in allowed
        top_ok &= top_intersection_criterion_holds(code, f, ef.t)
    run.judge("Schubert decomposable t values", t_ok, sorted(allowed), sorted(seen),
              f"codim E is 1 or ell - p_u for Schubert decomposable f ({len(pick)} sampled)")
    run.judge("annihilator top intersection iff t = 1", top_ok, True, top_ok,
              f"dim(V_f ∩ A_(ell-1)) = alpha_(ell-1) - ell + 1 exactly when codim E = 1 ({len(pick)} sampled)")

    s_ok = True
    for _ in range(samples):
        W = random_subspace(F, ds.m, ds.m - ds.ell, rng)
        f = basis_multivector(W)
        if np.count_nonzero(code.encode_dense(f.to_dense())):
            s_ok &= annihilator_bounds_hold(f, ds)
    run.judge("annihilator flag bounds", s_ok, True, s_ok,
              f"alpha_i - ell <= dim(V_f ∩ A_i) <= alpha_i - i for decomposable f with c_f != 0 ({samples} sampled)")


def verify_sweep(
    max_m: int,
    qs: Iterable[int],
    budget_messages: int = DEFAULT_MESSAGE_BUDGET,
    budget_subspaces: int = DEFAULT_SUBSPACE_BUDGET,
    which: Iterable[str] | None = None,
    seed: int = 0,
    samples: int = DEFAULT_SAMPLES,
) -> list[VerifyReport]:
    """Verify every legal alpha with m <= max_m over each q.

    Instances whose q**k exceeds the message budget get a single skipped check.
    """
    reports = []
    for q in qs:
        F = field_make(*_pe(q))
        for m in range(2, max_m + 1):
            for ds in all_dimseqs(m):
                k = k_alpha(ds)
                if q**k > budget_messages:
                    rep = VerifyReport(q, _q_label(F), ds.ell, m, ds.alpha, seed)
                    rep.checks.append(Check("instance", SKIPPED, None, f"q^k = {q**k} messages", "over budget"))
                    reports.append(rep)
                    continue
                reports.append(verify_instance(ds, F, budget_messages, budget_subspaces, which, seed, samples))
    return reports


def _pe(q: int) -> tuple[int, int]:
    from .gf import field_from_order

    F = field_from_order(q)
    return F.p, F.e


def sweep_summary(reports: list[VerifyReport]) -> dict:
    fails = [(r.q, r.m, r.alpha, c.name) for r in reports for c in r.checks if c.status == FAIL]
    reported = [(r.q, r.m, r.alpha, c.name, c.observed) for r in reports for c in r.checks if c.status == REPORT]
    skipped = [(r.q, r.m, r.alpha) for r in reports if r.status == "budget"]
    return {"instances": len(reports), "failures": fails, "report_only": reported, "skipped": skipped}


def subspace_count_suite(max_b: int, qs: Iterable[int], budget: int = DEFAULT_SUBSPACE_BUDGET) -> list[dict]:
    """Closed-form subspace count against brute force for every legal (b, a, r, u)."""
    rows = []
    for q in qs:
        F = field_make(*_pe(q))
        for b in range(0, max_b + 1):
            for a, r, u in product(range(b + 1), repeat=3):
                if not (r <= a and r <= u):
                    continue
                formula = count_subspaces_formula(b, a, r, u, q)
                brute = count_subspaces_bruteforce(F, b, a, r, u, budget)
                rows.append({"q": q, "b": b, "a": a, "r": r, "u": u, "formula": formula, "brute": brute,
                             "status": PASS if formula == brute else FAIL})
    return rows
