"""Command-line interface: ``schubert-codes <command> [options]``.

Exit codes: 0 success, 1 a verification check failed, 2 a budget was
exhausted, 3 malformed input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from .code import (
    DEFAULT_MESSAGE_BUDGET,
    build_code,
    classify_min_words,
    code_header,
    code_to_text,
    min_weight_census,
    schubert_decomposable_codewords,
    weight_distribution,
)
from .errors import BudgetExceeded, InvalidInput, SchubertError
from .gf import parse_q
from .linalg import DEFAULT_SUBSPACE_BUDGET
from .schubert import (
    count_subspaces_bruteforce,
    count_subspaces_formula,
    dimseq_make,
    enumerate_points,
    k_alpha,
    m_alpha_formula,
    n_alpha,
)
from .verify import CHECK_GROUPS, DEFAULT_SAMPLES, sweep_summary, verify_instance, verify_sweep

EXIT_OK, EXIT_FAIL, EXIT_BUDGET, EXIT_INPUT = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.replace(" ", "").split(",") if x)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of integers, got {text!r}") from None


def _common(instance: bool) -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--q", default="2", help="field order as 'p' or 'p^e' (default 2)")
    if instance:
        p.add_argument("--m", type=int, help="ambient dimension")
        p.add_argument("--ell", type=int, help="subspace dimension (default: length of alpha)")
        p.add_argument("--alpha", type=_int_list, help="dimension sequence, e.g. 2,4")
    p.add_argument("--budget-messages", type=int, default=DEFAULT_MESSAGE_BUDGET,
                   help=f"maximum messages to enumerate (default {DEFAULT_MESSAGE_BUDGET})")
    p.add_argument("--budget-subspaces", type=int, default=DEFAULT_SUBSPACE_BUDGET,
                   help=f"maximum points or subspaces to enumerate (default {DEFAULT_SUBSPACE_BUDGET})")
    p.add_argument("--seed", type=int, default=0, help="seed for sampled checks (default 0)")
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.add_argument("--json", action="store_const", const="json", dest="format", help="same as --format json")
    p.add_argument("--output", help="write to this file instead of stdout")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="schubert-codes", description="Schubert codes over finite fields.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    inst = _common(True)
    sub.add_parser("params", parents=[inst], help="closed-form parameters of an instance")
    sub.add_parser("points", parents=[inst], help="list the Schubert points")
    sub.add_parser("genmat", parents=[inst], help="generator matrix")
    sub.add_parser("spectrum", parents=[inst], help="exhaustive weight distribution")
    mw = sub.add_parser("minwords", parents=[inst], help="minimum-weight census")
    mw.add_argument("--classify", action="store_true", help="also compare with Schubert decomposable codewords")
    v = sub.add_parser("verify", parents=[inst], help="check the claims about an instance or a sweep")
    v.add_argument("--sweep", action="store_true", help="verify every alpha with m <= --max-m")
    v.add_argument("--max-m", type=int, default=4)
    v.add_argument("--qs", type=_int_list, default=(2,), help="field orders for --sweep, e.g. 2,3")
    v.add_argument("--checks", type=lambda s: tuple(s.split(",")), default=None,
                   help=f"subset of {','.join(CHECK_GROUPS)}")
    v.add_argument("--samples", type=int, default=DEFAULT_SAMPLES, help="sampled words for E/F checks")
    sc = sub.add_parser("subspace-count", parents=[_common(False)],
                        help="count U in G_u(B) with U ∩ A = R")
    for name in ("b", "a", "r", "u"):
        sc.add_argument(f"--{name}", type=int, required=True)
    sc.add_argument("--check", action="store_true", help="compare with brute-force enumeration")
    return parser


def _instance(args):
    if args.m is None or args.alpha is None:
        raise InvalidInput("--m and --alpha are required")
    F = parse_q(args.q)
    return dimseq_make(args.ell, args.m, args.alpha), F


def _emit(args, text: str) -> None:
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _csv(rows) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def _instance_dict(ds, F) -> dict:
    return {"q": F.q, "ell": ds.ell, "m": ds.m, "alpha": list(ds.alpha)}


def cmd_params(args) -> int:
    ds, F = _instance(args)
    q = F.q
    n, d = n_alpha(ds, q), q**ds.delta
    out = {
        **_instance_dict(ds, F),
        "n": n, "k": k_alpha(ds), "delta": ds.delta, "d": d,
        "u": ds.u, "jumps": list(ds.jumps), "M_alpha": m_alpha_formula(ds, q), "m_alpha": n - d,
    }
    if args.format == "json":
        _emit(args, _dump(out))
    elif args.format == "csv":
        _emit(args, _csv([list(out), [json.dumps(v) if isinstance(v, list) else v for v in out.values()]]))
    else:
        _emit(args, "".join(f"{k}={','.join(map(str, v)) if isinstance(v, list) else v}\n" for k, v in out.items()))
    return EXIT_OK


def cmd_points(args) -> int:
    ds, F = _instance(args)
    pts = enumerate_points(ds, F, args.budget_subspaces)
    if args.format == "json":
        _emit(args, _dump({**_instance_dict(ds, F), "points": [
            {"beta": list(p.beta), "matrix": p.matrix.tolist()} for p in pts]}))
    elif args.format == "csv":
        _emit(args, _csv([["beta", "entries"]] + [
            [",".join(map(str, p.beta)), " ".join(map(str, p.matrix.ravel().tolist()))] for p in pts]))
    else:
        lines = [
            f"{','.join(map(str, p.beta))}\t{ds.ell} {ds.m} {F.q}\t{' '.join(map(str, p.matrix.ravel().tolist()))}"
            for p in pts
        ]
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_genmat(args) -> int:
    ds, F = _instance(args)
    code = build_code(ds, F, args.budget_subspaces)
    if args.format == "json":
        _emit(args, _dump({**_instance_dict(ds, F), "n": code.n, "k": code.k,
                           "point_order": code_header(code)[1], "matrix": code.gen_matrix.tolist()}))
    elif args.format == "csv":
        _emit(args, _csv(code.gen_matrix.tolist()))
    else:
        _emit(args, code_to_text(code))
    return EXIT_OK


def cmd_spectrum(args) -> int:
    ds, F = _instance(args)
    code = build_code(ds, F, args.budget_subspaces)
    spec = weight_distribution(code, args.budget_messages)
    d = min((w for w in spec if w), default=None)
    out = {"n": code.n, "k": code.k, "d": d, "delta": ds.delta,
           "m_alpha": None if d is None else code.n - d, "spectrum": {str(w): c for w, c in sorted(spec.items())}}
    if args.format == "json":
        _emit(args, _dump(out))
    elif args.format == "csv":
        _emit(args, _csv([["weight", "count"]] + sorted(spec.items())))
    else:
        head = f"n={code.n} k={code.k} d={d} delta={ds.delta} m_alpha={out['m_alpha']}\n"
        _emit(args, head + "".join(f"{w} {c}\n" for w, c in sorted(spec.items())))
    return EXIT_OK


def cmd_minwords(args) -> int:
    ds, F = _instance(args)
    code = build_code(ds, F, args.budget_subspaces)
    census = min_weight_census(code, args.budget_messages)
    sa = schubert_decomposable_codewords(code, args.budget_subspaces)
    M = m_alpha_formula(ds, F.q)
    out = {
        **_instance_dict(ds, F),
        "d": census.d, "count": census.count, "projective_count": census.projective_count,
        "m_alpha": census.m_alpha, "M_alpha_formula": M, "discrepancy": census.count != M,
        "s_alpha_size": sa.size, "lambda_size": sa.lambda_size,
        "words": [list(w.values) for w in census.words],
    }
    if args.classify:
        cl = classify_min_words(code, args.budget_messages, args.budget_subspaces)
        out["classification"] = {
            "min_words_are_s_alpha": cl.min_words_are_s_alpha,
            "in_s_alpha": [e.in_s_alpha for e in cl.entries],
            "has_decomposable_preimage": [e.preimage is not None for e in cl.entries],
        }
    if args.format == "json":
        _emit(args, _dump(out))
    elif args.format == "csv":
        _emit(args, _csv(out["words"]))
    else:
        flag = " DISCREPANCY" if out["discrepancy"] else ""
        head = (f"d={census.d} count={census.count} projective={census.projective_count} "
                f"S_alpha={sa.size} Lambda={sa.lambda_size} M_alpha(formula)={M}{flag}\n")
        if args.classify:
            head += f"min_words_are_s_alpha={out['classification']['min_words_are_s_alpha']}\n"
        _emit(args, head + "".join(" ".join(map(str, w)) + "\n" for w in out["words"]))
    return EXIT_OK


def _report_text(rep) -> str:
    lines = [f"q={rep.q_label} m={rep.m} ell={rep.ell} alpha={','.join(map(str, rep.alpha))} seed={rep.seed} "
             f"status={rep.status} ({rep.runtime_ms:.0f} ms)"]
    for c in rep.checks:
        lines.append(f"  [{c.status:>11}] {c.name}: expected {c.expected}, observed {c.observed}")
    return "\n".join(lines) + "\n"


def cmd_verify(args) -> int:
    if args.sweep:
        reports = verify_sweep(args.max_m, args.qs, args.budget_messages, args.budget_subspaces,
                               args.checks, args.seed, args.samples)
    else:
        ds, F = _instance(args)
        reports = [verify_instance(ds, F, args.budget_messages, args.budget_subspaces,
                                   args.checks, args.seed, args.samples)]
    if args.format == "json":
        _emit(args, _dump([r.to_dict() for r in reports]))
    elif args.format == "csv":
        rows = [["q", "m", "alpha", "check", "status", "expected", "observed"]]
        rows += [[r.q_label, r.m, ",".join(map(str, r.alpha)), c.name, c.status, c.expected, c.observed]
                 for r in reports for c in r.checks]
        _emit(args, _csv(rows))
    else:
        text = "".join(_report_text(r) for r in reports)
        if args.sweep:
            s = sweep_summary(reports)
            text += (f"instances={s['instances']} failures={len(s['failures'])} "
                     f"report_only={len(s['report_only'])} skipped={len(s['skipped'])}\n")
        _emit(args, text)
    if any(r.status == "fail" for r in reports):
        return EXIT_FAIL
    if any(r.status == "budget" for r in reports) and not args.sweep:
        return EXIT_BUDGET
    return EXIT_OK


def cmd_subspace_count(args) -> int:
    F = parse_q(args.q)
    formula = count_subspaces_formula(args.b, args.a, args.r, args.u, F.q)
    out = {"q": F.q, "b": args.b, "a": args.a, "r": args.r, "u": args.u, "formula": formula}
    status = EXIT_OK
    if args.check:
        brute = count_subspaces_bruteforce(F, args.b, args.a, args.r, args.u, args.budget_subspaces)
        out["brute"] = brute
        out["status"] = "pass" if brute == formula else "fail"
        status = EXIT_OK if brute == formula else EXIT_FAIL
    if args.format == "json":
        _emit(args, _dump(out))
    elif args.format == "csv":
        _emit(args, _csv([list(out), list(out.values())]))
    else:
        text = f"formula {formula}"
        if args.check:
            text += f", brute {out['brute']}, {out['status']}"
        _emit(args, text + "\n")
    return status


COMMANDS = {
    "params": cmd_params,
    "points": cmd_points,
    "genmat": cmd_genmat,
    "spectrum": cmd_spectrum,
    "minwords": cmd_minwords,
    "verify": cmd_verify,
    "subspace-count": cmd_subspace_count,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except BudgetExceeded as err:
        print(f"budget exhausted: {err}", file=sys.stderr)
        return EXIT_BUDGET
    except (InvalidInput, ValueError) as err:
        print(f"invalid input: {err}", file=sys.stderr)
        return EXIT_INPUT
    except SchubertError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
