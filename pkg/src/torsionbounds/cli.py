"""Command-line surface.

One subcommand per artifact: `bounds` evaluates the polynomial torsion
bounds per curve record, `candidates` runs the exponent sieve, `b-epsilon`
prints the extremal totient constant, `b1-index` the upper-triangular index
formula, `lattice-check` the lattice index comparisons, `baselines` the
prior explicit bounds, and `verify` the full enumeration-backed suite.

Exit codes: 0 success, 1 usage or parse error, 2 any failed verification.
All numeric flags are exact integers or rationals ("1/2"); reports are
byte-identical across identical invocations.  The environment variable
TORSIONBOUNDS_ENUMERATION_CAP overrides the group-enumeration cap.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import lattice
from .arith import ArithError, b_epsilon, dedekind_psi, euler_phi
from .bounds import (
    BoundContext,
    BoundsError,
    baselines,
    exponent_candidates,
    theorem_bounds,
)
from .modmatrix import (
    DEFAULT_ENUMERATION_CAP,
    ModMatrixError,
    b1_subgroup,
    enumerate_gl2,
)
from .records import RecordParseError, check_isogeny_class_indices, parse_curve_records
from .verify import format_report, run_verification_suite

CAP_ENV = "TORSIONBOUNDS_ENUMERATION_CAP"

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_FAILED = 2


class _Parser(argparse.ArgumentParser):
    """argparse exits with status 2 on usage errors; we reserve 2 for
    failed verifications, so remap to 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _enumeration_cap() -> int:
    raw = os.environ.get(CAP_ENV)
    if raw is None:
        return DEFAULT_ENUMERATION_CAP
    try:
        cap = int(raw)
        if cap < 1:
            raise ValueError
    except ValueError:
        raise SystemExit(f"{CAP_ENV} must be a positive integer, got {raw!r}")
    return cap


def _emit(payload: dict, fmt: str, plain_lines: list[str]) -> None:
    if fmt == "json":
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        for line in plain_lines:
            print(line)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="torsionbounds",
                     description="Exact polynomial torsion bound calculator.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument("--format", choices=("plain", "json"), default="plain")

    p = sub.add_parser("bounds", help="evaluate bounds per curve record")
    p.add_argument("records", help="curve-record CSV file, or - for stdin")
    p.add_argument("--epsilon", type=_rational, required=True,
                   help="rational epsilon in (0, 2), e.g. 1/2")
    p.add_argument("--degree", type=_positive_int, required=True,
                   help="target extension degree d")
    p.add_argument("--digits", type=_positive_int, default=12)
    add_format(p)

    p = sub.add_parser("candidates", help="sieve the admissible torsion exponents")
    p.add_argument("--index", type=_positive_int, required=True,
                   help="adelic index I")
    p.add_argument("--base-degree", type=_positive_int, default=1,
                   help="base field degree d0")
    p.add_argument("--degree", type=_positive_int, default=1,
                   help="target extension degree d")
    add_format(p)

    p = sub.add_parser("b-epsilon", help="extremal totient constant")
    p.add_argument("--epsilon", type=_rational, required=True)
    p.add_argument("--digits", type=_positive_int, default=12)
    add_format(p)

    p = sub.add_parser("b1-index", help="index of the upper-triangular subgroup")
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--verify", action="store_true",
                   help="cross-check the formula by full enumeration")
    add_format(p)

    p = sub.add_parser("lattice-check", help="lattice index comparisons")
    p.add_argument("--scenario-file",
                   help="scenario description file; bundled family if omitted")
    add_format(p)

    p = sub.add_parser("baselines", help="prior explicit bounds at degree d")
    p.add_argument("--degree", type=_positive_int, required=True)
    p.add_argument("--digits", type=_positive_int, default=12)
    add_format(p)

    p = sub.add_parser("verify", help="run the full verification suite")
    p.add_argument("--max-n", type=_positive_int, default=16)
    add_format(p)

    return parser


def _cmd_bounds(args) -> int:
    if args.records == "-":
        records = parse_curve_records(sys.stdin)
    else:
        with open(args.records, encoding="utf-8") as fh:
            records = parse_curve_records(fh)

    class_checks = check_isogeny_class_indices(records)
    rows, lines = [], []
    lines.append("# label d0 I d B candidate_max exponent_bound order_bound "
                 "parent hindry_silverman bn_exponent bn_order")
    for rec in records:
        ctx = BoundContext(rec.adelic_index, rec.base_degree, args.degree)
        cand = exponent_candidates(ctx)
        tb = theorem_bounds(ctx, args.epsilon, args.digits)
        base = baselines(args.degree, args.digits)
        hs = "n/a" if base.hindry_silverman is None else repr(base.hindry_silverman)
        bn_e = base.bn_exponent.decimal if base.bn_applicable else "n/a"
        bn_o = base.bn_order.decimal if base.bn_applicable else "n/a"
        lines.append(
            f"{rec.label} {rec.base_degree} {rec.adelic_index} {args.degree} "
            f"{cand.modulus} {max(cand.candidates)} "
            f"{tb.exponent_bound.decimal} {tb.order_bound.decimal} "
            f"{base.parent} {hs} {bn_e} {bn_o}")
        rows.append({
            "label": rec.label,
            "d0": rec.base_degree,
            "I": rec.adelic_index,
            "d": args.degree,
            "sieve_modulus": cand.modulus,
            "candidates": list(cand.candidates),
            "candidate_max": max(cand.candidates),
            "exponent_bound": tb.exponent_bound.decimal,
            "order_bound": tb.order_bound.decimal,
            "weak_epsilon": tb.weak_epsilon,
            "parent": base.parent,
            "hindry_silverman": base.hindry_silverman,
            "hs_log_note": base.hs_log_note,
            "bn_exponent": base.bn_exponent.decimal if base.bn_applicable else None,
            "bn_order": base.bn_order.decimal if base.bn_applicable else None,
        })
    if any(tb for tb in rows if tb["weak_epsilon"]):
        lines.append(f"# note: epsilon {args.epsilon} >= 1, bound valid but not sharp")
    lines.append("# note: hindry_silverman uses the natural logarithm")
    failed = [c for c in class_checks if not c.passed]
    for c in failed:
        lines.append(f"# FAIL isogeny class {c.isogeny_class}: labels "
                     f"{','.join(c.labels)} carry indices "
                     f"{','.join(map(str, c.indices))}")
    payload = {
        "epsilon": str(args.epsilon),
        "rows": rows,
        "isogeny_class_failures": [
            {"isogeny_class": c.isogeny_class, "labels": list(c.labels),
             "indices": list(c.indices)} for c in failed],
    }
    _emit(payload, args.format, lines)
    return EXIT_FAILED if failed else EXIT_OK


def _cmd_candidates(args) -> int:
    ctx = BoundContext(args.index, args.base_degree, args.degree)
    cand = exponent_candidates(ctx)
    lines = [
        f"sieve_modulus {cand.modulus}",
        f"ceiling {cand.ceiling}",
        "candidates " + " ".join(map(str, cand.candidates)),
    ]
    payload = {
        "I": ctx.I, "d0": ctx.d0, "d": ctx.d,
        "sieve_modulus": cand.modulus,
        "ceiling": cand.ceiling,
        "candidates": list(cand.candidates),
    }
    _emit(payload, args.format, lines)
    return EXIT_OK


def _cmd_b_epsilon(args) -> int:
    c = b_epsilon(args.epsilon, args.digits)
    lines = [
        f"epsilon {c.epsilon}",
        f"witness {c.witness}",
        f"value {c.decimal}",
    ]
    payload = {"epsilon": str(c.epsilon), "witness": c.witness,
               "value": c.decimal, "digits": c.digits}
    _emit(payload, args.format, lines)
    return EXIT_OK


def _cmd_b1_index(args) -> int:
    n = args.n
    if n < 2:
        print("b1-index: error: --n must be >= 2", file=sys.stderr)
        return EXIT_USAGE
    formula = euler_phi(n) * dedekind_psi(n)
    lines = [f"n {n}", f"index {formula}"]
    payload = {"n": n, "index": formula}
    status = EXIT_OK
    if args.verify:
        cap = _enumeration_cap()
        brute = len(enumerate_gl2(n, cap)) // b1_subgroup(n).order
        agree = brute == formula
        lines.append(f"enumerated {brute}")
        lines.append("verified" if agree else "MISMATCH")
        payload.update(enumerated=brute, verified=agree)
        if not agree:
            status = EXIT_FAILED
    _emit(payload, args.format, lines)
    return status


def _cmd_lattice_check(args) -> int:
    cap = _enumeration_cap()
    if args.scenario_file:
        with open(args.scenario_file, encoding="utf-8") as fh:
            scenarios = lattice.parse_scenarios(fh.read())
    else:
        scenarios = lattice.bundled_scenarios()
    lines, rows = [], []
    ok = True
    for sc in scenarios:
        res = lattice.run_scenario(sc, cap)
        pairs = " ".join(f"k={r.precision}:{r.index_T}/{r.index_Tprime}"
                         for r in res.reports)
        verdict = ("pass" if res.all_equal and res.stable
                   else "FAIL" if not res.all_equal else "UNSTABLE")
        lines.append(f"{sc.ident} {pairs} {verdict}")
        rows.append({
            "ident": sc.ident,
            "prime": sc.prime,
            "reports": [{"precision": r.precision, "index_T": r.index_T,
                         "index_Tprime": r.index_Tprime} for r in res.reports],
            "all_equal": res.all_equal,
            "stable": res.stable,
        })
        ok = ok and res.all_equal and res.stable
    lines.append(f"{'all equal and stable' if ok else 'FAILURES PRESENT'} "
                 f"({len(scenarios)} scenarios)")
    _emit({"scenarios": rows, "ok": ok}, args.format, lines)
    return EXIT_OK if ok else EXIT_FAILED


def _cmd_baselines(args) -> int:
    base = baselines(args.degree, args.digits)
    hs = "n/a" if base.hindry_silverman is None else repr(base.hindry_silverman)
    lines = [
        f"d {base.d}",
        f"parent {base.parent}",
        f"hindry_silverman {hs} ({base.hs_log_note})",
    ]
    if base.bn_applicable:
        lines.append(f"bn_exponent {base.bn_exponent.decimal}")
        lines.append(f"bn_order {base.bn_order.decimal}")
    else:
        lines.append("bn_exponent n/a (odd degrees only)")
        lines.append("bn_order n/a (odd degrees only)")
    payload = {
        "d": base.d,
        "parent": base.parent,
        "hindry_silverman": base.hindry_silverman,
        "hs_log_note": base.hs_log_note,
        "bn_exponent": base.bn_exponent.decimal if base.bn_applicable else None,
        "bn_order": base.bn_order.decimal if base.bn_applicable else None,
        "bn_applicable": base.bn_applicable,
    }
    _emit(payload, args.format, lines)
    return EXIT_OK


def _cmd_verify(args) -> int:
    cap = _enumeration_cap()
    report = run_verification_suite(args.max_n, cap)
    if args.format == "json":
        payload = {
            "checks": [{"name": c.name, "params": c.params, "status": c.status,
                        "detail": c.detail} for c in report.checks],
            "passed": report.passed,
            "failed": report.failed,
            "skipped": report.skipped,
            "ok": report.ok,
        }
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        print(format_report(report))
    return EXIT_OK if report.ok else EXIT_FAILED


_COMMANDS = {
    "bounds": _cmd_bounds,
    "candidates": _cmd_candidates,
    "b-epsilon": _cmd_b_epsilon,
    "b1-index": _cmd_b1_index,
    "lattice-check": _cmd_lattice_check,
    "baselines": _cmd_baselines,
    "verify": _cmd_verify,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else EXIT_USAGE
    try:
        return _COMMANDS[args.command](args)
    except (ArithError, BoundsError, ModMatrixError, RecordParseError,
            lattice.LatticeError) as exc:
        print(f"torsionbounds: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"torsionbounds: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
