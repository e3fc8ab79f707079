"""Command line entry point.

Exit codes: 0 when every check passes, 1 when a check fails, 2 for usage
errors (bad flags, unreadable spec files), 3 when a word would exceed the
materialization cap.  Rationals are written as ``num/den``.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from pathlib import Path

from .complexity import (cassaigne_check, detect_quasi_sturmian, language_sample, right_special,
                         subshift_complexity)
from .construction import DEFAULT_CAP, build_word
from .errors import (CapacityError, ClassificationError, PreconditionError, StabilizationError,
                     TableExhaustedError)
from .family import (GrowthFunction, TheTsParams, breakpoint_profile, choose_params_minimal,
                     choose_params_msj, choose_params_totally_ergodic, classify_rs, minimal_certificates,
                     predicted_complexity, predicted_increment, totally_ergodic_certificates)
from .rewrite import MergeSchedule, merge_stage, merge_stages, shift_constant, verify_same_language
from .specfile import SpecFormatError, dump, load_spec, spec_to_dict
from .tower import LevelSet, column_view, finite_measure_report, kappa_check, wm_diagnostic

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAPACITY = 0, 1, 2, 3


class UsageError(Exception):
    pass


def fmt(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_fraction(text: str) -> Fraction:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational N/D: {text!r}") from None
    if value <= 0:
        raise argparse.ArgumentTypeError("epsilon must be positive")
    return value


def positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


class Report:
    """Tab-separated check lines: name, status, expected, measured."""

    def __init__(self, stream):
        self.stream = stream
        self.failed = False

    def check(self, name, ok, expected, measured):
        status = {True: "pass", False: "fail", None: "indeterminate"}[ok]
        self.failed |= ok is False
        self.stream.write(f"{name}\t{status}\t{expected}\t{measured}\n")

    def info(self, name, expected, measured):
        self.stream.write(f"{name}\tinfo\t{expected}\t{measured}\n")

    @property
    def code(self) -> int:
        return EXIT_FAIL if self.failed else EXIT_OK


def _write_rows(path, header, rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    if path is None or path == "-":
        sys.stdout.write(buf.getvalue())
    else:
        Path(path).write_text(buf.getvalue())


def _write_text(path, text):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _params(spec) -> TheTsParams:
    if spec.the_ts is None:
        raise UsageError("this command needs a the_ts spec")
    return TheTsParams.from_spec(spec)


def cmd_build(args) -> int:
    spec = load_spec(args.spec)
    rows = []
    for n in range(1, args.n + 1):
        state = build_word(spec, n, args.cap)
        rows.append((n, state.height, state.zero_count))
    _write_rows(args.out, ("n", "height", "zero_count"), rows)
    if args.word:
        Path(args.word).write_text(str(spec.word(args.n, args.cap)) + "\n")
    return EXIT_OK


def cmd_complexity(args) -> int:
    spec = load_spec(args.spec)
    table = subshift_complexity(spec, args.max_q + 1, args.cap)
    header = ["q", "p", "delta", "ratio_num", "ratio_den"]
    if args.float:
        header.append("ratio_float")
    rows = []
    for q in range(1, args.max_q + 1):
        r = table.ratio(q)
        row = [q, table.p(q), table.delta(q), r.numerator, r.denominator]
        if args.float:
            row.append(f"{float(r):.12f}")
        rows.append(row)
    _write_rows(args.out, header, rows)
    return EXIT_OK


def cmd_right_special(args) -> int:
    spec = load_spec(args.spec)
    params = TheTsParams.from_spec(spec) if spec.the_ts is not None else None
    rows = []
    for q, records in sorted(right_special(spec, args.max_q, args.cap).items()):
        for rec in records:
            family, stage = "unclassified", ""
            if params is not None and q > 1:
                try:
                    family, stage = classify_rs(rec.word, params, args.cap)
                except ClassificationError:
                    pass
            rows.append((q, str(rec.word), family, stage))
    _write_rows(args.out, ("q", "word", "family", "stage"), rows)
    return EXIT_OK


def cmd_predict(args) -> int:
    spec = load_spec(args.spec)
    params = _params(spec)
    p = predicted_complexity(params, args.q)
    n = params.stage_of(args.q)
    out = sys.stdout
    out.write("q\tstage\tpredicted_p\tpredicted_delta\n")
    out.write(f"{args.q}\t{n}\t{p}\t{predicted_increment(params, args.q)}\n")
    if args.measure:
        measured = subshift_complexity(spec, args.q, args.cap).p(args.q)
        report = Report(out)
        report.check(f"p({args.q})", measured == p, p, measured)
        return report.code
    return EXIT_OK


def _load_growth(path) -> GrowthFunction:
    if path is None:
        raise UsageError("--f is required for this mode")
    if path in GrowthFunction.NAMES:
        return GrowthFunction(name=path)
    try:
        return GrowthFunction.from_json(json.loads(Path(path).read_text()))
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise UsageError(f"{path}: not a growth-function file ({exc})") from None


def cmd_select_params(args) -> int:
    report = Report(sys.stderr if args.out is None else sys.stdout)
    if args.mode == "msj":
        if args.epsilon is None:
            raise UsageError("--epsilon is required for msj")
        params = choose_params_msj(args.epsilon)
        g = params.gamma(1)
        report.check("1/(gamma+1) < epsilon", Fraction(1, g + 1) < args.epsilon, fmt(args.epsilon), fmt(Fraction(1, g + 1)))
    elif args.mode == "minimal":
        if args.epsilon is None:
            raise UsageError("--epsilon is required for minimal")
        f = _load_growth(args.f)
        params = choose_params_minimal(args.epsilon, f)
        g = params.gamma(1)
        report.check("1/(4gamma+2) < epsilon", Fraction(1, 4 * g + 2) < args.epsilon, fmt(args.epsilon),
                     fmt(Fraction(1, 4 * g + 2)))
        for c in minimal_certificates(params, f, args.stages):
            report.check(c.name, c.holds, c.rhs if c.rhs is None else fmt(c.rhs), fmt(c.lhs))
    else:
        f = _load_growth(args.f)
        params = choose_params_totally_ergodic(f)
        for c in totally_ergodic_certificates(params, f, args.stages):
            rhs = c.rhs if c.rhs is None else fmt(c.rhs)
            report.check(c.name, c.holds, rhs, fmt(c.lhs))
    _write_text(args.out, dump(params.to_json(args.stages)))
    return report.code


def _transformed(spec, op, values):
    if op == "merge":
        if len(values) != 1:
            raise UsageError("merge takes one argument N")
        N = values[0]
        return merge_stage(spec, N), (lambda t: t if t <= N else t + 1)
    if op == "merge-multi":
        points = tuple(values) if values and values[0] == 1 else (1,) + tuple(values)
        try:
            sched = MergeSchedule(points)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        return merge_stages(spec, sched), sched.n
    if len(values) != 3:
        raise UsageError("shift-c takes N c d")
    return shift_constant(spec, *values), None


def cmd_transform(args) -> int:
    spec = load_spec(args.spec)
    new, stage_map = _transformed(spec, args.op, args.args)
    doc = dump(spec_to_dict(new, args.horizon))
    stream = sys.stdout if args.out is not None else sys.stderr
    report = Report(stream)
    _write_text(args.out, doc)
    for t in range(2, args.horizon + 1):
        if stage_map is None:
            N, c = args.args[0], args.args[1]
            if t <= N:
                continue
            if spec.height(t) + c > args.cap:
                break
            ok = new.word(t, args.cap) == spec.word(t, args.cap) + "1" * c
            report.check(f"B~_{t} = B_{t}.1^{c}", ok, "equal", "equal" if ok else "differ")
        else:
            n = stage_map(t)
            if spec.height(n) > args.cap:
                break
            ok = new.word(t, args.cap) == spec.word(n, args.cap)
            report.check(f"B~_{t} = B_{n}", ok, "equal", "equal" if ok else "differ")
    if args.verify_q:
        same = verify_same_language(spec, new, args.verify_q, args.cap)
        report.check(f"same language up to q={args.verify_q}", same, "true", str(same).lower())
    return report.code


def _tower_kappa(args, spec, report):
    j = args.ell if args.level is None else args.level
    rows = []
    for rec in kappa_check(spec, args.n, args.ell, j, args.depth_cap):
        rows.append((args.n, args.ell, j, rec.target, rec.t, fmt(rec.kappa), fmt(rec.bound),
                     fmt(rec.measured_lo), fmt(rec.measured_hi),
                     {True: "true", False: "false", None: "indeterminate"}[rec.holds]))
        report.check(f"kappa n={args.n} ell={args.ell} {rec.target}", rec.holds, f">= {fmt(rec.bound)}",
                     fmt(rec.measured_lo))
    _write_rows(args.out, ("n", "ell", "level", "target", "t", "kappa", "bound", "lo", "hi", "holds"), rows)


def _tower_finite(args, spec, report):
    rep = finite_measure_report(spec, args.n)
    rows = []
    for n, (s, m) in enumerate(zip(rep.partial_sums, rep.column_measures), start=1):
        row = [n, fmt(s), fmt(m)]
        if args.float:
            row += [f"{float(s):.12f}", f"{float(m):.12f}"]
        rows.append(row)
    header = ["n", "partial_sum", "column_measure"] + (["partial_sum_float", "column_measure_float"] if args.float else [])
    _write_rows(args.out, header, rows)
    report.check(f"mu(C_{args.n}) <= product bound", rep.bounded, f"<= {fmt(rep.product_bound)}",
                 fmt(rep.column_measures[-1]))


def _tower_wm(args, spec, report):
    level = 0 if args.level is None else args.level
    A = LevelSet(args.n, [level])
    cap = args.depth_cap if args.depth_cap is not None else args.n + 4
    curve = wm_diagnostic(spec, A, A, args.t_max, cap)
    header = ["t", "lo_num", "lo_den", "hi_num", "hi_den"] + (["lo_float", "hi_float"] if args.float else [])
    rows = []
    for pt in curve:
        row = [pt.t, pt.lo.numerator, pt.lo.denominator, pt.hi.numerator, pt.hi.denominator]
        if args.float:
            row += [f"{float(pt.lo):.12e}", f"{float(pt.hi):.12e}"]
        rows.append(row)
    _write_rows(args.out, header, rows)


def cmd_tower(args) -> int:
    spec = load_spec(args.spec)
    report = Report(sys.stderr if args.out is None else sys.stdout)
    {"kappa": _tower_kappa, "finite-measure": _tower_finite, "wm": _tower_wm}[args.check](args, spec, report)
    return report.code


def _profile_comp(spec, args, report):
    params = _params(spec)
    table = subshift_complexity(spec, spec.height(4), args.cap)
    for n in (2, 3, 4):
        h = spec.height(n)
        expected = (1 + Fraction(1, params.L(n - 1))) * h
        report.check(f"p(h_{n})", table.p(h) == expected, fmt(expected), fmt(table.p(h)))


def _profile_bands(spec, args, report):
    params = _params(spec)
    lo, hi = spec.height(2), spec.height(4)
    table = subshift_complexity(spec, hi + 1, args.cap)
    bad = [q for q in range(lo + 1, hi + 1) if table.delta(q) != predicted_increment(params, q)]
    for n in (2, 3):
        report.info(f"bands stage {n}", "", " ".join(f"({a},{b}]:{k}" for a, b, k in breakpoint_profile(params, n).bands))
    report.check(f"delta(q) on ({lo},{hi}]", not bad, "predicted", "all match" if not bad else f"first mismatch q={bad[0]}")


def _profile_kappa(spec, args, report):
    for n in (3, 4, 5):
        for ell in (1, 2):
            for rec in kappa_check(spec, n, ell, ell):
                report.check(f"kappa n={n} ell={ell} {rec.target}", rec.holds, f">= {fmt(rec.bound)}",
                             fmt(rec.measured_lo))


def _profile_complexity(spec, args, report):
    Q = args.max_q
    sample = language_sample(spec, Q, args.cap)
    table = sample.table
    report.check(f"cassaigne q<={Q}", cassaigne_check(table, sample.rs_counts), "identity", "checked")
    start = max(1, Q // 2)
    c = detect_quasi_sturmian(table, start)
    bounded = len(set(table.values[start - 1:])) == 1
    if bounded:
        report.info("tail shape", "", f"constant p = {table.p(Q)} on [{start},{Q}] (periodic)")
    elif c is not None:
        report.info("tail shape", "", f"p(q) = q + {c} on [{start},{Q}]")
    else:
        report.info("tail shape", "", f"p({Q})/{Q} = {fmt(table.ratio(Q))}")
        floor = all(table.p(q) >= q + 1 for q in range(1, Q + 1))
        report.check(f"p(q) >= q+1 for q<={Q}", floor, "true", str(floor).lower())


def _profile_finite(spec, args, report):
    rep = finite_measure_report(spec, 6)
    mono = all(a <= b for a, b in zip(rep.column_measures, rep.column_measures[1:]))
    report.check("mu(C_n) nondecreasing", mono, "true", str(mono).lower())
    report.check("mu(C_6) <= product bound", rep.bounded, f"<= {fmt(rep.product_bound)}", fmt(rep.column_measures[-1]))


def _profile_rewrite(spec, args, report):
    new = merge_stage(spec, 1)
    for t in range(2, 5):
        if spec.height(t + 1) > args.cap:
            break
        ok = new.word(t, args.cap) == spec.word(t + 1, args.cap)
        report.check(f"merge B~_{t} = B_{t + 1}", ok, "equal", "equal" if ok else "differ")
    same = verify_same_language(spec, new, min(args.max_q, 100), args.cap)
    report.check("merge preserves language", same, "true", str(same).lower())


PROFILES = {
    "comp": _profile_comp,
    "bands": _profile_bands,
    "kappa": _profile_kappa,
    "complexity": _profile_complexity,
    "finite-measure": _profile_finite,
    "rewrite": _profile_rewrite,
}


def cmd_verify(args) -> int:
    spec = load_spec(args.spec)
    report = Report(sys.stdout)
    PROFILES[args.profile](spec, args, report)
    return report.code


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rankone", description="Rank-one subshift complexity toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, spec=True):
        p = sub.add_parser(name, help=help_text)
        if spec:
            p.add_argument("--spec", required=True, help="JSON spec file")
        p.add_argument("--cap", type=positive_int, default=DEFAULT_CAP, help="materialization cap (symbols)")
        p.set_defaults(func=func)
        return p

    p = add("build", cmd_build, "heights and zero counts of B_1..B_n")
    p.add_argument("--n", type=positive_int, default=5)
    p.add_argument("--out")
    p.add_argument("--word", help="also write B_n to this file")

    p = add("complexity", cmd_complexity, "exact p(q) table as CSV")
    p.add_argument("--max-q", type=positive_int, required=True)
    p.add_argument("--out")
    p.add_argument("--float", action="store_true", help="add a decimal ratio column")

    p = add("right-special", cmd_right_special, "right-special words by length")
    p.add_argument("--max-q", type=positive_int, required=True)
    p.add_argument("--out")

    p = add("predict", cmd_predict, "closed-form p(q) for a the_ts spec")
    p.add_argument("--q", type=positive_int, required=True)
    p.add_argument("--measure", action="store_true", help="compare with the brute-force count")

    p = add("select-params", cmd_select_params, "parameter recipes", spec=False)
    p.add_argument("--mode", choices=("minimal", "dreal", "msj"), required=True)
    p.add_argument("--epsilon", type=parse_fraction)
    p.add_argument("--f", help="growth function name, or JSON file: {\"name\": ...} or {\"table\": [...]}")
    p.add_argument("--stages", type=positive_int, default=4)
    p.add_argument("--out")

    p = add("transform", cmd_transform, "rewrite a presentation and verify it")
    p.add_argument("--op", choices=("merge", "merge-multi", "shift-c"), required=True)
    p.add_argument("--args", type=int, nargs="+", required=True)
    p.add_argument("--verify-q", type=positive_int)
    p.add_argument("--horizon", type=positive_int, default=6)
    p.add_argument("--out")

    p = add("tower", cmd_tower, "cutting-and-stacking checks")
    p.add_argument("--check", choices=("kappa", "finite-measure", "wm"), required=True)
    p.add_argument("--n", type=positive_int, required=True)
    p.add_argument("--ell", type=int, default=1)
    p.add_argument("--level", type=int)
    p.add_argument("--t-max", type=positive_int, default=200)
    p.add_argument("--depth-cap", type=positive_int)
    p.add_argument("--out")
    p.add_argument("--float", action="store_true")

    p = add("verify", cmd_verify, "named check profiles")
    p.add_argument("--profile", choices=sorted(PROFILES), required=True)
    p.add_argument("--max-q", type=positive_int, default=200)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CapacityError as exc:
        print(f"capacity error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (PreconditionError, StabilizationError, TableExhaustedError) as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (UsageError, SpecFormatError, OSError, ValueError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
