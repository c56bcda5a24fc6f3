"""Command-line front end.

Exit codes: 0 success, 2 usage error, 3 mathematical inconsistency,
4 inconclusive saturation search.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from . import closed_forms
from .cone import DEFAULT_MAX_DEGREE, DEFAULT_WINDOW, torsion_direct
from .errors import InconclusiveError, InconsistencyError
from .gaussian import torsion_dim_kernel, torsion_witnesses
from .linalg import rank
from .quotient import (
    REFERENCE_LABELS,
    REFERENCE_TABLE,
    REPORT_FIELDS,
    classify,
    cotorsion_decision,
    invariant_generators,
)
from .sections import (
    h0_conormal,
    h1_ideal_squared,
    ideal_piece,
    make_context,
    multiplication_matrix,
    torsion_dim_via_sequence,
)

SCHEMA_VERSION = 1
EXIT_OK, EXIT_USAGE, EXIT_INCONSISTENT, EXIT_INCONCLUSIVE = 0, 2, 3, 4
TABLE_HEADER = ("singularity", "dim", "type", "Gorenstein", "torsion", "cotorsion")


@dataclass(frozen=True)
class RunConfig:
    r: int
    d: int
    m_range: range
    saturation_window: int = DEFAULT_WINDOW
    max_internal_degree: int = DEFAULT_MAX_DEGREE
    output_format: str = "text"
    compute_witnesses: bool = False
    compute_direct: bool = False

    def __post_init__(self):
        if self.r < 1 or self.d < 1:
            raise ValueError("--r and --d must be >= 1")
        if len(self.m_range) == 0 or self.m_range.start < 1:
            raise ValueError("--m-range must be a nonempty range of degrees >= 1")
        if self.saturation_window < 1:
            raise ValueError("--window must be >= 1")


def parse_range(text: str) -> range:
    try:
        lo, hi = text.split("..")
        lo, hi = int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected A..B, got {text!r}") from None
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return range(lo, hi + 1)


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _dump_csv(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _text_table(header, rows) -> str:
    rows = [tuple(str(c) for c in row) for row in rows]
    widths = [max(len(str(h)), *(len(row[k]) for row in rows)) for k, h in enumerate(header)]
    lines = ["  ".join(str(h).ljust(w) for h, w in zip(header, widths)).rstrip()]
    lines.extend("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in rows)
    return "\n".join(lines) + "\n"


def _csv_value(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


# -- report ----------------------------------------------------------------


def cmd_report(config: RunConfig, kernel: bool = True) -> tuple[str, int]:
    report = classify(config.r, config.d, compute_torsion=kernel)
    ctx = make_context(config.r, config.d)
    extra = {}
    if config.compute_witnesses:
        extra["witnesses"] = [w.to_json() for w in torsion_witnesses(ctx)] if config.d >= 3 else []
    if config.compute_direct:
        extra["torsion_direct"] = {
            str(m): torsion_direct(ctx, m, config.saturation_window, config.max_internal_degree)
            for m in config.m_range
        }
    data = report.to_dict()
    if config.output_format == "json":
        return _dump_json({"schema_version": SCHEMA_VERSION, "report": data, **extra}), EXIT_OK
    if config.output_format == "csv":
        return _dump_csv(REPORT_FIELDS, [[_csv_value(data[f]) for f in REPORT_FIELDS]]), EXIT_OK
    lines = [report.name]
    lines.extend(f"  {f:<17} {_csv_value(data[f]) or '-'}" for f in REPORT_FIELDS)
    if "torsion_direct" in extra:
        for m, v in extra["torsion_direct"].items():
            lines.append(f"  torsion_direct[{m}] {v}")
    if "witnesses" in extra:
        for w in torsion_witnesses(ctx) if config.d >= 3 else []:
            lines.append(f"  witness           {w.render()}")
    return "\n".join(lines) + "\n", EXIT_OK


# -- table1 ----------------------------------------------------------------


def table1_rows() -> list[tuple]:
    rows = []
    for r, d in REFERENCE_TABLE:
        row = classify(r, d).table_row()
        rows.append((REFERENCE_LABELS.get((r, d), row[0]),) + row[1:])
    return rows


def cmd_table1(output_format: str = "text") -> tuple[str, int, list[str]]:
    rows = table1_rows()
    problems = []
    for (r, d), row in zip(REFERENCE_TABLE, rows):
        if tuple(row[1:]) != REFERENCE_TABLE[r, d]:
            problems.append(f"X_{{{r},{d}}}: computed {row[1:]} but published {REFERENCE_TABLE[r, d]}")
    if output_format == "json":
        body = _dump_json(
            {"schema_version": SCHEMA_VERSION, "rows": [dict(zip(TABLE_HEADER, row)) for row in rows]}
        )
    elif output_format == "csv":
        body = _dump_csv(TABLE_HEADER, rows)
    else:
        body = _text_table(TABLE_HEADER, rows)
    return body, (EXIT_INCONSISTENT if problems else EXIT_OK), problems


# -- verify ----------------------------------------------------------------


@dataclass
class Check:
    name: str
    lhs: object
    rhs: object
    relation: str
    status: str  # PASS / FAIL / INCONCLUSIVE

    def line(self) -> str:
        return f"{self.status:<12} {self.name}: {self.lhs} {self.relation} {self.rhs}"


def _compare(name, lhs, rhs, relation="==") -> Check:
    ok = {"==": lhs == rhs, ">=": lhs >= rhs, ">": lhs > rhs}[relation]
    return Check(name, lhs, rhs, relation, "PASS" if ok else "FAIL")


def run_checks(config: RunConfig) -> list[Check]:
    r, d = config.r, config.d
    ctx = make_context(r, d)
    checks: list[Check] = []

    def guarded(name, fn):
        try:
            checks.extend(fn())
        except InconclusiveError as exc:
            checks.append(Check(name, str(exc), "-", "~", "INCONCLUSIVE"))
        except InconsistencyError as exc:
            checks.append(Check(name, str(exc), "-", "!", "FAIL"))

    for m in config.m_range:
        guarded(f"projective normality m={m}", lambda: [
            _compare(f"projective normality m={m}", rank(multiplication_matrix(ctx, m)), closed_forms.binom(m * d + r, r))
        ])
        guarded(f"ideal dimension m={m}", lambda: [
            _compare(f"ideal dimension m={m}", ideal_piece(ctx, m).dim, closed_forms.h0_ideal(r, d, m))
        ])
        guarded(f"conormal bound m={m}", lambda: [
            _compare(f"conormal bound m={m}", h0_conormal(ctx, m), closed_forms.conormal_lower_bound(r, d, m), ">=")
        ])
        if m != 2:
            guarded(f"h1 vanishing m={m}", lambda: [_compare(f"h1 vanishing m={m}", h1_ideal_squared(ctx, m), 0)])
    if d >= 3:
        guarded("conormal excess m=2", lambda: [
            _compare("conormal excess m=2", h0_conormal(ctx, 2) - ideal_piece(ctx, 2).dim, 0, ">")
        ])
        checks.append(_compare("positivity estimate", closed_forms.toshow_lhs(r, d), 0, ">"))

    kernel = torsion_dim_kernel(ctx)
    guarded("torsion kernel = sequence", lambda: [
        _compare("torsion kernel = sequence", kernel, torsion_dim_via_sequence(ctx))
    ])
    checks.append(_compare("torsion iff d >= 3", kernel > 0, d >= 3))
    if config.compute_direct:
        for m in config.m_range:
            expected = kernel if m == 2 else 0
            guarded(f"torsion direct m={m}", lambda: [
                _compare(f"torsion direct m={m}", torsion_direct(ctx, m, config.saturation_window, config.max_internal_degree), expected)
            ])
    if config.compute_witnesses:
        guarded("witness count", lambda: [_compare("witness count", len(torsion_witnesses(ctx)), kernel)])

    has_cot, excess = cotorsion_decision(r, d)
    checks.append(_compare("cotorsion excess closed form", excess, closed_forms.cotorsion_excess(r, d)))
    checks.append(_compare("cotorsion iff d >= 2", has_cot, d >= 2))
    checks.append(_compare("invariant generators minimal", invariant_generators(r, d).certify_minimal(), True))
    report = classify(r, d)
    checks.append(_compare("gorenstein iff integral discrepancy", report.gorenstein, report.discrepancy.denominator == 1))
    return checks


def cmd_verify(config: RunConfig) -> tuple[str, int]:
    checks = run_checks(config)
    if any(c.status == "FAIL" for c in checks):
        code = EXIT_INCONSISTENT
    elif any(c.status == "INCONCLUSIVE" for c in checks):
        code = EXIT_INCONCLUSIVE
    else:
        code = EXIT_OK
    if config.output_format == "json":
        body = _dump_json({
            "schema_version": SCHEMA_VERSION,
            "r": config.r,
            "d": config.d,
            "checks": [
                {"name": c.name, "lhs": _csv_value(c.lhs), "relation": c.relation, "rhs": _csv_value(c.rhs), "status": c.status}
                for c in checks
            ],
            "passed": code == EXIT_OK,
        })
        return body, code
    lines = [c.line() for c in checks]
    passed = sum(c.status == "PASS" for c in checks)
    lines.append(f"{passed}/{len(checks)} checks passed for X_{{{config.r},{config.d}}}")
    return "\n".join(lines) + "\n", code


# -- scan ------------------------------------------------------------------


def _scan_row(args: tuple[int, int, bool]) -> tuple[dict | None, str]:
    r, d, kernel = args
    try:
        return classify(r, d, compute_torsion=kernel).to_dict(), ""
    except (InconsistencyError, ValueError, MemoryError) as exc:
        return None, f"{type(exc).__name__}: {exc}"


def cmd_scan(r_max: int, d_max: int, output_format: str = "csv", jobs: int = 1, kernel: bool = True) -> tuple[str, int]:
    tasks = [(r, d, kernel) for r in range(1, r_max + 1) for d in range(1, d_max + 1)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_scan_row, tasks))
    else:
        results = [_scan_row(t) for t in tasks]
    header = REPORT_FIELDS + ("error",)
    rows = []
    for (r, d, _), (data, err) in zip(tasks, results):
        data = data or {"r": r, "d": d}
        rows.append([data.get(f) for f in REPORT_FIELDS] + [err])
    code = EXIT_INCONSISTENT if any(row[-1] for row in rows) else EXIT_OK
    if output_format == "json":
        return _dump_json({"schema_version": SCHEMA_VERSION, "rows": [dict(zip(header, row)) for row in rows]}), code
    cells = [[_csv_value(v) for v in row] for row in rows]
    if output_format == "csv":
        return _dump_csv(header, cells), code
    return _text_table(header, cells), code


# -- witnesses -------------------------------------------------------------


def cmd_witness(r: int, d: int, output_format: str = "text") -> tuple[str, int]:
    ctx = make_context(r, d)
    if d == 1:
        witnesses, message = [], "smooth"
    elif d <= 2:
        witnesses, message = [], "no torsion (d ≤ 2)"
    else:
        witnesses = torsion_witnesses(ctx)
        message = f"{len(witnesses)} verified witness(es)"
    if output_format == "json":
        return _dump_json({
            "schema_version": SCHEMA_VERSION,
            "r": r,
            "d": d,
            "t_basis": [ctx.x_label(t) for t in ctx.t_basis],
            "witnesses": [w.to_json() for w in witnesses],
            "verified": [w.is_cycle() for w in witnesses],
            "message": message,
        }), EXIT_OK
    lines = [f"X_{{{r},{d}}}: {message}"]
    for k, w in enumerate(witnesses, 1):
        lines.append(f"  [{k}] verified  {w.render()}")
    return "\n".join(lines) + "\n", EXIT_OK


# -- entry point -----------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="veronese-omega", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def fmt(p):
        g = p.add_mutually_exclusive_group()
        g.add_argument("--json", action="store_true", help="emit JSON")
        g.add_argument("--csv", action="store_true", help="emit CSV")

    def rd(p):
        p.add_argument("--r", type=int, required=True, help="dimension of the projective space")
        p.add_argument("--d", type=int, required=True, help="Veronese degree")

    def saturation(p, default_range):
        p.add_argument("--m-range", type=parse_range, default=parse_range(default_range), metavar="A..B")
        p.add_argument("--window", type=int, default=DEFAULT_WINDOW)
        p.add_argument("--max-degree", type=int, default=DEFAULT_MAX_DEGREE)

    p = sub.add_parser("report", help="singularity report for one X_{r,d}")
    rd(p)
    fmt(p)
    saturation(p, "1..4")
    p.add_argument("--witnesses", action="store_true", help="include Gaussian-kernel witnesses")
    p.add_argument("--direct", action="store_true", help="include cone-side torsion per degree")
    p.add_argument("--no-kernel", action="store_true", help="skip the Gaussian kernel dimension")

    p = sub.add_parser("table1", help="reproduce the reference table of Veronese cones")
    fmt(p)

    p = sub.add_parser("verify", help="run every cross-check for one X_{r,d}")
    rd(p)
    saturation(p, "1..4")
    p.add_argument("--json", action="store_true")
    p.add_argument("--no-direct", action="store_true", help="skip the cone-side saturation check")
    p.add_argument("--witnesses", action="store_true", help="also check witness soundness")

    p = sub.add_parser("scan", help="CSV (default) or JSON reports for all 1 <= r <= R_MAX, 1 <= d <= D_MAX")
    p.add_argument("r_max", type=int)
    p.add_argument("d_max", type=int)
    fmt(p)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--no-kernel", action="store_true")

    p = sub.add_parser("witness", help="list verified torsion witnesses")
    rd(p)
    p.add_argument("--json", action="store_true")
    return parser


def _format(args) -> str:
    if getattr(args, "json", False):
        return "json"
    if getattr(args, "csv", False):
        return "csv"
    return "text"


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = sys.stdout
    try:
        if args.command == "table1":
            body, code, problems = cmd_table1(_format(args))
            out.write(body)
            for p in problems:
                print(f"mismatch: {p}", file=sys.stderr)
            return code
        if args.command == "scan":
            if args.r_max < 1 or args.d_max < 1 or args.jobs < 1:
                parser.error("scan bounds and --jobs must be >= 1")
            fmt = "json" if args.json else "csv"
            body, code = cmd_scan(args.r_max, args.d_max, fmt, jobs=args.jobs, kernel=not args.no_kernel)
            out.write(body)
            return code
        if args.r < 1 or args.d < 1:
            parser.error("--r and --d must be >= 1")
        if args.command == "witness":
            body, code = cmd_witness(args.r, args.d, _format(args))
            out.write(body)
            return code
        try:
            config = RunConfig(
                r=args.r,
                d=args.d,
                m_range=args.m_range,
                saturation_window=args.window,
                max_internal_degree=args.max_degree,
                output_format=_format(args),
                compute_witnesses=args.witnesses,
                compute_direct=(not args.no_direct) if args.command == "verify" else args.direct,
            )
        except ValueError as exc:
            parser.error(str(exc))
        if args.command == "report":
            body, code = cmd_report(config, kernel=not args.no_kernel)
        else:
            body, code = cmd_verify(config)
        out.write(body)
        return code
    except InconsistencyError as exc:
        print(f"inconsistency: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT
    except InconclusiveError as exc:
        print(f"inconclusive: {exc}", file=sys.stderr)
        return EXIT_INCONCLUSIVE


if __name__ == "__main__":
    sys.exit(main())
