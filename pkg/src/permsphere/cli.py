"""Command-line interface: dist, sphere, ball, beta, poly, verify."""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import enumeration, growth, verify as verify_mod
from .enumeration import beta_table, count_report, size_bound
from .metrics import MetricId, distance, distance_to_identity
from .perm import Permutation


def _emit_rows(fmt: str, rows: list[dict], text_lines: list[str]) -> None:
    if fmt == "json":
        doc = rows[0] if len(rows) == 1 else rows
        print(json.dumps(doc, indent=2))
    elif fmt == "csv":
        out = io.StringIO()
        writer = csv.DictWriter(out, fieldnames=list(rows[0].keys()))
        writer.writeheader()
        for row in rows:
            writer.writerow(row)
        print(out.getvalue(), end="")
    else:
        for line in text_lines:
            print(line)


def _metric(text: str) -> MetricId:
    try:
        return MetricId.parse(text)
    except ValueError as exc:
        raise SystemExit(f"error: {exc}")


def cmd_dist(args) -> int:
    metric = _metric(args.metric)
    try:
        u = Permutation.parse(args.perm)
        v = Permutation.parse(args.perm2) if args.perm2 else None
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    value = distance(metric, u, v) if v is not None else distance_to_identity(metric, u)
    scale = f"p-th power (p={metric.p})" if metric.kind == "lp" else "distance"
    row = {"metric": metric.name, "value": str(value), "scale": scale}
    text = [f"{value} ({scale})" if metric.kind == "lp" else str(value)]
    _emit_rows(args.format, [row], text)
    return 0


def _cmd_count(args, ball: bool) -> int:
    metric = _metric(args.metric)
    try:
        report = count_report(metric, args.n, args.radius, ball=ball, method=args.method)
    except (ValueError, enumeration.EnumerationCapError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    row = report.as_dict()
    text = []
    if report.pipeline_count is not None:
        text.append(f"pipeline: {report.pipeline_count}")
    if report.oracle_count is not None:
        text.append(f"oracle: {report.oracle_count}")
    if report.match is not None:
        text.append("match" if report.match else "MISMATCH")
    _emit_rows(args.format, [row], text)
    return 0 if report.match in (True, None) else 2


def cmd_sphere(args) -> int:
    return _cmd_count(args, ball=False)


def cmd_ball(args) -> int:
    return _cmd_count(args, ball=True)


def cmd_beta(args) -> int:
    metric = _metric(args.metric)
    if (args.k is None) == (args.radius is None):
        print("error: give exactly one of --k or --radius", file=sys.stderr)
        return 1
    radius = args.radius if args.radius is not None else 2 * args.k
    try:
        table = beta_table(metric)
        bound = size_bound(metric, radius)
        cells = []
        if args.m is not None and args.q is not None:
            cells.append((args.m, args.q))
        else:
            for q in range(1, bound + 1):
                if args.q is not None and q != args.q:
                    continue
                for m in range(2 * q, q + bound + 1):
                    if args.m is not None and m != args.m:
                        continue
                    cells.append((m, q))
        rows = []
        for m, q in cells:
            value = table.beta(radius, m, q)
            if value or (args.m is not None and args.q is not None):
                rows.append({"radius": radius, "m": m, "q": q, "beta": str(value)})
    except (ValueError, enumeration.EnumerationCapError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if not rows:
        rows = [{"radius": radius, "m": args.m or 0, "q": args.q or 0, "beta": "0"}]
    text = [f"R={r['radius']} m={r['m']} q={r['q']} beta={r['beta']}" for r in rows]
    _emit_rows(args.format, rows, text)
    return 0


def cmd_poly(args) -> int:
    metric = _metric(args.metric)
    try:
        poly = growth.sphere_polynomial(metric, args.radius)
        if args.eval is not None:
            value = poly.evaluate(args.eval)
            _emit_rows(
                args.format,
                [{"metric": metric.name, "radius": args.radius, "n": args.eval, "value": str(value)}],
                [str(value)],
            )
            return 0
        if args.basis == "monomial":
            rational = growth.to_rational(poly)
            _emit_rows(args.format, [rational.as_dict()], [str(rational)])
        else:
            row = poly.as_dict()
            if args.format == "csv":
                rows = [{"coef": t["coef"], "m": t["m"], "q": t["q"]} for t in row["terms"]]
                _emit_rows(args.format, rows, [])
            else:
                _emit_rows(args.format, [row], [str(poly)])
    except (ValueError, enumeration.EnumerationCapError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


def cmd_verify(args) -> int:
    report = verify_mod.run_verify(
        max_n=args.max_n, max_k=args.max_k, include_printed_p6=args.include_printed_p6
    )
    if args.format == "json":
        print(json.dumps(report.as_dict(), indent=2))
    elif args.format == "csv":
        rows = [
            {"name": c.name, "verdict": c.verdict, "formula": c.formula, "source": c.source}
            for c in report.checks
        ]
        _emit_rows("csv", rows, [])
    else:
        for c in report.checks:
            tag = {"match": "PASS", "mismatch": "FAIL", "paper-discrepancy": "DISCREPANCY"}[c.verdict]
            print(f"[{tag}] {c.name}: {c.formula}")
            for key, value in c.values.items():
                print(f"    {key}: {value}")
        print("all internal checks passed" if report.ok else "INTERNAL MISMATCH DETECTED")
    return report.exit_code


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="permsphere",
        description="Exact sphere and ball cardinalities in symmetric groups "
        "under right-invariant metrics.",
    )
    parser.add_argument("--format", choices=("text", "json", "csv"), default="text")
    parser.add_argument("--threads", type=int, default=None, help="worker processes for enumeration")
    parser.add_argument(
        "--max-enum-degree", type=int, default=None, help="largest symmetric group to enumerate"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dist", help="distance between permutations (native integer scale; "
                       "for lp:<p> this is the p-th power)")
    p.add_argument("--metric", required=True)
    p.add_argument("--perm", required=True)
    p.add_argument("--perm2")
    p.set_defaults(fn=cmd_dist)

    for name, fn, about in (
        ("sphere", cmd_sphere, "count permutations at exact distance"),
        ("ball", cmd_ball, "count permutations within distance"),
    ):
        p = sub.add_parser(name, help=about)
        p.add_argument("--metric", required=True)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--radius", type=int, required=True)
        p.add_argument("--method", choices=("pipeline", "oracle", "both"), default="pipeline")
        p.set_defaults(fn=fn)

    p = sub.add_parser("beta", help="split-type counts beta(R, m, q)")
    p.add_argument("--metric", required=True)
    p.add_argument("--k", type=int, help="half-radius for l1 (radius = 2k)")
    p.add_argument("--radius", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--q", type=int)
    p.set_defaults(fn=cmd_beta)

    p = sub.add_parser("poly", help="sphere counting polynomial")
    p.add_argument("--metric", required=True)
    p.add_argument("--radius", type=int, required=True)
    p.add_argument("--basis", choices=("binomial", "monomial"), default="binomial")
    p.add_argument("--eval", type=int)
    p.set_defaults(fn=cmd_poly)

    p = sub.add_parser("verify", help="run the cross-validation matrix")
    p.add_argument("--max-n", type=int, default=6)
    p.add_argument("--max-k", type=int, default=6)
    p.add_argument("--include-printed-p6", action="store_true")
    p.set_defaults(fn=cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.threads is not None:
        enumeration.set_threads(args.threads)
    if args.max_enum_degree is not None:
        enumeration.set_max_degree(args.max_enum_degree)
    return args.fn(args)


if __name__ == "__main__":
    raise SystemExit(main())
