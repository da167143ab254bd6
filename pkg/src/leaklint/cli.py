"""Command-line entry point: scan, mine, bench, and stats subcommands.

Exit codes: scan uses 0 for a clean run, 1 when findings are present, and 2
for fatal errors (unreadable inputs, invalid registry).  The other commands
use 0 on success and 2 on load failures.  With ``--format json`` standard
output carries only the JSON document; diagnostics go to standard error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from collections import Counter

from . import __version__, bench, checkers, mining
from .errors import LeakLintError
from .registry import builtin_registry, load_registry, registry_digest


def _resolve_registry(path: str | None):
    if path is None:
        path = os.environ.get("LEAKLINT_REGISTRY")
    if path is None:
        return builtin_registry()
    return load_registry(path)


def _print_json(doc) -> None:
    sys.stdout.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")


def cmd_scan(args) -> int:
    try:
        registry = _resolve_registry(args.registry)
    except LeakLintError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    for root in args.roots:
        if not os.path.exists(root):
            print(f"error: no such path: {root}", file=sys.stderr)
            return 2
    enabled = None
    if args.checkers:
        enabled = {c.strip() for c in args.checkers.split(",") if c.strip()}
        unknown = enabled - set(checkers.CHECKER_IDS)
        if unknown:
            print(f"error: unknown checkers: {', '.join(sorted(unknown))}", file=sys.stderr)
            return 2
    findings, diagnostics = checkers.run_all(args.roots, registry, enabled, jobs=args.jobs)
    if not args.include_low:
        findings = [f for f in findings if f.confidence == "high"]
    report = {
        "version": __version__,
        "registry_digest": registry_digest(registry),
        "findings": [f.to_json() for f in findings],
        "diagnostics": [d.to_json() for d in diagnostics],
        "summary": {
            "by_checker": dict(sorted(Counter(f.checker_id for f in findings).items())),
            "by_consequence": dict(sorted(Counter(f.consequence.value for f in findings).items())),
        },
    }
    if args.format == "json":
        _print_json(report)
    else:
        for d in diagnostics:
            print(f"warning: {d.file}: {d.message}", file=sys.stderr)
        for f in findings:
            print(
                f"{f.file}:{f.line}: [{f.checker_id}] {f.message} "
                f"({f.resource_class}, extent={f.extent.value}, confidence={f.confidence})"
            )
        total = len(findings)
        print(f"{total} finding{'s' if total != 1 else ''} in {len(args.roots)} root(s)")
    return 1 if findings else 0


def cmd_mine(args) -> int:
    try:
        config = mining.load_config(args.config) if args.config else mining.MiningConfig()
        history, diagnostics = mining.read_history(args.path)
    except LeakLintError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    candidates = mining.mine(history, config)
    for diag in diagnostics:
        print(f"warning: {diag}", file=sys.stderr)
    if args.format == "json":
        _print_json(
            [
                {
                    "id": c.commit_id,
                    "reason": c.reason,
                    "matched_log_stems": c.matched_log_stems,
                    "matched_diff_lines": [list(pair) for pair in c.matched_diff_lines],
                    "diff_skipped": c.diff_skipped,
                }
                for c in candidates
            ]
        )
    else:
        for c in candidates:
            stems = ",".join(c.matched_log_stems) or "-"
            print(f"{c.commit_id} reason={c.reason} stems={stems} "
                  f"diff_lines={len(c.matched_diff_lines)}")
        print(f"{len(candidates)} candidate(s) from {len(history)} commit(s)")
    return 0


def cmd_bench(args) -> int:
    try:
        with open(args.findings, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
        entries = bench.load_manifest(args.manifest)
    except (OSError, json.JSONDecodeError, LeakLintError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    findings = doc.get("findings", doc) if isinstance(doc, dict) else doc
    evaluation = bench.evaluate(findings, entries)
    if args.format == "json":
        _print_json(evaluation.to_json())
    else:
        o = evaluation.overall
        print(f"overall: tp={o.tp} fp={o.fp} fn={o.fn} "
              f"precision={o.precision:.2f} recall={o.recall:.2f}")
        for checker, m in sorted(evaluation.per_checker.items()):
            print(f"{checker}: tp={m.tp} fp={m.fp} fn={m.fn} "
                  f"precision={m.precision:.2f} recall={m.recall:.2f}")
    return 0


def cmd_stats(args) -> int:
    try:
        entries = bench.load_manifest(args.manifest)
    except LeakLintError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    report = bench.stats(entries)
    if args.format == "json":
        _print_json(report.to_json())
    else:
        print(f"total: {report.total}")
        for mark, count in sorted(report.by_consequence.items()):
            print(f"consequence {mark or '(unspecified)'}: {count}")
        for cat in ("complete", "normal", "exceptional"):
            if cat in report.by_extent:
                print(f"extent {cat}: {report.by_extent[cat]} ({report.extent_pct[cat]}%)")
        if "" in report.by_extent:
            print(f"extent (unspecified): {report.by_extent['']}")
    return 0


def build_arg_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="leaklint",
        description="Static resource-leak analyzer and leak-fix commit miner for Android/Java code",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_scan = sub.add_parser("scan", help="scan .java files for resource leaks")
    p_scan.add_argument("roots", nargs="+", help="files or directories to scan")
    p_scan.add_argument("--registry", help="registry JSON overriding the built-in catalog")
    p_scan.add_argument("--checkers", help="comma-separated checker ids to enable")
    p_scan.add_argument("--include-low", action="store_true",
                        help="include low-confidence findings")
    p_scan.add_argument("--format", choices=("text", "json"), default="text")
    p_scan.add_argument("--jobs", type=int, default=os.cpu_count() or 1,
                        help="worker pool size (output is identical for any value)")
    p_scan.set_defaults(func=cmd_scan)

    p_mine = sub.add_parser("mine", help="mine a repository or JSONL export for leak-fix commits")
    p_mine.add_argument("path", help="git working copy or JSON-lines commit export")
    p_mine.add_argument("--config", help="mining config JSON")
    p_mine.add_argument("--format", choices=("text", "json"), default="text")
    p_mine.set_defaults(func=cmd_mine)

    p_bench = sub.add_parser("bench", help="score a findings report against a bug manifest")
    p_bench.add_argument("findings", help="findings JSON produced by `scan --format json`")
    p_bench.add_argument("manifest", help="manifest CSV")
    p_bench.add_argument("--format", choices=("text", "json"), default="text")
    p_bench.set_defaults(func=cmd_bench)

    p_stats = sub.add_parser("stats", help="aggregate statistics of a bug manifest")
    p_stats.add_argument("manifest", help="manifest CSV")
    p_stats.add_argument("--format", choices=("text", "json"), default="text")
    p_stats.set_defaults(func=cmd_stats)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_arg_parser().parse_args(argv)
    try:
        return args.func(args)
    except LeakLintError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
