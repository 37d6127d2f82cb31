"""Command line: ``flatconn analyze`` and ``flatconn catalog``.

Exit codes: 0 analysis completed (whatever the verdicts), 1 internal error,
2 invalid input.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import catalog
from .documents import ParseError, digest, dumps, parse, serialize
from .report import CHECKS, AnalysisReport, InvalidInput, analyze

EXIT_OK, EXIT_INTERNAL, EXIT_INVALID = 0, 1, 2


def _error(kind: str, message: str, **extra) -> int:
    print(dumps({"error": kind, "message": message, **extra}), end="")
    print(f"flatconn: {message}", file=sys.stderr)
    return EXIT_INVALID


def _load(target: str):
    """Return (document, digest) for a file path or ``catalog:NAME``."""
    if target.startswith("catalog:"):
        entry = catalog.load_example(target.split(":", 1)[1])
        return entry.payload, digest(serialize(entry.payload))
    raw = Path(target).read_bytes()
    return parse(raw.decode("utf-8")), digest(raw)


def _summary(report: AnalysisReport) -> str:
    lines = [f"input: {report.input_kind} ({report.input_digest[:19]})"]
    for name, value in report.verdicts.items():
        if name == "torsion_identities":
            continue
        shown = "n/a" if value is None else value
        lines.append(f"  {name:<18} {shown}")
    for name, props in (report.connection_checks or {}).items():
        lines.append(f"  {name:<18} {', '.join(f'{k}={v}' for k, v in props.items())}")
    lines.append(f"  witnesses          {len(report.witnesses)}")
    return "\n".join(lines)


def cmd_analyze(args) -> int:
    only = None
    if args.only:
        only = [c.strip() for c in args.only.split(",") if c.strip()]
        unknown = sorted(set(only) - set(CHECKS))
        if unknown:
            return _error("usage", f"unknown checks {unknown}; choose from {', '.join(CHECKS)}")
    try:
        doc, dig = _load(args.input)
    except catalog.NotFound as exc:
        return _error("not_found", exc.args[0], available=list(catalog.NAMES))
    except ParseError as exc:
        return _error("parse", exc.message, location=exc.location)
    except (OSError, UnicodeDecodeError) as exc:
        return _error("io", str(exc))
    try:
        report = analyze(doc, dig, only=only, emit_connections=args.emit_connections)
    except InvalidInput as exc:
        print(dumps({"error": "invalid_input", "input_digest": dig, "validations": exc.validations}), end="")
        print(f"flatconn: invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    print(dumps(report.to_json()), end="")
    if args.pretty:
        print(_summary(report), file=sys.stderr)
    return EXIT_OK


def cmd_catalog(args) -> int:
    if args.action == "list":
        print(dumps(catalog.list_examples()), end="")
        return EXIT_OK
    if not args.name:
        return _error("usage", "catalog show needs a name")
    try:
        entry = catalog.load_example(args.name)
    except catalog.NotFound as exc:
        return _error("not_found", exc.args[0], available=list(catalog.NAMES))
    print(dumps(entry.to_json()), end="")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="flatconn", description="Exact checks for flat complex connections.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="analyze a Lie algebra document or a frame document")
    p.add_argument("input", help="JSON file, or catalog:NAME")
    p.add_argument("--only", help=f"comma-separated subset of: {', '.join(CHECKS)}")
    p.add_argument("--emit-connections", action="store_true", help="include connection coefficients")
    p.add_argument("--pretty", action="store_true", help="human-readable summary on stderr")
    p.set_defaults(func=cmd_analyze)

    c = sub.add_parser("catalog", help="list or show built-in examples")
    c.add_argument("action", choices=["list", "show"])
    c.add_argument("name", nargs="?")
    c.set_defaults(func=cmd_catalog)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except Exception as exc:  # noqa: BLE001
        print(f"flatconn: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
