#!/usr/bin/env python3
"""Analyze every built-in example and print a verdict table."""

import argparse
import json

from flatconn import catalog
from flatconn.documents import digest, serialize
from flatconn.report import analyze

COLUMNS = ("integrable", "abelian", "bi_invariant", "torsion_type", "torsion_parallel",
           "two_step_solvable", "unimodular")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--json", action="store_true", help="emit one JSON report per line")
    args = parser.parse_args()

    rows = []
    for name in catalog.list_examples():
        entry = catalog.load_example(name)
        report = analyze(entry.payload, digest(serialize(entry.payload)))
        if args.json:
            print(json.dumps({"name": name, **report.to_json()}, sort_keys=True))
            continue
        rows.append([name] + ["-" if report.verdicts.get(c) is None else str(report.verdicts[c]) for c in COLUMNS])
        if report.connection_checks:
            for conn, props in report.connection_checks.items():
                print(f"{name:>15}  {conn:<16} {props}")

    if rows:
        header = ["example", *COLUMNS]
        widths = [max(len(r[i]) for r in rows + [header]) for i in range(len(header))]
        print()
        print("  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip())
        for r in rows:
            print("  ".join(v.ljust(w) for v, w in zip(r, widths)).rstrip())


if __name__ == "__main__":
    main()
