#!/usr/bin/env python3
"""Summarize `mcss bench` CSV output as an aligned text table.

Usage:
    mcss bench ... > sweep.csv
    python3 python/bench_summary.py sweep.csv
"""

import csv
import sys


def main():
    if len(sys.argv) != 2:
        sys.exit(__doc__.strip())
    with open(sys.argv[1], newline="") as fh:
        rows = list(csv.DictReader(fh))

    aggregates = [r for r in rows if r["record"] == "aggregate"]
    if not aggregates:
        sys.exit("no aggregate rows found; is this bench output?")

    headers = [
        "algorithm", "eta", "status",
        "cost", "cost_sd", "influence_norm", "rr_sets", "wall_s",
    ]
    table = [headers]
    for r in aggregates:
        table.append([r[h] if r[h] else "-" for h in headers])

    widths = [max(len(row[i]) for row in table) for i in range(len(headers))]
    for i, row in enumerate(table):
        print("  ".join(cell.rjust(w) for cell, w in zip(row, widths)))
        if i == 0:
            print("  ".join("-" * w for w in widths))

    timeouts = [r for r in rows if r["record"] == "run" and r["status"] == "timeout"]
    if timeouts:
        print(f"\n{len(timeouts)} run(s) hit the time limit")


if __name__ == "__main__":
    main()
