#!/usr/bin/env python3
"""Quick-look plots for sweep CSVs produced by `ghcp sweep` / `ghcp compare`."""

import argparse
import csv
import sys


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("csv_path")
    parser.add_argument("--x", default="lambda_p")
    parser.add_argument("--y", action="append", default=None,
                        help="column(s) to plot; repeatable")
    parser.add_argument("--logx", action="store_true", default=True)
    parser.add_argument("--logy", action="store_true")
    parser.add_argument("--out", default=None, help="save instead of showing")
    args = parser.parse_args()

    with open(args.csv_path, newline="") as fh:
        rows = list(csv.DictReader(fh))
    if not rows:
        print("empty table", file=sys.stderr)
        return 1

    ys = args.y or ["throughput"]
    groups = {}
    for row in rows:
        key = row.get("mechanism", "")
        groups.setdefault(key, []).append(row)

    import matplotlib
    matplotlib.use("Agg" if args.out else matplotlib.get_backend())
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(7, 5))
    for key, group in groups.items():
        xs = [float(r[args.x]) for r in group if r.get(args.x)]
        for y in ys:
            vals = [(float(r[args.x]), float(r[y])) for r in group if r.get(y)]
            if not vals:
                continue
            vals.sort()
            label = f"{key} {y}".strip()
            ax.plot([v[0] for v in vals], [v[1] for v in vals], marker="o",
                    markersize=3, label=label)
        del xs
    if args.logx:
        ax.set_xscale("log")
    if args.logy:
        ax.set_yscale("log")
    ax.set_xlabel(args.x)
    ax.set_ylabel(", ".join(ys))
    ax.grid(True, which="both", alpha=0.3)
    ax.legend()
    fig.tight_layout()
    if args.out:
        fig.savefig(args.out, dpi=150)
        print(f"wrote {args.out}")
    else:
        plt.show()
    return 0


if __name__ == "__main__":
    sys.exit(main())
