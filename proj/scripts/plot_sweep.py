#!/usr/bin/env python3
"""Plot a sweep CSV produced by the cvlink CLI.

Usage:
    plot_sweep.py SWEEP.csv [-o FIG.png] [--log] [--floor-zero] [COLUMN ...]

Reads the '#' metadata header and the column row, draws every requested
column (default: all numeric columns except the boolean positive_rate_*
flags) against the first column. --floor-zero clips negative key rates to
zero, which is how rate curves are usually displayed; the CSV itself always
carries the raw signed values.

Not part of the tested surface: the CLI emits CSV only, plotting is a
convenience for eyeballing sweeps.
"""

import argparse
import csv
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt


def read_sweep(path):
    meta, header, rows = [], None, []
    with open(path, newline="") as fh:
        for record in csv.reader(fh):
            if not record:
                continue
            if record[0].startswith("#"):
                meta.append(",".join(record).lstrip("# "))
                continue
            if header is None:
                header = record
                continue
            rows.append([float(cell) for cell in record])
    if header is None or not rows:
        sys.exit(f"{path}: no data rows")
    return meta, header, rows


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("csv_path")
    parser.add_argument("columns", nargs="*", help="columns to plot (default: all)")
    parser.add_argument("-o", "--output", default="sweep.png")
    parser.add_argument("--log", action="store_true", help="log-scale y axis")
    parser.add_argument(
        "--floor-zero", action="store_true", help="clip negative values to 0"
    )
    args = parser.parse_args()

    meta, header, rows = read_sweep(args.csv_path)
    x_name = header[0]
    wanted = args.columns or [
        name for name in header[1:] if not name.startswith("positive_rate")
    ]
    for name in wanted:
        if name not in header:
            sys.exit(f"no column '{name}'; have: {', '.join(header)}")

    x = [row[0] for row in rows]
    fig, ax = plt.subplots(figsize=(7, 4.5))
    for name in wanted:
        idx = header.index(name)
        y = [row[idx] for row in rows]
        if args.floor_zero:
            y = [max(v, 0.0) for v in y]
        ax.plot(x, y, label=name)
    ax.set_xlabel(x_name)
    if args.log:
        ax.set_yscale("log")
    ax.legend()
    ax.grid(True, alpha=0.3)
    if meta:
        ax.set_title(meta[0], fontsize=9)
    fig.tight_layout()
    fig.savefig(args.output, dpi=150)
    print(f"wrote {args.output}")


if __name__ == "__main__":
    main()
