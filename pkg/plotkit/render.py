#!/usr/bin/env python3
"""Render apscyl CSV outputs to static raster images.

Usage: render.py --kind {shooting,branches,crossings} --in FILE.csv --out FIG.png

Input schemas (headers must match exactly):
  shooting   lambda,S,is_zero     curve of S(lambda); red circles on the
                                  rows flagged is_zero=1
  branches   s,k,branch,lambda    one polyline per (k, branch)
  crossings  s,k,value,is_event   k+A(s) per mode; circles on event rows

The input file is only ever read. Exit status is 0 exactly when the image
file was written; schema mismatches exit 2 with a column diagnostic.
"""

import argparse
import csv
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

SCHEMAS = {
    "shooting": ["lambda", "S", "is_zero"],
    "branches": ["s", "k", "branch", "lambda"],
    "crossings": ["s", "k", "value", "is_event"],
}


class SchemaError(Exception):
    pass


def read_rows(path, kind):
    expected = SCHEMAS[kind]
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise SchemaError(f"{path}: empty file, expected columns {expected}")
        if header != expected:
            raise SchemaError(
                f"{path}: columns {header} do not match the {kind!r} "
                f"schema {expected}")
        rows = []
        for lineno, row in enumerate(reader, start=2):
            if len(row) != len(expected):
                raise SchemaError(f"{path}:{lineno}: expected "
                                  f"{len(expected)} fields, got {len(row)}")
            try:
                rows.append([float(v) for v in row])
            except ValueError as exc:
                raise SchemaError(f"{path}:{lineno}: {exc}") from exc
    return rows


def render_shooting(rows, ax):
    curve = [(r[0], r[1]) for r in rows if r[2] == 0.0]
    zeros = [r[0] for r in rows if r[2] != 0.0]
    curve.sort()
    ax.axhline(0.0, color="0.6", lw=0.8)
    ax.plot([p[0] for p in curve], [p[1] for p in curve], lw=1.2)
    ax.plot(zeros, [0.0] * len(zeros), "o", mfc="none", mec="red", ms=7)
    ax.set_xlabel(r"$\lambda$")
    ax.set_ylabel(r"$S(\lambda)$")
    return len(zeros)


def render_branches(rows, ax):
    tracks = {}
    for s, k, branch, lam in rows:
        tracks.setdefault((k, branch), []).append((s, lam))
    for (k, branch), pts in sorted(tracks.items()):
        pts.sort()
        ax.plot([p[0] for p in pts], [p[1] for p in pts], lw=1.0)
    ax.axhline(0.0, color="0.6", lw=0.8)
    ax.set_xlabel("s")
    ax.set_ylabel(r"$\lambda_j(s)$")
    return len(tracks)


def render_crossings(rows, ax):
    lines = {}
    marks = []
    for s, k, value, is_event in rows:
        if is_event != 0.0:
            marks.append((s, value))
        else:
            lines.setdefault(k, []).append((s, value))
    for k, pts in sorted(lines.items()):
        pts.sort()
        ax.plot([p[0] for p in pts], [p[1] for p in pts], lw=1.0,
                label=f"k={k:g}")
    ax.plot([m[0] for m in marks], [m[1] for m in marks], "o",
            mfc="none", mec="red", ms=7)
    ax.axhline(0.0, color="0.6", lw=0.8)
    ax.set_xlabel("s")
    ax.set_ylabel("k + A(s)")
    if lines:
        ax.legend(loc="best", fontsize=8)
    return len(marks)


RENDERERS = {
    "shooting": render_shooting,
    "branches": render_branches,
    "crossings": render_crossings,
}


def render(kind, in_path, out_path):
    """Render one job; returns the number of marker/track features drawn."""
    rows = read_rows(in_path, kind)
    fig, ax = plt.subplots(figsize=(7.0, 4.2), dpi=130)
    count = RENDERERS[kind](rows, ax)
    fig.tight_layout()
    fig.savefig(out_path)
    plt.close(fig)
    return count


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--kind", required=True, choices=sorted(SCHEMAS))
    ap.add_argument("--in", dest="in_path", required=True, metavar="FILE.csv")
    ap.add_argument("--out", dest="out_path", required=True, metavar="FIG.png")
    args = ap.parse_args(argv)
    try:
        count = render(args.kind, args.in_path, args.out_path)
    except SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {args.out_path} ({count} marked features)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
