#!/usr/bin/env python3
"""Dump one truncated intertwiner mode block as CSV (and print its norm)."""

import argparse
import sys
from fractions import Fraction
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from chargedfock.fock import Space, Truncation
from chargedfock.scalar import make_context
from chargedfock.vertex import export_mode_block, truncated_mode_norm


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--alpha", default="1/2", help="vertex charge p/q")
    ap.add_argument("--delta", type=int, default=0, help="level shift of the mode")
    ap.add_argument("--level-cutoff", type=int, default=8)
    ap.add_argument("--output", type=Path, default=None, help="CSV path (default stdout)")
    args = ap.parse_args()

    ctx = make_context("exact-rational")
    alpha = Fraction(args.alpha)
    space = Space(ctx, alpha, Truncation(args.level_cutoff, -2, 2))
    norm = truncated_mode_norm(space, alpha, args.delta)
    print(f"# alpha={alpha} delta={args.delta} L={args.level_cutoff} norm={norm:.12f}", file=sys.stderr)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fp:
            export_mode_block(space, alpha, args.delta, fp)
        print(f"# wrote {args.output}", file=sys.stderr)
    else:
        export_mode_block(space, alpha, args.delta, sys.stdout)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
