"""Quadrature-only optimality checks across a grid of Hurst indices.

For each operator and H, pinches the spatial increment variance between
power laws of exponent 2H and fits the temporal variance exponent over
dyadic scales.  No Monte Carlo involved; everything is quadrature.

Usage: python3 scripts/optimality_pinch.py --hs 0.1,0.25,0.4
"""

import argparse

import numpy as np

from rough_sheet.kernels import OperatorKind
from rough_sheet import regularity as rg


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--hs", default="0.1,0.25,0.4",
                    help="comma-separated Hurst indices")
    ap.add_argument("--t", type=float, default=1.0)
    ap.add_argument("--t0", type=float, default=0.5)
    args = ap.parse_args()

    hs = [float(v) for v in args.hs.split(",")]
    xs = np.geomspace(0.01, 1.0, 12)
    for op in (OperatorKind.HEAT, OperatorKind.WAVE):
        for H in hs:
            rep = rg.optimality_check(op, H, args.t, xs)
            print(rep.to_text())
            print()
            trep = rg.temporal_optimality_check(op, H, args.t0, 1.0)
            print(trep.to_text())
            print()


if __name__ == "__main__":
    main()
