"""Sweep the solution variance over time for both operators.

Prints a table of variance_integral(op, t) over a geometric time grid with
local log-slopes, and the global fitted exponent against the theoretical
values H (heat) and 1 + 2H (wave).

Usage: python3 scripts/variance_scaling.py --H 0.25 --num 13
"""

import argparse

import numpy as np

from rough_sheet.kernels import OperatorKind
from rough_sheet.spectral import make_density, variance_integral


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--H", type=float, default=0.25)
    ap.add_argument("--tmin", type=float, default=0.125)
    ap.add_argument("--tmax", type=float, default=8.0)
    ap.add_argument("--num", type=int, default=13)
    args = ap.parse_args()

    density = make_density(args.H)
    ts = np.geomspace(args.tmin, args.tmax, args.num)
    for op in (OperatorKind.HEAT, OperatorKind.WAVE):
        vals = np.array([variance_integral(op, t, density) for t in ts])
        slopes = np.gradient(np.log(vals), np.log(ts))
        print(f"# {op.value}, H = {args.H:g}")
        print("t variance local_slope")
        for t, v, s in zip(ts, vals, slopes):
            print(f"{t:.6g} {v:.10g} {s:.6f}")
        fit = np.polyfit(np.log(ts), np.log(vals), 1)[0]
        theory = args.H if op is OperatorKind.HEAT else 1.0 + 2.0 * args.H
        print(f"# fitted exponent {fit:.6f}, theory {theory:g}\n")


if __name__ == "__main__":
    main()
