"""Monte Carlo Holder-exponent experiment.

Simulates a driftless ensemble with the spectral construction and fits
structure-function exponents in both directions, comparing against the
theoretical table (2H spatial; H temporal heat, 2H temporal wave for p = 2).

The defaults are sized for a laptop-scale run of a few minutes; increase
--replicas to tighten the fits.

Usage: python3 scripts/holder_experiment.py --op wave --H 0.25 --replicas 200
"""

import argparse

import numpy as np

from rough_sheet.kernels import OperatorKind, ZERO_INITIAL
from rough_sheet.noise import GridSpec
from rough_sheet import regularity as rg
from rough_sheet import solver as sv


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--op", default="heat", choices=("heat", "wave"))
    ap.add_argument("--H", type=float, default=0.25)
    ap.add_argument("--replicas", type=int, default=100)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--tolerance", type=float, default=0.1)
    args = ap.parse_args()

    op = OperatorKind.parse(args.op)
    if op is OperatorKind.HEAT:
        grid = GridSpec(0.5, 256, -8.0, 8.0, 8192)
        window = (-1.0, 1.0)
    else:
        grid = GridSpec(0.25, 256, -0.5, 0.5, 2048)
        window = (-0.25, 0.25)
    model = sv.ModelSpec(op=op, d=1, sigma=np.eye(1), drift=sv.DRIFTS["none"],
                         init=ZERO_INITIAL, H=args.H)

    for direction in (rg.Direction.SPATIAL, rg.Direction.TEMPORAL):
        cell = grid.dx if direction is rg.Direction.SPATIAL else grid.dt
        span = window[1] - window[0] \
            if direction is rg.Direction.SPATIAL else grid.t_max
        lags = rg.default_lags(cell, span)
        ens = sv.ensemble_run(model, grid, args.replicas, args.seed)
        sf = rg.structure_function(ens, direction, 2.0, lags, window)
        fit = rg.fit_exponent(sf)
        report = rg.holder_report(op, args.H, sf, fit,
                                  tolerance=args.tolerance)
        print(report.to_text())
        print()


if __name__ == "__main__":
    main()
