"""Command-line front end.

Exit codes: 0 success, 1 scientific-check failure, 2 usage or domain error,
3 numerical (quadrature) failure.  Every randomized command persists a
manifest under runs/<hash>/ from which its outputs are bit-reproducible.
Flags override config-file keys (flat ``key = value`` lines) which override
defaults; ROUGH_SHEET_THREADS is the fallback for --threads.
"""

from __future__ import annotations

import argparse
import csv
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import __version__
from .kernels import OperatorKind, ZERO_INITIAL, QuadratureNonconvergence
from .noise import GridSpec, sample_sheet, write_sheet
from .quadrature import QuadratureError
from .spectral import make_density, variance_integral, weighted_energy
from . import solver as sv
from . import regularity as rg
from . import verify as vf
from .manifest import RunManifest, manifest_hash

USAGE_ERROR = 2
CHECK_FAILED = 1
NUMERICAL_ERROR = 3


def _threads_default() -> int:
    env = os.environ.get("ROUGH_SHEET_THREADS", "")
    try:
        return max(1, int(env))
    except ValueError:
        return 1


def _load_config(path: str) -> dict:
    values = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected key = value")
        key, val = (part.strip() for part in line.split("=", 1))
        values[key.replace("-", "_")] = val
    return values


def _grid_from_args(args) -> GridSpec:
    return GridSpec(t_max=float(args.tmax), n_t=int(args.nt),
                    x_min=float(args.xmin), x_max=float(args.xmax),
                    n_x=int(args.nx))


def _add_grid_flags(p, nx=1024, nt=256, tmax=1.0, xmin=-4.0, xmax=4.0):
    p.add_argument("--nx", type=int, default=nx,
                   help="spatial cells (power of two)")
    p.add_argument("--nt", type=int, default=nt, help="time steps")
    p.add_argument("--tmax", type=float, default=tmax, help="time horizon")
    p.add_argument("--xmin", type=float, default=xmin, help="left edge")
    p.add_argument("--xmax", type=float, default=xmax, help="right edge")


def _run_dir(args, manifest: RunManifest) -> Path:
    root = Path(args.out) / manifest_hash(manifest)
    for sub in ("fields", "tables", "charts"):
        (root / sub).mkdir(parents=True, exist_ok=True)
    (root / "manifest.json").write_text(manifest.to_json() + "\n")
    return root

def _write_csv(path: Path, header, rows) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([repr(v) if isinstance(v, float) else v
                             for v in row])


def _parse_sigma(text: str, d: int) -> np.ndarray:
    if not text:
        return np.eye(d)
    rows = [[float(v) for v in row.split(",")] for row in text.split(";")]
    sigma = np.asarray(rows, dtype=float)
    if sigma.shape != (d, d):
        raise ValueError(f"sigma must be {d}x{d}, got {sigma.shape}")
    return sigma


# --- noise ------------------------------------------------------------------

def cmd_noise(args) -> int:
    grid = _grid_from_args(args)
    manifest = RunManifest.create("noise", "none", args.H, args.d, grid,
                                  n_replicas=1, base_seed=args.seed)
    sheet = sample_sheet(grid, args.H, args.d, args.seed)
    root = _run_dir(args, manifest)
    out = root / "fields" / "sheet.bin"
    write_sheet(sheet, str(out))
    print(f"wrote {out}")
    return 0


# --- variance table ---------------------------------------------------------

def cmd_variance_table(args) -> int:
    if args.num < 1:
        print("error: --num must be at least 1", file=sys.stderr)
        return USAGE_ERROR
    op = OperatorKind.parse(args.op)
    density = make_density(args.H)
    ts = np.geomspace(args.tmin, args.tmax_t, args.num)
    try:
        vals = np.array([variance_integral(op, t, density) for t in ts])
    except QuadratureError as exc:
        print(f"error: quadrature failed ({args.op}, H={args.H}): {exc}",
              file=sys.stderr)
        return NUMERICAL_ERROR
    logs_t, logs_v = np.log(ts), np.log(vals)
    slopes = np.gradient(logs_v, logs_t) if ts.size > 1 \
        else np.full(1, float("nan"))
    rows = list(zip(ts.tolist(), vals.tolist(), slopes.tolist()))
    grid = GridSpec(t_max=float(args.tmax_t), n_t=max(1, args.num),
                    x_min=0.0, x_max=1.0, n_x=2)
    manifest = RunManifest.create("variance-table", op.value, args.H, 1, grid)
    root = _run_dir(args, manifest)
    _write_csv(root / "tables" / "variance.csv",
               ["t", "variance", "local_log_slope"], rows)
    print("t,variance,local_log_slope")
    for t, v, s in rows:
        print(f"{t!r},{v!r},{s!r}")
    if ts.size > 1:
        fit = float(np.polyfit(logs_t, logs_v, 1)[0])
        target = args.H if op is OperatorKind.HEAT else 1.0 + 2.0 * args.H
        print(f"fitted_exponent: {fit!r} (theory {target:g})")
    print(f"table: {root / 'tables' / 'variance.csv'}")
    return 0


# --- isometry ---------------------------------------------------------------

def cmd_isometry(args) -> int:
    if args.replicas < 100:
        print("error: --replicas below the minimum of 100 gives a "
              "meaningless variance estimate", file=sys.stderr)
        return USAGE_ERROR
    if args.phi == "zero":
        print("phi = 0: Monte Carlo variance 0, spectral oracle 0, z = 0")
        return 0
    family = [(name, phi, g_hat, w)
              for name, phi, g_hat, w in vf._phi_family()
              if args.phi in ("all", name)]
    if not family:
        print(f"error: unknown integrand {args.phi!r}", file=sys.stderr)
        return USAGE_ERROR
    grid = GridSpec(t_max=1.0, n_t=8, x_min=-8.0, x_max=8.0, n_x=1024)
    manifest = RunManifest.create("isometry", "none", args.H, 1, grid,
                                  n_replicas=args.replicas,
                                  base_seed=args.seed)
    root = _run_dir(args, manifest)
    tc, xc = grid.t_cells(), grid.x_cells()
    phi_vals = [phi(tc[:, None], xc[None, :]).astype(float)
                for _, phi, _, _ in family]
    density = make_density(args.H)
    oracles = [float(w * weighted_energy(g_hat, density))
               for _, _, g_hat, w in family]
    sums = np.zeros((len(family), args.replicas))
    for r in range(args.replicas):
        sheet = sample_sheet(grid, args.H, 1, args.seed + r)
        for j, pv in enumerate(phi_vals):
            sums[j, r] = float(np.sum(pv * sheet.increments[0]))
    rows, worst = [], 0.0
    for j, (name, _, _, _) in enumerate(family):
        v = float(sums[j].var(ddof=1))
        se = v * math.sqrt(2.0 / args.replicas)
        z = (v - oracles[j]) / se
        worst = max(worst, abs(z))
        rows.append((name, v, oracles[j], z))
        print(f"{name}: mc_variance={v!r} oracle={oracles[j]!r} z={z:+.3f}")
    _write_csv(root / "tables" / "isometry.csv",
               ["integrand", "mc_variance", "oracle", "z"], rows)
    if worst > 3.0:
        print(f"FAIL: max |z| = {worst:.2f} exceeds 3", file=sys.stderr)
        return CHECK_FAILED
    print(f"pass: max |z| = {worst:.2f}")
    return 0


# --- simulate ---------------------------------------------------------------

def _build_model(args) -> sv.ModelSpec:
    op = OperatorKind.parse(args.op)
    if args.drift not in sv.DRIFTS:
        raise ValueError(f"unknown drift {args.drift!r}; choose from "
                         + ", ".join(sv.DRIFTS))
    sigma = _parse_sigma(args.sigma, args.d)
    return sv.ModelSpec(op=op, d=args.d, sigma=sigma,
                        drift=sv.DRIFTS[args.drift], init=ZERO_INITIAL,
                        H=args.H)


def cmd_simulate(args) -> int:
    model = _build_model(args)
    grid = _grid_from_args(args)
    manifest = RunManifest.create("simulate", model.op.value, args.H, args.d,
                                  grid, drift=args.drift, sigma=model.sigma,
                                  n_replicas=args.replicas,
                                  base_seed=args.seed, method=args.method)
    root = _run_dir(args, manifest)

    def one(r: int) -> Path:
        fld = next(iter(sv.ensemble_run(model, grid, 1, args.seed + r,
                                        method=args.method)))
        path = root / "fields" / f"replica_{r:05d}.bin"
        sv.write_field(fld, str(path))
        return path

    try:
        if args.threads > 1:
            with ThreadPoolExecutor(max_workers=args.threads) as pool:
                paths = list(pool.map(one, range(args.replicas)))
        else:
            paths = [one(r) for r in range(args.replicas)]
    except sv.PicardNonconvergence as exc:
        print("error: Picard iteration did not converge; distances: "
              + ", ".join(f"{d:.3e}" for d in exc.distances), file=sys.stderr)
        return CHECK_FAILED
    index = root / "fields" / "index.txt"
    with open(index, "w", encoding="utf-8") as fh:
        for r, path in enumerate(paths):
            fh.write(f"{r},{args.seed + r},{path.name}\n")
    print(f"wrote {args.replicas} replicas under {root / 'fields'}")
    return 0


# --- holder -----------------------------------------------------------------

def _load_ensemble(run_dir: Path):
    index = run_dir / "fields" / "index.txt"
    if not index.exists():
        raise FileNotFoundError(f"no ensemble index at {index}")
    for line in index.read_text(encoding="utf-8").splitlines():
        _, _, name = line.split(",")
        yield sv.read_field(str(run_dir / "fields" / name))


def _holder_chart(path: Path, sf, fit, theoretical: float) -> None:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(5.0, 3.6))
    ax.loglog(sf.lags, sf.values, "o", label="structure function")
    ref = np.exp(fit.intercept) * sf.lags ** fit.exponent
    ax.loglog(sf.lags, ref, "-",
              label=f"fit, slope {fit.exponent:.3f}")
    guide = sf.values[0] * (sf.lags / sf.lags[0]) ** theoretical
    ax.loglog(sf.lags, guide, "--",
              label=f"theory, slope {theoretical:g}")
    ax.set_xlabel("lag")
    ax.set_ylabel(f"S_{sf.p:g}")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, format="svg")
    plt.close(fig)


def cmd_holder(args) -> int:
    run_dir = Path(args.ensemble)
    manifest_path = run_dir / "manifest.json"
    if not manifest_path.exists():
        print(f"error: no manifest at {manifest_path}", file=sys.stderr)
        return USAGE_ERROR
    manifest = RunManifest.from_json(manifest_path.read_text())
    op = OperatorKind.parse(manifest.op)
    direction = rg.Direction(args.direction)
    first = next(_load_ensemble(run_dir))
    window = first.eval_window
    if direction is rg.Direction.SPATIAL:
        lags = rg.default_lags(first.grid.dx, window[1] - window[0])
    else:
        lags = rg.default_lags(first.grid.dt, first.grid.t_max)
    sf = rg.structure_function(_load_ensemble(run_dir), direction, args.p,
                               lags, window)
    fit = rg.fit_exponent(sf)
    report = rg.holder_report(op, manifest.H, sf, fit,
                              tolerance=args.tolerance)
    (run_dir / "tables").mkdir(exist_ok=True)
    (run_dir / "charts").mkdir(exist_ok=True)
    _write_csv(run_dir / "tables" / f"structure_{direction.value}.csv",
               ["lag", "value", "samples"],
               zip(sf.lags.tolist(), sf.values.tolist(),
                   sf.sample_counts.tolist()))
    chart = run_dir / "charts" / f"holder_{direction.value}.svg"
    _holder_chart(chart, sf, fit, report.theoretical)
    print(report.to_text())
    print(f"chart: {chart}")
    return 0 if report.verdict else CHECK_FAILED


# --- verify -----------------------------------------------------------------

def cmd_verify(args) -> int:
    only = args.only.split(",") if args.only else None
    if only:
        for name in only:
            if name not in vf.CRITERIA:
                print(f"error: unknown criterion {name!r}; choose from "
                      + ", ".join(vf.CRITERIA), file=sys.stderr)
                return USAGE_ERROR
    results = vf.run_all(quick=args.quick, only=only)
    failures = []
    for res in results:
        status = "pass" if res.passed else "FAIL"
        print(f"{res.name}: {status} (margin {res.margin:+.3f}) "
              f"- {res.detail}")
        if not res.passed:
            failures.append(res.name)
    if failures:
        print("failed criteria: " + ", ".join(failures), file=sys.stderr)
        return CHECK_FAILED
    print(f"all {len(results)} criteria passed")
    return 0


# --- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rough-sheet",
        description="Simulate stochastic heat/wave equations driven by "
                    "spatially fractional noise and verify their Holder "
                    "regularity.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", default=None,
                       help="flat key = value config file")
        p.add_argument("--out", default="runs", help="output root directory")
        p.add_argument("--threads", type=int, default=_threads_default(),
                       help="worker cap (env ROUGH_SHEET_THREADS)")

    p = sub.add_parser("noise", help="sample and persist a noise sheet")
    common(p)
    p.add_argument("--H", type=float, default=0.25, help="Hurst index")
    p.add_argument("--d", type=int, default=1, help="noise components")
    p.add_argument("--seed", type=int, default=0)
    _add_grid_flags(p)
    p.set_defaults(func=cmd_noise)

    p = sub.add_parser("variance-table",
                       help="variance integral over a time grid")
    common(p)
    p.add_argument("--op", default="heat", help="heat or wave")
    p.add_argument("--H", type=float, default=0.25)
    p.add_argument("--tmin", type=float, default=0.25)
    p.add_argument("--tmax", dest="tmax_t", type=float, default=4.0)
    p.add_argument("--num", type=int, default=9, help="points on the t-grid")
    p.set_defaults(func=cmd_variance_table)

    p = sub.add_parser("isometry",
                       help="Monte Carlo Wiener integrals vs spectral oracle")
    common(p)
    p.add_argument("--H", type=float, default=0.25)
    p.add_argument("--replicas", type=int, default=20000)
    p.add_argument("--seed", type=int, default=90000)
    p.add_argument("--phi", default="all",
                   help="integrand: all, zero, or a family member name")
    p.set_defaults(func=cmd_isometry)

    p = sub.add_parser("simulate", help="run and persist a solution ensemble")
    common(p)
    p.add_argument("--op", default="heat")
    p.add_argument("--H", type=float, default=0.25)
    p.add_argument("--d", type=int, default=1)
    p.add_argument("--drift", default="none",
                   help="drift name: " + ", ".join(sv.DRIFTS))
    p.add_argument("--sigma", default="",
                   help="matrix rows as 'a,b;c,d' (default identity)")
    p.add_argument("--method", default="spectral",
                   choices=("spectral", "direct", "picard"))
    p.add_argument("--replicas", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    _add_grid_flags(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("holder",
                       help="structure-function exponent of an ensemble")
    common(p)
    p.add_argument("--ensemble", required=True,
                   help="run directory written by simulate")
    p.add_argument("--direction", default="spatial",
                   choices=("spatial", "temporal"))
    p.add_argument("--p", type=float, default=2.0, help="moment order")
    p.add_argument("--tolerance", type=float, default=0.1)
    p.set_defaults(func=cmd_holder)

    p = sub.add_parser("verify", help="run the acceptance-check suite")
    common(p)
    p.add_argument("--quick", action="store_true",
                   help="half replicas, tolerances x1.5")
    p.add_argument("--only", default="",
                   help="comma-separated criterion names")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args, _ = parser.parse_known_args(argv)
    if getattr(args, "config", None):
        try:
            overrides = _load_config(args.config)
        except (OSError, ValueError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return USAGE_ERROR
        sub_actions = [a for a in parser._subparsers._group_actions][0]
        subparser = sub_actions.choices[args.command]
        valid = {a.dest for a in subparser._actions}
        unknown = set(overrides) - valid
        if unknown:
            print("error: unknown config keys: " + ", ".join(sorted(unknown)),
                  file=sys.stderr)
            return USAGE_ERROR
        subparser.set_defaults(**overrides)
        args = parser.parse_args(argv)
        # re-coerce strings that came from the config file
        for action in subparser._actions:
            val = getattr(args, action.dest, None)
            if action.type is not None and isinstance(val, str):
                setattr(args, action.dest, action.type(val))
    else:
        args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, sv.ConfigurationError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except (QuadratureError, QuadratureNonconvergence) as exc:
        print(f"error: numerical failure: {exc}", file=sys.stderr)
        return NUMERICAL_ERROR


if __name__ == "__main__":
    sys.exit(main())
