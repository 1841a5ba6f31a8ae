"""Empirical Holder-exponent estimation and optimality checks.

Structure functions (empirical L^p moduli of increments) are accumulated
streaming over an ensemble, fitted on log-log axes, and compared against the
theoretical exponent table:

    spatial:   p * (alpha ^ H)          (both operators)
    temporal:  p * (alpha ^ H) / 2      (heat)
               p * (alpha ^ H)          (wave)

where alpha is the Holder exponent of the initial data (absent initial
data, alpha ^ H = H).  The optimality checks pinch the quadrature-evaluated
increment variances between two power laws of the same exponent, which is
the testable form of exponent optimality.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from .kernels import OperatorKind
from .quadrature import QuadratureSpec, DEFAULT_QUAD
from .spectral import SpectralDensity, make_density, covariance_gap, \
    increment_variance
from .solver import SolutionField

__all__ = [
    "Direction", "InsufficientDataError", "StructureFunction", "ExponentFit",
    "HolderReport", "OptimalityReport", "TemporalOptimalityReport",
    "metric", "default_lags", "structure_function", "fit_exponent",
    "theoretical_exponent", "holder_report", "optimality_check",
    "temporal_optimality_check",
]


class Direction(enum.Enum):
    SPATIAL = "spatial"
    TEMPORAL = "temporal"


class InsufficientDataError(RuntimeError):
    pass


def metric(op: OperatorKind, p1, p2) -> float:
    """Parabolic (heat) or hyperbolic (wave) distance between (t, x) points."""
    dt = abs(p1[0] - p2[0])
    dx = abs(p1[1] - p2[1])
    if op is OperatorKind.HEAT:
        return math.sqrt(dt) + dx
    return dt + dx


@dataclass(frozen=True)
class StructureFunction:
    direction: Direction
    p: float
    lags: np.ndarray
    values: np.ndarray
    sample_counts: np.ndarray

    def __post_init__(self):
        if not (len(self.lags) == len(self.values) == len(self.sample_counts)):
            raise ValueError("lags, values, sample_counts must align")
        if np.any(np.diff(self.lags) <= 0):
            raise ValueError("lags must be strictly increasing")


@dataclass(frozen=True)
class ExponentFit:
    exponent: float
    intercept: float
    std_err: float
    r_squared: float
    n_points: int


def default_lags(cell: float, span: float) -> np.ndarray:
    """Dyadic lags over the resolvable fitting range [4*cell, span/8]."""
    lags = []
    h = 4.0 * cell
    while h <= span / 8.0 + 1e-12:
        lags.append(h)
        h *= 2.0
    if not lags:
        raise ValueError(f"window span {span:g} too small for cell {cell:g}")
    return np.array(lags)


def _lag_steps(lags, cell):
    steps = np.asarray(lags, float) / cell
    rounded = np.rint(steps).astype(int)
    if np.any(np.abs(steps - rounded) > 1e-8) or np.any(rounded < 1):
        raise ValueError("lags must be positive multiples of the grid cell")
    return rounded


def structure_function(ensemble: Iterable[SolutionField],
                       direction: Direction, p: float,
                       lags: Sequence[float],
                       window: Optional[tuple[float, float]] = None
                       ) -> StructureFunction:
    """Empirical L^p structure function, streaming over the ensemble.

    For each lag h, the mean over replicas and base points of
    ||u(. + h) - u(.)||^p (Euclidean norm over components).  Base points use
    time nodes t >= tMax/2 and keep a distance of at least max(lags) from
    the evaluation-window boundary.
    """
    if p < 1:
        raise ValueError("moment order p must be >= 1")
    lags = np.asarray(sorted(lags), dtype=float)
    sums = np.zeros(lags.size)
    counts = np.zeros(lags.size, dtype=np.int64)
    n_fields = 0
    for fld in ensemble:
        n_fields += 1
        grid = fld.grid
        win = window if window is not None else fld.eval_window
        xs = fld.x_nodes
        max_lag = lags[-1]
        if direction is Direction.SPATIAL:
            steps = _lag_steps(lags, grid.dx)
            base_x = (xs >= win[0] + max_lag) & (xs <= win[1] - max_lag)
            t_sel = np.arange((grid.n_t + 1) // 2, grid.n_t + 1)
            vals = fld.values[:, t_sel, :]
            for idx, m in enumerate(steps):
                diff = np.roll(vals, -m, axis=2) - vals
                # roll wraps; base_x excludes wrapped columns via the margin
                # only if the window sits away from the domain edge, which
                # evaluation_window guarantees
                norm_sq = np.sum(diff[:, :, base_x] ** 2, axis=0)
                sums[idx] += float(np.sum(norm_sq ** (p / 2.0)))
                counts[idx] += norm_sq.size
        else:
            steps = _lag_steps(lags, grid.dt)
            half = int(math.ceil(grid.n_t / 2))
            x_sel = (xs >= win[0]) & (xs <= win[1])
            for idx, m in enumerate(steps):
                hi = grid.n_t + 1 - steps[-1]
                base_t = np.arange(half, hi)
                if base_t.size == 0:
                    continue
                diff = fld.values[:, base_t + m, :][:, :, x_sel] \
                    - fld.values[:, base_t, :][:, :, x_sel]
                norm_sq = np.sum(diff ** 2, axis=0)
                sums[idx] += float(np.sum(norm_sq ** (p / 2.0)))
                counts[idx] += norm_sq.size
    if n_fields == 0:
        raise ValueError("ensemble is empty")
    if np.any(counts < 100):
        lag = lags[int(np.argmin(counts))]
        raise InsufficientDataError(
            f"only {int(counts.min())} increment samples at lag {lag:g}; "
            "need at least 100")
    return StructureFunction(direction=direction, p=p, lags=lags,
                             values=sums / counts, sample_counts=counts)


def fit_exponent(sf: StructureFunction,
                 lag_range: Optional[tuple[float, float]] = None
                 ) -> ExponentFit:
    """Least-squares power-law fit of the structure function on log-log axes."""
    lo, hi = lag_range if lag_range is not None else (0.0, np.inf)
    sel = (sf.lags >= lo) & (sf.lags <= hi)
    if int(sel.sum()) < 4:
        raise ValueError("need at least 4 lags inside the fitting range")
    lags, values = sf.lags[sel], sf.values[sel]
    bad = np.nonzero(values <= 0)[0]
    if bad.size:
        raise ValueError(f"nonpositive structure-function value at lag "
                         f"{lags[bad[0]]:g}")
    lx, ly = np.log(lags), np.log(values)
    (slope, intercept), res, *_ = np.polyfit(lx, ly, 1, full=True)
    n = lags.size
    ss_res = float(res[0]) if res.size else 0.0
    ss_tot = float(np.sum((ly - ly.mean()) ** 2))
    r2 = 1.0 if ss_tot == 0 else 1.0 - ss_res / ss_tot
    var_x = float(np.sum((lx - lx.mean()) ** 2))
    std_err = math.sqrt(ss_res / (n - 2) / var_x) if n > 2 else float("nan")
    return ExponentFit(exponent=float(slope), intercept=float(intercept),
                       std_err=std_err, r_squared=r2, n_points=n)


def theoretical_exponent(op: OperatorKind, direction: Direction, p: float,
                         H: float, alpha: Optional[float] = None) -> float:
    """Structure-function exponent table; alpha is initial-data regularity."""
    e = H if alpha is None else min(alpha, H)
    if direction is Direction.SPATIAL:
        return p * e
    return p * e / 2.0 if op is OperatorKind.HEAT else p * e


@dataclass(frozen=True)
class HolderReport:
    op: OperatorKind
    H: float
    direction: Direction
    p: float
    fitted: ExponentFit
    theoretical: float
    tolerance: float
    verdict: bool
    margin: float

    def to_text(self) -> str:
        lines = [
            f"operator: {self.op.value}",
            f"H: {self.H:g}",
            f"direction: {self.direction.value}",
            f"p: {self.p:g}",
            f"fitted_exponent: {self.fitted.exponent:.6f}",
            f"std_err: {self.fitted.std_err:.6f}",
            f"r_squared: {self.fitted.r_squared:.6f}",
            f"theoretical_exponent: {self.theoretical:.6f}",
            f"tolerance: {self.tolerance:g}",
            f"margin: {self.margin:.6f}",
            f"verdict: {'pass' if self.verdict else 'fail'}",
        ]
        return "\n".join(lines)


def holder_report(op: OperatorKind, H: float, sf: StructureFunction,
                  fitted: ExponentFit, tolerance: float = 0.1,
                  alpha: Optional[float] = None) -> HolderReport:
    theo = theoretical_exponent(op, sf.direction, sf.p, H, alpha)
    gap = abs(fitted.exponent - theo)
    return HolderReport(op=op, H=H, direction=sf.direction, p=sf.p,
                        fitted=fitted, theoretical=theo, tolerance=tolerance,
                        verdict=gap <= tolerance, margin=tolerance - gap)


@dataclass(frozen=True)
class OptimalityReport:
    op: OperatorKind
    H: float
    t: float
    xs: np.ndarray
    ratios: np.ndarray
    ratio_min: float
    ratio_max: float
    passed: bool

    def to_text(self) -> str:
        return "\n".join([
            f"operator: {self.op.value}",
            f"H: {self.H:g}",
            f"t: {self.t:g}",
            f"ratio_min: {self.ratio_min:.6g}",
            f"ratio_max: {self.ratio_max:.6g}",
            f"spread: {self.ratio_max / self.ratio_min:.3f}",
            f"verdict: {'pass' if self.passed else 'fail'}",
        ])


def optimality_check(op: OperatorKind, H: float, t: float,
                     xs: Sequence[float],
                     quad: QuadratureSpec = DEFAULT_QUAD,
                     max_spread: float = 50.0) -> OptimalityReport:
    """Two-sided power-law pinch of the spatial increment variance.

    r(x) = covariance_gap(op, t, x) / |x|^{2H} must stay inside a bounded
    positive band over xs; that pins the variance exponent at exactly 2H.
    """
    xs = np.asarray(sorted(xs), dtype=float)
    if xs.size == 0 or xs[0] <= 0:
        raise ValueError("xs must be positive")
    density = make_density(H)
    ratios = np.array([covariance_gap(op, t, x, density, quad)
                       / x ** (2.0 * H) for x in xs])
    rmin, rmax = float(ratios.min()), float(ratios.max())
    passed = rmin > 0 and rmax / rmin < max_spread
    return OptimalityReport(op=op, H=H, t=t, xs=xs, ratios=ratios,
                            ratio_min=rmin, ratio_max=rmax, passed=passed)


@dataclass(frozen=True)
class TemporalOptimalityReport:
    op: OperatorKind
    H: float
    t0: float
    deltas: np.ndarray
    variances: np.ndarray
    fitted: ExponentFit
    target: float
    tolerance: float
    passed: bool
    lower_bound_ratios: Optional[np.ndarray] = field(default=None)

    def to_text(self) -> str:
        lines = [
            f"operator: {self.op.value}",
            f"H: {self.H:g}",
            f"t0: {self.t0:g}",
            f"fitted_exponent: {self.fitted.exponent:.6f}",
            f"target_exponent: {self.target:g}",
            f"tolerance: {self.tolerance:g}",
            f"verdict: {'pass' if self.passed else 'fail'}",
        ]
        if self.lower_bound_ratios is not None:
            lines.append("lower_bound_ratio_min: "
                         f"{float(self.lower_bound_ratios.min()):.6g}")
        return "\n".join(lines)


def temporal_optimality_check(op: OperatorKind, H: float, t0: float, T: float,
                              quad: QuadratureSpec = DEFAULT_QUAD,
                              tolerance: float = 0.05,
                              n_scales: int = 8) -> TemporalOptimalityReport:
    """Fit the exponent of Var[u(t0+delta) - u(t0)] over dyadic deltas.

    Passes iff the fitted exponent is within the tolerance of H (heat) or
    2H (wave).  For heat, additionally certifies the lower bound
    I2 >= c_H (1 - 1/e)^2 / (4H) * delta^H on deltas <= t0 / ln 2, whose
    per-delta ratios must stabilize (bounded band).
    """
    if not 0.0 < t0 < T:
        raise ValueError("need 0 < t0 < T")
    density = make_density(H)
    # start well below T - t0: the power law is asymptotic as t - s -> 0,
    # and the first dyadic scales carry visible subleading corrections
    k0 = max(4, int(math.ceil(-math.log2(T - t0))) + 1)
    deltas = 2.0 ** (-np.arange(k0, k0 + n_scales, dtype=float))
    variances = np.empty(deltas.size)
    i2 = np.empty(deltas.size)
    for j, d in enumerate(deltas):
        a, b = increment_variance(op, t0, t0 + d, density, quad)
        variances[j] = a + b
        i2[j] = b
    order = np.argsort(deltas)
    sf = StructureFunction(
        direction=Direction.TEMPORAL, p=2.0, lags=deltas[order],
        values=variances[order],
        sample_counts=np.ones(deltas.size, dtype=np.int64) * 10 ** 6)
    fitted = fit_exponent(sf)
    target = H if op is OperatorKind.HEAT else 2.0 * H
    passed = abs(fitted.exponent - target) <= tolerance
    ratios = None
    if op is OperatorKind.HEAT:
        const = density.c_H * (1.0 - 1.0 / math.e) ** 2 / (4.0 * H)
        small = deltas <= t0 / math.log(2.0)
        ratios = i2[small] / (const * deltas[small] ** H)
        passed = passed and bool(np.all(ratios >= 1.0))
    return TemporalOptimalityReport(op=op, H=H, t0=t0, deltas=deltas[order],
                                    variances=variances[order], fitted=fitted,
                                    target=target, tolerance=tolerance,
                                    passed=passed, lower_bound_ratios=ratios)
