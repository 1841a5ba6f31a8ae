"""Mild-solution machinery: homogeneous part, stochastic convolution (two
independent constructions), drift convolution and Picard iteration.

Two constructions of the stochastic convolution coexist on purpose:

* spectral: exact-in-law Gaussian mode recursions (Ornstein-Uhlenbeck decay
  for heat, phase rotation for wave), cheap enough for large ensembles;
* direct: Riemann-type convolution of cell-averaged Green's functions
  against a sampled noise sheet, slower but literal, reused by the Picard
  iteration because it fixes one noise realization.

Cross-validating the two guards against convention errors in either one.
"""

from __future__ import annotations

import math
import struct
from dataclasses import dataclass, field, replace
from typing import BinaryIO, Callable, Iterable, Optional, Sequence, Union

import numpy as np
from scipy import special

from .kernels import InitialData, OperatorKind, ZERO_INITIAL, green_value
from .noise import GridSpec, NoiseSheet, circulant_eigenvalues, sample_fgn_rows
from .spectral import SpectralDensity, make_density, variance_integral

__all__ = [
    "DriftSpec", "ModelSpec", "PicardConfig", "SolutionField",
    "ModeConfig", "ConfigurationError", "PicardNonconvergence",
    "heat_buffer", "wave_buffer", "evaluation_window",
    "stochastic_convolution_spectral", "stochastic_convolution_direct",
    "direct_weights", "drift_convolution", "picard_solve", "ensemble_run",
    "DRIFTS", "write_field", "read_field",
]


class ConfigurationError(ValueError):
    pass


class PicardNonconvergence(RuntimeError):
    """Picard iteration hit max_iters; carries the sup-distance sequence."""

    def __init__(self, distances):
        super().__init__(
            "Picard iteration did not reach tolerance; distances "
            + ", ".join(f"{d:.3e}" for d in distances))
        self.distances = list(distances)


@dataclass(frozen=True)
class DriftSpec:
    """Lipschitz drift b acting componentwise or on the full state vector."""

    b: Callable[[np.ndarray], np.ndarray]
    lipschitz_constant: float
    name: str = "custom"

    def __call__(self, u):
        return self.b(u)


def _zero_drift(u):
    return np.zeros_like(u)


DRIFTS = {
    "none": DriftSpec(_zero_drift, 0.0, "none"),
    "sin": DriftSpec(np.sin, 1.0, "sin"),
    "linear": DriftSpec(lambda u: -u, 1.0, "linear"),
}


@dataclass(frozen=True)
class ModelSpec:
    op: OperatorKind
    d: int
    sigma: np.ndarray
    drift: DriftSpec
    init: InitialData
    H: float

    def __post_init__(self):
        sigma = np.asarray(self.sigma, dtype=float)
        if sigma.shape != (self.d, self.d):
            raise ValueError(f"sigma must be {self.d}x{self.d}")
        object.__setattr__(self, "sigma", sigma)
        if not 0.0 < self.H <= 0.5:
            raise ValueError("Hurst index must lie in (0, 0.5]")


@dataclass(frozen=True)
class PicardConfig:
    max_iters: int = 25
    sup_tol: float = 1e-8

    def __post_init__(self):
        if self.max_iters < 1 or self.sup_tol <= 0:
            raise ValueError("max_iters >= 1 and sup_tol > 0 required")


@dataclass(frozen=True)
class ModeConfig:
    """Spectral-mode grid controls; spacing defaults to 2 pi / domain width.

    ``cutoff = None`` picks the smallest cutoff (at least 256) whose
    truncated-mode variance deficit stays below ``deficit_tol``; a fixed
    cutoff is still validated against the same bound.
    """

    cutoff: Optional[float] = None
    deficit_tol: float = 0.005


@dataclass(frozen=True)
class SolutionField:
    """Field values at grid nodes, shape (component, time node, space node).

    Spatial nodes are grid.x_min + k * dx, k = 0..n_x-1; time nodes are
    j * dt, j = 0..n_t.  ``eval_window`` is the spatial interval trusted for
    statistics (noise window shrunk by the operator's dependence buffer).
    """

    grid: GridSpec
    values: np.ndarray = field(repr=False)
    eval_window: tuple[float, float] = (0.0, 0.0)
    seed: Optional[int] = None

    @property
    def t_nodes(self):
        return np.arange(self.grid.n_t + 1) * self.grid.dt

    @property
    def x_nodes(self):
        return self.grid.x_min + np.arange(self.grid.n_x) * self.grid.dx


def heat_buffer(t_max: float) -> float:
    # Gaussian tails beyond 8 sqrt(t) carry < 1e-6 of the field's sd.
    return 8.0 * math.sqrt(t_max)


def wave_buffer(t_max: float) -> float:
    # Sharp, by finite propagation speed 1.
    return t_max


def evaluation_window(op: OperatorKind, grid: GridSpec) -> tuple[float, float]:
    buf = heat_buffer(grid.t_max) if op is OperatorKind.HEAT \
        else wave_buffer(grid.t_max)
    lo, hi = grid.x_min + buf, grid.x_max - buf
    if lo >= hi:
        raise ValueError(
            f"noise window [{grid.x_min}, {grid.x_max}] is narrower than "
            f"twice the dependence buffer {buf:g}; widen the domain")
    return lo, hi


# --- spectral construction --------------------------------------------------

def mode_truncation_deficit(op: OperatorKind, t: float, H: float,
                            cutoff: float) -> float:
    """Variance mass beyond the mode cutoff, relative to the full variance.

    Uses the 1/(2 xi^2) (heat) and t/(2 xi^2) (wave) kernel-energy tails,
    which bound the truncated modes from above for cutoff^2 >> 1/t.
    """
    density = make_density(H)
    scale = 1.0 if op is OperatorKind.HEAT else t
    tail = density.c_H * scale * cutoff ** (-2.0 * H) / (2.0 * H)
    return tail / variance_integral(op, t, density)


def _suggest_cutoff(op: OperatorKind, t: float, H: float, tol: float) -> float:
    density = make_density(H)
    scale = 1.0 if op is OperatorKind.HEAT else t
    var = variance_integral(op, t, density)
    return (density.c_H * scale / (2.0 * H * tol * var)) ** (1.0 / (2.0 * H))


def _resolve_cutoff(op: OperatorKind, t: float, H: float, mode: ModeConfig
                    ) -> float:
    if mode.cutoff is None:
        return max(256.0, _suggest_cutoff(op, t, H, mode.deficit_tol))
    deficit = mode_truncation_deficit(op, t, H, mode.cutoff)
    if deficit > mode.deficit_tol:
        raise ConfigurationError(
            f"mode cutoff {mode.cutoff:g} leaves a variance deficit of "
            f"{deficit:.2%}; suggested cutoff >= "
            f"{_suggest_cutoff(op, t, H, mode.deficit_tol):.1f}")
    return mode.cutoff


def _mode_xi(grid: GridSpec, cutoff: float) -> tuple[np.ndarray, float]:
    dxi = 2.0 * math.pi / grid.width
    n_modes = int(math.ceil(cutoff / dxi))
    xi = (np.arange(n_modes) + 0.5) * dxi
    return xi, dxi


def _heat_mode_states(xi, dt, n_t, spectral_var, rng):
    """Exact OU recursion per mode; yields the state row at every time node."""
    decay = np.exp(-xi * xi * dt)
    inj_sd = np.sqrt(spectral_var * (-np.expm1(-2.0 * xi * xi * dt))
                     / (2.0 * xi * xi))
    a = np.zeros(xi.size)
    b = np.zeros(xi.size)
    yield a, b
    for _ in range(n_t):
        a = decay * a + inj_sd * rng.standard_normal(xi.size)
        b = decay * b + inj_sd * rng.standard_normal(xi.size)
        yield a, b


def _wave_mode_states(xi, dt, n_t, spectral_var, rng):
    """Exact rotation recursion for the (position, velocity/xi) mode pair."""
    theta = xi * dt
    c, s = np.cos(theta), np.sin(theta)
    # per-step injected covariance of (a, adot/xi), scaled by the mode's
    # spectral mass; the scaling by 1/xi makes the free evolution a rotation
    caa = spectral_var * (dt / 2.0 - np.sin(2.0 * theta) / (4.0 * xi)) / (xi * xi)
    cww = spectral_var * (dt / 2.0 + np.sin(2.0 * theta) / (4.0 * xi)) / (xi * xi)
    caw = spectral_var * (1.0 - np.cos(2.0 * theta)) / (4.0 * xi ** 3)
    l11 = np.sqrt(np.maximum(caa, 0.0))
    with np.errstate(divide="ignore", invalid="ignore"):
        l21 = np.where(l11 > 0, caw / l11, 0.0)
    l22 = np.sqrt(np.maximum(cww - l21 * l21, 0.0))
    a, wa = np.zeros(xi.size), np.zeros(xi.size)
    b, wb = np.zeros(xi.size), np.zeros(xi.size)
    yield a, b
    for _ in range(n_t):
        g1 = rng.standard_normal(xi.size)
        g2 = rng.standard_normal(xi.size)
        a, wa = (c * a + s * wa + l11 * g1,
                 -s * a + c * wa + l21 * g1 + l22 * g2)
        g1 = rng.standard_normal(xi.size)
        g2 = rng.standard_normal(xi.size)
        b, wb = (c * b + s * wb + l11 * g1,
                 -s * b + c * wb + l21 * g1 + l22 * g2)
        yield a, b


def _copy_rng(seed: int, copy: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(copy,)))


def stochastic_convolution_spectral(op: OperatorKind, H: float, grid: GridSpec,
                                    d: int, sigma, seed: int,
                                    mode: ModeConfig = ModeConfig(),
                                    eval_x: Optional[np.ndarray] = None
                                    ) -> SolutionField:
    """Exact-in-law Gaussian field at the grid nodes via spectral modes.

    Each Fourier mode xi_k carries an independent cosine/sine pair driven by
    white-in-time noise of spectral mass c_H |xi_k|^{1-2H} dxi; heat modes
    decay exponentially, wave modes rotate in phase space, both stepped by
    exact one-step recursions (any dt).  On the full grid, modes beyond the
    spatial Nyquist frequency are folded onto the FFT grid, which is still
    exact in law at the nodes (folding just evaluates each mode there).
    """
    cutoff = _resolve_cutoff(op, grid.t_max, H, mode)
    density = make_density(H)
    xi, dxi = _mode_xi(grid, cutoff)
    spectral_var = density.c_H * xi ** density.exponent * dxi
    states = _heat_mode_states if op is OperatorKind.HEAT else _wave_mode_states
    sqrt2 = math.sqrt(2.0)
    if eval_x is not None:
        x = np.asarray(eval_x, dtype=float)
        cos_basis = np.cos(np.outer(xi, x))
        sin_basis = np.sin(np.outer(xi, x))
        copies = np.empty((d, grid.n_t + 1, x.size))
        for copy in range(d):
            rng = _copy_rng(seed, copy)
            for j, (a, b) in enumerate(states(xi, grid.dt, grid.n_t,
                                              spectral_var, rng)):
                copies[copy, j] = sqrt2 * (a @ cos_basis + b @ sin_basis)
        window = (float(x.min()), float(x.max()))
    else:
        n = grid.n_x
        n_fold = int(math.ceil(xi.size / n))
        pad = n_fold * n - xi.size
        phase = np.exp(1j * xi * grid.x_min)
        twiddle = sqrt2 * np.exp(1j * math.pi * np.arange(n) / n) * n
        copies = np.empty((d, grid.n_t + 1, n))
        for copy in range(d):
            rng = _copy_rng(seed, copy)
            for j, (a, b) in enumerate(states(xi, grid.dt, grid.n_t,
                                              spectral_var, rng)):
                z = np.concatenate([(a - 1j * b) * phase, np.zeros(pad)])
                folded = z.reshape(n_fold, n).sum(axis=0)
                copies[copy, j] = np.real(twiddle * np.fft.ifft(folded))
        window = evaluation_window(op, grid)
    sigma = np.asarray(sigma, dtype=float)
    values = np.einsum("ij,jtx->itx", sigma, copies)
    return SolutionField(grid=grid, values=values, eval_window=window, seed=seed)


# --- direct construction ----------------------------------------------------

_GAUSS_N = 12
_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(_GAUSS_N)


def _heat_cell_average(t_hi: np.ndarray, t_lo: np.ndarray, offsets: np.ndarray,
                       dx: float) -> np.ndarray:
    """Cell average of the heat kernel over [t_lo, t_hi] x one space cell.

    Time integral taken in the variable u = sqrt(time lag), which removes
    the 1/sqrt(lag) singularity; the space integral is an erf difference.
    """
    lo = np.sqrt(np.maximum(t_lo, 0.0))
    hi = np.sqrt(np.maximum(t_hi, 0.0))
    mid = 0.5 * (hi + lo)
    half = 0.5 * (hi - lo)
    left = offsets + 0.5 * dx
    right = offsets - 0.5 * dx
    total = np.zeros((t_hi.size, offsets.size))
    for node, weight in zip(_GL_NODES, _GL_WEIGHTS):
        u = mid + half * node  # (n_lags,)
        u = u[:, None]
        seg = 0.5 * (special.erf(left[None, :] / (2.0 * u))
                     - special.erf(right[None, :] / (2.0 * u)))
        total += (weight * half)[:, None] * 2.0 * u * seg
    dt = t_hi - t_lo
    return total / (dt[:, None] * dx)


def _wave_cell_average(t_hi: np.ndarray, t_lo: np.ndarray, offsets: np.ndarray,
                       dx: float, panels: int = 64) -> np.ndarray:
    """Cell average of the light-cone indicator kernel (overlap fraction / 2)."""
    n_lags = t_hi.size
    out = np.empty((n_lags, offsets.size))
    rel = (np.arange(panels) + 0.5) / panels
    left = offsets + 0.5 * dx
    right = offsets - 0.5 * dx
    for idx in range(n_lags):
        r = t_lo[idx] + rel * (t_hi[idx] - t_lo[idx])  # (panels,)
        lo = np.maximum(right[None, :], -r[:, None])
        hi = np.minimum(left[None, :], r[:, None])
        length = np.clip(hi - lo, 0.0, None)
        out[idx] = 0.5 * length.mean(axis=0)
    dt = t_hi - t_lo
    return out / (dt[:, None] * dx) * dt[:, None]


def direct_kernel_rows(op: OperatorKind, grid: GridSpec) -> np.ndarray:
    """Cell-averaged kernel on circular node-to-cell-center offsets.

    Row l (l = 1..n_t) covers time lags [(l-1) dt, l dt]; entry k is the
    average against the cell centered at offset (k dx - dx/2), wrapped into
    [-width/2, width/2).  Row 0 is zero (no causal cells).
    """
    n = grid.n_x
    offs = (np.arange(n) * grid.dx - 0.5 * grid.dx + 0.5 * grid.width) \
        % grid.width - 0.5 * grid.width
    lags_hi = np.arange(1, grid.n_t + 1) * grid.dt
    lags_lo = lags_hi - grid.dt
    avg = _heat_cell_average if op is OperatorKind.HEAT else _wave_cell_average
    rows = np.zeros((grid.n_t + 1, n))
    rows[1:] = avg(lags_hi, lags_lo, offs, grid.dx)
    return rows


def _convolve_rows(kernel_rows: np.ndarray, inc: np.ndarray) -> np.ndarray:
    """Causal time-lag convolution with circular spatial convolution.

    out[j] = sum_{l=1..j} ifft(fft(kernel_rows[l]) * fft(inc[j-l])).
    """
    n_t1, n = kernel_rows.shape
    k_hat = np.fft.rfft(kernel_rows, axis=1)
    i_hat = np.fft.rfft(inc, axis=1)
    out_hat = np.zeros((n_t1, k_hat.shape[1]), dtype=complex)
    for j in range(1, n_t1):
        lags = np.arange(1, j + 1)
        out_hat[j] = np.einsum("lk,lk->k", k_hat[lags], i_hat[j - lags])
    return np.fft.irfft(out_hat, n=n, axis=1)


def stochastic_convolution_direct(op: OperatorKind, sheet: NoiseSheet,
                                  sigma=None) -> SolutionField:
    """Riemann-type convolution of the sampled sheet on the sheet's own grid.

    Spatial convolution is circular; the dependence buffer keeps wraparound
    mass negligible inside the evaluation window.
    """
    grid = sheet.grid
    window = evaluation_window(op, grid)
    if sigma is None:
        sigma = np.eye(sheet.d)
    sigma = np.asarray(sigma, dtype=float)
    rows = direct_kernel_rows(op, grid)
    copies = np.empty((sheet.d, grid.n_t + 1, grid.n_x))
    for comp in range(sheet.d):
        copies[comp] = _convolve_rows(rows, sheet.increments[comp])
    values = np.einsum("ij,jtx->itx", sigma, copies)
    return SolutionField(grid=grid, values=values, eval_window=window,
                         seed=sheet.seed)


def direct_weights(op: OperatorKind, grid: GridSpec, t: float, x: float
                   ) -> np.ndarray:
    """Convolution weights so that field(t, x) = sum(weights * increments).

    Precomputable once per evaluation point and reused across replicas.
    Requires (t, x) inside the grid with x in the evaluation window.
    """
    lo, hi = evaluation_window(op, grid)
    if not lo <= x <= hi:
        raise ValueError(f"evaluation point x={x:g} outside buffered window "
                         f"[{lo:g}, {hi:g}]")
    if not 0.0 < t <= grid.t_max:
        raise ValueError("evaluation time outside the grid")
    offs = x - grid.x_cells()
    n_full = int(math.floor(t / grid.dt + 1e-12))
    lags_hi = t - np.arange(n_full) * grid.dt
    lags_lo = np.maximum(lags_hi - grid.dt, 0.0)
    lags_hi, lags_lo = lags_hi[::-1], lags_lo[::-1]
    avg = _heat_cell_average if op is OperatorKind.HEAT else _wave_cell_average
    weights = np.zeros((grid.n_t, grid.n_x))
    weights[:n_full] = avg(lags_hi, lags_lo, offs, grid.dx)[::-1]
    return weights


# --- drift and Picard -------------------------------------------------------

def drift_convolution(op: OperatorKind, u_history: SolutionField,
                      drift: DriftSpec, t: float, x: float) -> np.ndarray:
    """Space-time convolution of the Green's function against b(u) at (t, x).

    Left-endpoint rule in time, trapezoid (uniform-grid) in space; the
    field's temporal roughness makes higher-order rules pointless.
    """
    grid = u_history.grid
    if t > grid.t_max + 1e-12:
        raise ValueError("history does not cover the requested time")
    xs = u_history.x_nodes
    n_steps = int(math.floor(t / grid.dt + 1e-12))
    out = np.zeros(u_history.values.shape[0])
    for i in range(n_steps):
        lag = t - i * grid.dt
        g = green_value(op, lag, x - xs)
        bu = drift(u_history.values[:, i, :])
        out += grid.dt * grid.dx * (bu @ g)
    return out


def _drift_field(op: OperatorKind, kernel_rows: np.ndarray,
                 values: np.ndarray, drift: DriftSpec, grid: GridSpec
                 ) -> np.ndarray:
    """Grid-wise drift convolution used inside the Picard loop.

    Uses the cell-averaged kernel rows in time (left-endpoint evaluation of
    b(u)) and circular spatial convolution.
    """
    bu = drift(values)  # (d, n_t+1, n_x)
    d = values.shape[0]
    out = np.empty_like(values)
    # shift kernel rows by half a cell: rows are centered on cell centers,
    # b(u) lives on nodes; roll by interpolating b(u) to centers.
    bu_cells = 0.5 * (bu + np.roll(bu, -1, axis=2))
    for comp in range(d):
        out[comp] = _convolve_rows(kernel_rows, bu_cells[comp, :-1, :])
    return out * grid.dt * grid.dx


def homogeneous_field(op: OperatorKind, init: InitialData, grid: GridSpec
                      ) -> np.ndarray:
    """Homogeneous solution sampled on the full grid, (n_t+1, n_x)."""
    xs = grid.x_min + np.arange(grid.n_x) * grid.dx
    ts = np.arange(grid.n_t + 1) * grid.dt
    u0 = np.asarray(init.u0(xs), dtype=float)
    out = np.empty((grid.n_t + 1, grid.n_x))
    out[0] = u0
    if op is OperatorKind.HEAT:
        freq = np.fft.rfftfreq(grid.n_x, d=grid.dx) * 2.0 * math.pi
        u0_hat = np.fft.rfft(u0)
        for j, t in enumerate(ts[1:], start=1):
            out[j] = np.fft.irfft(u0_hat * np.exp(-t * freq ** 2), n=grid.n_x)
        return out
    if init.v0 is None:
        raise ValueError("wave operator requires initial velocity v0")
    v0 = np.asarray(init.v0(xs), dtype=float)
    # cumulative integral of v0 on the periodic grid for the d'Alembert term
    prim = np.concatenate([[0.0], np.cumsum(0.5 * (v0[1:] + v0[:-1]))]) * grid.dx
    width = grid.width

    def u0_at(pos):
        return np.interp((pos - grid.x_min) % width + grid.x_min, xs, u0,
                         period=width)

    per_period = prim[-1] + 0.5 * (v0[-1] + v0[0]) * grid.dx
    xp = np.arange(grid.n_x + 1) * grid.dx
    fp = np.concatenate([prim, [per_period]])

    def prim_at(pos):
        # primitive extended by its mean drift per period
        wrapped = (pos - grid.x_min) % width
        laps = np.floor((pos - grid.x_min) / width)
        return np.interp(wrapped, xp, fp) + laps * per_period

    for j, t in enumerate(ts[1:], start=1):
        out[j] = 0.5 * (u0_at(xs + t) + u0_at(xs - t)) \
            + 0.5 * (prim_at(xs + t) - prim_at(xs - t))
    return out


def picard_solve(model: ModelSpec, grid: GridSpec,
                 config: PicardConfig = PicardConfig(),
                 sheet: Optional[NoiseSheet] = None,
                 seed: Optional[int] = None
                 ) -> tuple[SolutionField, list[float]]:
    """Fixed-point iteration for the mild solution on one noise realization.

    u^0 = homogeneous part; u^{n+1} = homogeneous + drift convolution of u^n
    + stochastic convolution.  Returns the converged field and the sequence
    of sup-distances between consecutive iterates.
    """
    from .noise import sample_sheet

    window = evaluation_window(model.op, grid)
    if sheet is None and seed is not None and np.any(model.sigma):
        sheet = sample_sheet(grid, model.H, model.d, seed)
    omega = homogeneous_field(model.op, model.init, grid)
    base = np.broadcast_to(omega, (model.d,) + omega.shape).copy()
    if sheet is not None and np.any(model.sigma):
        conv = stochastic_convolution_direct(model.op, sheet, model.sigma)
        base = base + conv.values
    kernel_rows = direct_kernel_rows(model.op, grid)
    u = base.copy()
    distances: list[float] = []
    for _ in range(config.max_iters):
        nxt = base + _drift_field(model.op, kernel_rows, u, model.drift, grid)
        dist = float(np.max(np.linalg.norm(nxt - u, axis=0)))
        distances.append(dist)
        u = nxt
        if dist < config.sup_tol:
            field_seed = sheet.seed if sheet is not None else seed
            return (SolutionField(grid=grid, values=u, eval_window=window,
                                  seed=field_seed), distances)
    raise PicardNonconvergence(distances)


# --- ensembles --------------------------------------------------------------

def ensemble_run(model: ModelSpec, grid: GridSpec, n_replicas: int,
                 base_seed: int, method: str = "spectral",
                 mode: ModeConfig = ModeConfig(),
                 config: PicardConfig = PicardConfig()
                 ) -> Iterable[SolutionField]:
    """Yield independent replicas; replica r uses seed base_seed + r."""
    if n_replicas < 1:
        raise ValueError("n_replicas must be positive")
    from .noise import sample_sheet

    if method == "spectral" and model.drift.name != "none":
        raise ConfigurationError("spectral method supports drift-free models "
                                 "only; use method='picard'")
    omega = None
    if method == "spectral" and not _is_zero_init(model.init):
        omega = homogeneous_field(model.op, model.init, grid)
    for r in range(n_replicas):
        seed = base_seed + r
        if method == "spectral":
            conv = stochastic_convolution_spectral(
                model.op, model.H, grid, model.d, model.sigma, seed, mode)
            if omega is not None:
                conv = replace(conv, values=conv.values + omega[None, :, :])
            yield conv
        elif method == "direct":
            sheet = sample_sheet(grid, model.H, model.d, seed)
            yield stochastic_convolution_direct(model.op, sheet, model.sigma)
        elif method == "picard":
            field, _ = picard_solve(model, grid, config, seed=seed)
            yield field
        else:
            raise ValueError(f"unknown method {method!r}")


def _is_zero_init(init: InitialData) -> bool:
    probe = np.linspace(-1.0, 1.0, 7)
    zero_u = np.allclose(np.asarray(init.u0(probe), float), 0.0)
    zero_v = init.v0 is None or np.allclose(np.asarray(init.v0(probe), float), 0.0)
    return zero_u and zero_v


# --- binary snapshot --------------------------------------------------------
#
# Same envelope as the noise sheet, magic "RSOL1"; payload is the values
# array in (component, time node, space node) order, little-endian f64.

FIELD_MAGIC = b"RSOL1"
_FIELD_HEADER = struct.Struct("<5sIdQddQQQdd")


def write_field(fld: SolutionField, fp: Union[str, BinaryIO]) -> None:
    own = isinstance(fp, (str, bytes))
    f = open(fp, "wb") if own else fp
    try:
        g = fld.grid
        d = fld.values.shape[0]
        f.write(_FIELD_HEADER.pack(FIELD_MAGIC, 1, g.t_max, g.n_t, g.x_min,
                                   g.x_max, g.n_x, d, fld.seed or 0,
                                   fld.eval_window[0], fld.eval_window[1]))
        f.write(np.ascontiguousarray(fld.values, dtype="<f8").tobytes())
    finally:
        if own:
            f.close()


def read_field(fp: Union[str, BinaryIO]) -> SolutionField:
    own = isinstance(fp, (str, bytes))
    f = open(fp, "rb") if own else fp
    try:
        header = f.read(_FIELD_HEADER.size)
        magic, version, t_max, n_t, x_min, x_max, n_x, d, seed, wlo, whi = \
            _FIELD_HEADER.unpack(header)
        if magic != FIELD_MAGIC:
            raise ValueError(f"not a field snapshot (magic {magic!r})")
        grid = GridSpec(t_max=t_max, n_t=n_t, x_min=x_min, x_max=x_max, n_x=n_x)
        data = np.frombuffer(f.read(), dtype="<f8").reshape(d, n_t + 1, n_x)
        return SolutionField(grid=grid, values=data.copy(),
                             eval_window=(wlo, whi), seed=seed)
    finally:
        if own:
            f.close()
