"""Exact-in-law sampling of the fractional Brownian sheet on a grid.

The sheet is white in time and fractional (Hurst H <= 1/2) in space.  Cell
increments over a uniform grid are therefore independent across time rows,
while each spatial row is fractional Gaussian noise scaled by sqrt(dt).
Rows are drawn by circulant embedding (Davies-Harte), which is exact in law.

Randomness is keyed as (seed, component, time-row) through numpy's
SeedSequence spawn keys, so replicas and rows are reproducible independently
of evaluation order.
"""

from __future__ import annotations

import io
import struct
from dataclasses import dataclass, field
from typing import BinaryIO, Callable, Union

import numpy as np

__all__ = [
    "GridSpec", "NoiseSheet", "fbs_covariance", "fgn_autocovariance",
    "fgn_unit_autocovariance", "circulant_eigenvalues", "sample_fgn_rows",
    "sample_sheet", "wiener_integral", "write_sheet", "read_sheet",
]

SHEET_MAGIC = b"RSHT1"
SHEET_VERSION = 1


@dataclass(frozen=True)
class GridSpec:
    """Uniform time-space grid; n_x must be a power of two for the embedding."""

    t_max: float
    n_t: int
    x_min: float
    x_max: float
    n_x: int

    def __post_init__(self):
        if self.t_max <= 0 or self.n_t < 1:
            raise ValueError("t_max and n_t must be positive")
        if self.x_min >= self.x_max:
            raise ValueError("need x_min < x_max")
        if self.n_x < 1 or self.n_x & (self.n_x - 1):
            raise ValueError("n_x must be a power of two")

    @property
    def dt(self) -> float:
        return self.t_max / self.n_t

    @property
    def dx(self) -> float:
        return (self.x_max - self.x_min) / self.n_x

    @property
    def width(self) -> float:
        return self.x_max - self.x_min

    def t_cells(self):
        """Centers of the time cells."""
        return (np.arange(self.n_t) + 0.5) * self.dt

    def x_cells(self):
        """Centers of the space cells."""
        return self.x_min + (np.arange(self.n_x) + 0.5) * self.dx

    def t_nodes(self):
        return np.arange(self.n_t + 1) * self.dt

    def x_nodes(self):
        return self.x_min + np.arange(self.n_x + 1) * self.dx


@dataclass(frozen=True)
class NoiseSheet:
    """Sampled rectangular increments of the sheet, (component, t-cell, x-cell)."""

    grid: GridSpec
    H: float
    d: int
    seed: int
    increments: np.ndarray = field(repr=False)

    def __post_init__(self):
        expected = (self.d, self.grid.n_t, self.grid.n_x)
        if self.increments.shape != expected:
            raise ValueError(f"increments shape {self.increments.shape}, "
                             f"expected {expected}")


def fbs_covariance(t: float, x: float, s: float, y: float, H: float,
                   i: int = 0, j: int = 0) -> float:
    """E[W_i(t,x) W_j(s,y)] for the sheet anchored at W(., 0) = 0."""
    if t < 0 or s < 0:
        raise ValueError("times must be nonnegative")
    if not 0.0 < H <= 0.5:
        raise ValueError(f"Hurst index must lie in (0, 0.5], got {H}")
    if i != j:
        return 0.0
    two_h = 2.0 * H
    return min(t, s) * (abs(x) ** two_h + abs(y) ** two_h
                        - abs(x - y) ** two_h) / 2.0


def fgn_unit_autocovariance(k, H: float):
    """Autocovariance of unit-spacing fGn at integer lag k."""
    k = np.abs(np.asarray(k, dtype=float))
    two_h = 2.0 * H
    return 0.5 * ((k + 1.0) ** two_h + np.abs(k - 1.0) ** two_h
                  - 2.0 * k ** two_h)


def fgn_autocovariance(k, H: float, dx: float):
    """Covariance of spatial fBm increments over cells of width dx at lag k."""
    if dx <= 0:
        raise ValueError("dx must be positive")
    return dx ** (2.0 * H) * fgn_unit_autocovariance(k, H)


def circulant_eigenvalues(n: int, H: float) -> np.ndarray:
    """Eigenvalues of the 2n-circulant embedding of the fGn covariance.

    They are provably nonnegative for H <= 1/2; a failure here would mean a
    broken covariance, so it is asserted rather than reported.
    """
    rho = fgn_unit_autocovariance(np.arange(n + 1), H)
    c = np.concatenate([rho, rho[-2:0:-1]])
    lam = np.fft.fft(c).real
    if lam.min() < -1e-9 * lam.max():
        raise AssertionError("circulant embedding produced negative "
                             "eigenvalues; should not happen for H <= 1/2")
    return np.clip(lam, 0.0, None)


def sample_fgn_rows(n_rows: int, n: int, lam: np.ndarray,
                    rng: np.random.Generator) -> np.ndarray:
    """Draw n_rows independent unit-spacing fGn rows of length n.

    ``lam`` comes from circulant_eigenvalues(n, H).  Exact in law.
    """
    m = 2 * n
    z = np.empty((n_rows, m), dtype=complex)
    z[:, 0] = rng.standard_normal(n_rows)
    z[:, n] = rng.standard_normal(n_rows)
    v = rng.standard_normal((n_rows, n - 1, 2))
    z[:, 1:n] = (v[:, :, 0] + 1j * v[:, :, 1]) / np.sqrt(2.0)
    z[:, n + 1:] = np.conj(z[:, n - 1:0:-1])
    rows = np.fft.ifft(np.sqrt(lam) * z, axis=1).real[:, :n]
    return rows * np.sqrt(m)


def _row_rng(seed: int, component: int, t_index: int) -> np.random.Generator:
    return np.random.default_rng(
        np.random.SeedSequence(seed, spawn_key=(component, t_index)))


def sample_sheet(grid: GridSpec, H: float, d: int, seed: int) -> NoiseSheet:
    """Sample the d-component sheet's cell increments, exactly in law."""
    if not 0.0 < H <= 0.5:
        raise ValueError(f"Hurst index must lie in (0, 0.5], got {H}")
    if d < 1:
        raise ValueError("component count must be positive")
    lam = circulant_eigenvalues(grid.n_x, H)
    scale = grid.dx ** H * np.sqrt(grid.dt)
    inc = np.empty((d, grid.n_t, grid.n_x))
    for comp in range(d):
        for i in range(grid.n_t):
            rng = _row_rng(seed, comp, i)
            inc[comp, i] = sample_fgn_rows(1, grid.n_x, lam, rng)[0] * scale
    return NoiseSheet(grid=grid, H=H, d=d, seed=seed, increments=inc)


def wiener_integral(phi: Callable, sheet: NoiseSheet, component: int = 0) -> float:
    """Discrete Wiener integral sum phi(cell center) * increment."""
    t = sheet.grid.t_cells()
    x = sheet.grid.x_cells()
    vals = phi(t[:, None], x[None, :])
    return float(np.sum(vals * sheet.increments[component]))


# --- binary snapshot format -------------------------------------------------
#
# Header: magic "RSHT1", u32 version, f64 H, f64 t_max, u64 n_t,
#         f64 x_min, f64 x_max, u64 n_x, u64 d, u64 seed.
# Payload: increments, (component-major, time-major, space) order,
#          little-endian f64.

_HEADER = struct.Struct("<5sIdd Q dd QQQ".replace(" ", ""))


def write_sheet(sheet: NoiseSheet, fp: Union[str, BinaryIO]) -> None:
    own = isinstance(fp, (str, bytes))
    f = open(fp, "wb") if own else fp
    try:
        g = sheet.grid
        f.write(_HEADER.pack(SHEET_MAGIC, SHEET_VERSION, sheet.H, g.t_max,
                             g.n_t, g.x_min, g.x_max, g.n_x, sheet.d,
                             sheet.seed))
        f.write(np.ascontiguousarray(sheet.increments, dtype="<f8").tobytes())
    finally:
        if own:
            f.close()


def read_sheet(fp: Union[str, BinaryIO]) -> NoiseSheet:
    own = isinstance(fp, (str, bytes))
    f = open(fp, "rb") if own else fp
    try:
        header = f.read(_HEADER.size)
        magic, version, H, t_max, n_t, x_min, x_max, n_x, d, seed = \
            _HEADER.unpack(header)
        if magic != SHEET_MAGIC:
            raise ValueError(f"not a sheet snapshot (magic {magic!r})")
        if version != SHEET_VERSION:
            raise ValueError(f"unsupported sheet version {version}")
        grid = GridSpec(t_max=t_max, n_t=n_t, x_min=x_min, x_max=x_max, n_x=n_x)
        data = np.frombuffer(f.read(), dtype="<f8").reshape(d, n_t, n_x)
        return NoiseSheet(grid=grid, H=H, d=d, seed=seed,
                          increments=data.copy())
    finally:
        if own:
            f.close()
