"""Green's functions of the heat and wave operators and the homogeneous
(deterministic) part of the mild solution.

Fourier convention used throughout the package:

    Fg(xi) = int exp(-i xi x) g(x) dx,

so the heat kernel transforms to exp(-t xi^2) and the wave kernel to
sin(t xi)/xi.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from scipy import integrate

__all__ = [
    "OperatorKind", "InitialData", "green_value", "green_fourier",
    "homogeneous_solution",
]


class OperatorKind(enum.Enum):
    HEAT = "heat"
    WAVE = "wave"

    @classmethod
    def parse(cls, name: str) -> "OperatorKind":
        try:
            return cls(name.lower())
        except ValueError:
            raise ValueError(f"unknown operator {name!r}; expected 'heat' or 'wave'")


@dataclass(frozen=True)
class InitialData:
    """Deterministic initial data with a declared Holder modulus.

    ``v0`` is the initial velocity; it is ignored for the heat operator.
    The Holder bound |u0(x)-u0(y)| <= L0 |x-y|^alpha is a contract on the
    declared window, spot-checked by ``check_holder``.
    """

    u0: Callable[[np.ndarray], np.ndarray]
    v0: Optional[Callable[[np.ndarray], np.ndarray]] = None
    holder_exponent: float = 1.0
    holder_constant: float = 0.0
    bound: float = 0.0

    def __post_init__(self):
        if not 0.0 < self.holder_exponent <= 1.0:
            raise ValueError("holder_exponent must lie in (0, 1]")
        if self.holder_constant < 0 or self.bound < 0:
            raise ValueError("holder_constant and bound must be nonnegative")

    def check_holder(self, window=(-1.0, 1.0), n=200, slack=1.01):
        """Spot-check the declared Holder modulus on a grid over window."""
        x = np.linspace(window[0], window[1], n)
        for f in (self.u0, self.v0):
            if f is None:
                continue
            vals = np.asarray(f(x), dtype=float)
            if np.max(np.abs(vals)) > slack * self.bound:
                return False
            dv = np.abs(vals[:, None] - vals[None, :])
            dx = np.abs(x[:, None] - x[None, :])
            mask = dx > 0
            if np.any(dv[mask] > slack * self.holder_constant
                      * dx[mask] ** self.holder_exponent):
                return False
        return True


ZERO_INITIAL = InitialData(u0=lambda x: np.zeros_like(np.asarray(x, float)),
                           v0=lambda x: np.zeros_like(np.asarray(x, float)))


def _check_t(t):
    if t <= 0:
        raise ValueError(f"time must be positive, got {t}")


def green_value(op: OperatorKind, t: float, x):
    """Green's function G_t(x): heat kernel, or half the light-cone indicator.

    On the wave cone boundary |x| = t the indicator evaluates to 0 (a
    measure-zero tie-break; any choice integrates identically).
    """
    _check_t(t)
    x = np.asarray(x, dtype=float)
    if op is OperatorKind.HEAT:
        return np.exp(-x * x / (4.0 * t)) / math.sqrt(4.0 * math.pi * t)
    return np.where(np.abs(x) < t, 0.5, 0.0)


def green_fourier(op: OperatorKind, t: float, xi):
    """Fourier transform of G_t: exp(-t xi^2) or sin(t xi)/xi (value t at 0)."""
    _check_t(t)
    xi = np.asarray(xi, dtype=float)
    if op is OperatorKind.HEAT:
        return np.exp(-t * xi * xi)
    return t * np.sinc(t * xi / math.pi)


# Truncate the Gaussian smoothing integral at this many widths sqrt(t);
# the neglected mass is below 1e-22.
_HEAT_TAIL_WIDTHS = 10.0


def homogeneous_solution(op: OperatorKind, init: InitialData, t: float, x: float,
                         tol: float = 1e-10) -> float:
    """Solution of the noise-free, drift-free equation at (t, x).

    Heat: Gaussian smoothing of u0 by quadrature.  Wave: d'Alembert formula.
    """
    if t < 0:
        raise ValueError("time must be nonnegative")
    if t == 0:
        return float(np.asarray(init.u0(np.asarray(x, float))))
    if op is OperatorKind.HEAT:
        half_width = _HEAT_TAIL_WIDTHS * math.sqrt(t)
        val, err = integrate.quad(
            lambda eta: green_value(op, t, x - eta) * float(np.asarray(init.u0(np.asarray(eta, float)))),
            x - half_width, x + half_width, epsabs=tol, epsrel=tol, limit=400)
        if err > 10 * tol * (1.0 + abs(val)):
            raise QuadratureNonconvergence(val, err)
        return val
    if init.v0 is None:
        raise ValueError("wave operator requires initial velocity v0")
    u0 = lambda y: float(np.asarray(init.u0(np.asarray(y, float))))
    val = 0.5 * (u0(x + t) + u0(x - t))
    vel, err = integrate.quad(
        lambda eta: float(np.asarray(init.v0(np.asarray(eta, float)))),
        x - t, x + t, epsabs=tol, epsrel=tol, limit=400)
    if err > 10 * tol * (1.0 + abs(vel)):
        raise QuadratureNonconvergence(vel, err)
    return val + 0.5 * vel


class QuadratureNonconvergence(RuntimeError):
    def __init__(self, estimate, achieved_tol):
        super().__init__(f"quadrature achieved tolerance {achieved_tol:.3g} only")
        self.estimate = estimate
        self.achieved_tol = achieved_tol
