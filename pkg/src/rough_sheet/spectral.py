"""The fractional spectral measure and its closed-form kernel integrals.

The spatial covariance of the noise is represented in frequency by the
weight c_H |xi|^{1-2H} dxi.  Everything here reduces to one-dimensional
integrals over xi because the time integrals of the squared kernel
transforms are available in closed form under this package's Fourier
convention (see kernels module):

    heat:  int_0^t exp(-2 theta xi^2) dtheta = (1 - exp(-2 t xi^2)) / (2 xi^2)
    wave:  int_0^t sin(theta xi)^2 / xi^2 dtheta
           = t/(2 xi^2) * (1 - sinc(2 t xi))
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Tuple

import numpy as np
from scipy import integrate, special

from .kernels import OperatorKind
from .quadrature import (DEFAULT_QUAD, QuadratureError, QuadratureSpec,
                         TrigTerm, dyadic_tail, half_line_integral,
                         multiply_by_one_minus_cos, scale_term)

__all__ = [
    "SpectralDensity", "make_density", "weighted_energy", "difference_energy",
    "kernel_time_energy", "kernel_energy", "variance_integral",
    "temporal_shift_energy", "spatial_shift_energy", "covariance_gap",
    "increment_variance",
]


@dataclass(frozen=True)
class SpectralDensity:
    """Weight c_H |xi|^{1-2H} with the constants tied to the Hurst index.

    H = 1/2 is the white-noise degenerate case: C_H = 0 and the weight is
    identically 1.
    """

    H: float
    c_H: float
    C_H: float

    @property
    def exponent(self) -> float:
        return 1.0 - 2.0 * self.H

    def weight(self, xi):
        return self.c_H * np.abs(xi) ** self.exponent


def make_density(H: float) -> SpectralDensity:
    if not 0.0 < H <= 0.5:
        raise ValueError(f"Hurst index must lie in (0, 0.5], got {H}")
    c_H = special.gamma(2.0 * H + 1.0) * math.sin(math.pi * H) / (2.0 * math.pi)
    C_H = H * (1.0 - 2.0 * H) / 2.0
    return SpectralDensity(H=H, c_H=c_H, C_H=C_H)


def weighted_energy(g_hat: Callable, density: SpectralDensity,
                    quad: QuadratureSpec = DEFAULT_QUAD,
                    exponent: Optional[float] = None) -> float:
    """c_H * int |g_hat(xi)|^2 |xi|^exponent dxi over the real line.

    The exponent defaults to 1-2H.  Divergent integrands surface as
    QuadratureError from the tail refinement.
    """
    e = density.exponent if exponent is None else exponent
    total = 0.0
    for sign in (1.0, -1.0):
        f = lambda xi, s=sign: (np.abs(g_hat(s * np.asarray(xi, float))) ** 2
                                * np.abs(xi) ** e)
        total += half_line_integral(f, quad)
    return density.c_H * total


def difference_energy(g: Callable, density: SpectralDensity,
                      quad: QuadratureSpec = DEFAULT_QUAD,
                      support: float = 20.0) -> float:
    """C_H * int int |g(x)-g(y)|^2 / |x-y|^{2-2H} dx dy for decaying g.

    ``support`` declares the half-width outside which g is negligible; for
    shifts beyond twice that width the squared-difference mass is exactly
    2 int g^2, which keeps the slowly decaying z^{2H-2} tail honest instead
    of letting adaptive quadrature miss the separated bumps.

    After the substitution z = x - y the diagonal singularity becomes the
    integrable factor z^{2H-2} * O(z^2), so no explicit splitting is needed.
    """
    H = density.H
    if H >= 0.5:
        raise ValueError("difference energy requires H < 1/2")
    inner_tol = max(quad.rel_tol, 1e-10)
    energy, _ = integrate.quad(lambda x: g(x) ** 2, -support, support,
                               epsabs=quad.abs_tol, epsrel=inner_tol, limit=200)

    def shift_l2(z):
        if z >= 2.0 * support:
            return 2.0 * energy
        val, _ = integrate.quad(
            lambda x: (g(x + z) - g(x)) ** 2, -support - z, support,
            epsabs=quad.abs_tol, epsrel=inner_tol, limit=400,
            points=[-z, 0.0])
        return val

    def f(z):
        z = float(z)
        return shift_l2(z) * z ** (2.0 * H - 2.0) if z > 0 else 0.0

    outer = half_line_integral(np.vectorize(f), quad,
                               tail_start=max(quad.cutoff, 2.0 * support))
    return 2.0 * density.C_H * outer


def kernel_time_energy(op: OperatorKind, t: float, xi):
    """Closed-form int_0^t |FG_theta(xi)|^2 dtheta."""
    xi = np.asarray(xi, dtype=float)
    if op is OperatorKind.HEAT:
        u = 2.0 * t * xi * xi
        with np.errstate(divide="ignore", invalid="ignore"):
            val = -np.expm1(-u) / (2.0 * xi * xi)
        return np.where(u < 1e-12, t * (1.0 - u / 2.0), val)
    z = 2.0 * t * xi
    with np.errstate(divide="ignore", invalid="ignore"):
        val = t * (1.0 - np.sinc(z / math.pi)) / (2.0 * xi * xi)
    return np.where(np.abs(z) < 1e-6, t ** 3 / 3.0 * (1.0 - z * z / 10.0), val)


def _kernel_tail_terms(op: OperatorKind, t: float, exponent: float):
    """Tail expansion of kernel_time_energy(op,t,xi) * xi^exponent."""
    e = exponent
    if op is OperatorKind.HEAT:
        amp = lambda xi: -np.expm1(-2.0 * t * np.asarray(xi, float) ** 2) \
            * np.asarray(xi, float) ** (e - 2.0) / 2.0
        return [TrigTerm(amp, "one")]
    return [
        TrigTerm(lambda xi: 0.5 * t * np.asarray(xi, float) ** (e - 2.0), "one"),
        TrigTerm(lambda xi: 0.25 * np.asarray(xi, float) ** (e - 3.0), "sin",
                 2.0 * t, sign=-1.0),
    ]


def _heat_tail_start(t: float, quad: QuadratureSpec) -> float:
    # Beyond this point exp(-2 t xi^2) has stopped shaping the envelope.
    return max(quad.cutoff, math.sqrt(20.0 / t))


def kernel_energy(op: OperatorKind, t: float, exponent: float,
                  quad: QuadratureSpec = DEFAULT_QUAD) -> float:
    """int_0^t int_R |FG_theta(xi)|^2 |xi|^exponent dtheta dxi.

    Converges exactly for exponent in (-1, 1); outside that band the
    refinement fails and raises QuadratureError.
    """
    if t <= 0:
        raise ValueError("time must be positive")
    f = lambda xi: kernel_time_energy(op, t, xi) * np.abs(xi) ** exponent
    start = _heat_tail_start(t, quad) if op is OperatorKind.HEAT else quad.cutoff
    tail = _kernel_tail_terms(op, t, exponent)
    return 2.0 * half_line_integral(f, quad, tail_start=start, tail_terms=tail)


def variance_integral(op: OperatorKind, t: float, density: SpectralDensity,
                      quad: QuadratureSpec = DEFAULT_QUAD) -> float:
    """Variance of the stochastic convolution at a point, from the spectral
    side: c_H int_0^t int |FG|^2 |xi|^{1-2H}.  Scales as t^H (heat) and
    t^{1+2H} (wave)."""
    return density.c_H * kernel_energy(op, t, density.exponent, quad)


def temporal_shift_energy(op: OperatorKind, h: float, T: float,
                          density: SpectralDensity,
                          quad: QuadratureSpec = DEFAULT_QUAD) -> float:
    """int_0^T int |FG_{t+h} - FG_t|^2 |xi|^{1-2H} dxi dt.

    Bounded by C h^{2H} (heat) and C h^{4H}... in variance terms the bound
    exponents are H for heat and 2H for wave after dividing by the metric
    power; see the shift-bound tests.
    """
    if h <= 0 or T <= 0:
        raise ValueError("shift and horizon must be positive")
    e = density.exponent
    if op is OperatorKind.HEAT:
        def f(xi):
            xi = np.asarray(xi, float)
            a = -np.expm1(-h * xi * xi)
            b = -np.expm1(-2.0 * T * xi * xi)
            with np.errstate(divide="ignore", invalid="ignore"):
                val = a * a * b / (2.0 * xi * xi) * np.abs(xi) ** e
            return np.where(xi == 0.0, 0.0, val)
        start = max(quad.cutoff, math.sqrt(20.0 / h), math.sqrt(20.0 / (2 * T)))
        amp = lambda xi: (-np.expm1(-h * np.asarray(xi, float) ** 2)) ** 2 \
            * (-np.expm1(-2.0 * T * np.asarray(xi, float) ** 2)) \
            * np.asarray(xi, float) ** (e - 2.0) / 2.0
        return 2.0 * half_line_integral(f, quad, tail_start=start,
                                        tail_terms=[TrigTerm(amp, "one")])

    # (sin((t+h)xi) - sin(t xi))^2 / xi^2 integrated over t in [0, T]:
    # (1 - cos(h xi)) * [T/xi^2 + (sin((2T+h)xi) - sin(h xi)) / (2 xi^3)]
    def f(xi):
        xi = np.asarray(xi, float)
        with np.errstate(divide="ignore", invalid="ignore"):
            bracket = T / xi ** 2 + (np.sin((2 * T + h) * xi) - np.sin(h * xi)) \
                / (2.0 * xi ** 3)
            val = (1.0 - np.cos(h * xi)) * bracket * np.abs(xi) ** e
        # integrand ~ h^2 T xi^e /2 near 0
        return np.where(np.abs(xi) < 1e-8, 0.0, val)

    base = [
        TrigTerm(lambda xi: T * np.asarray(xi, float) ** (e - 2.0), "one"),
        TrigTerm(lambda xi: 0.5 * np.asarray(xi, float) ** (e - 3.0), "sin",
                 2.0 * T + h),
        TrigTerm(lambda xi: 0.5 * np.asarray(xi, float) ** (e - 3.0), "sin",
                 h, sign=-1.0),
    ]
    tail = multiply_by_one_minus_cos(base, h)
    return 2.0 * half_line_integral(f, quad, tail_start=quad.cutoff,
                                    tail_terms=tail)


def spatial_shift_energy(op: OperatorKind, h: float, T: float,
                         density: SpectralDensity,
                         quad: QuadratureSpec = DEFAULT_QUAD) -> float:
    """int_0^T int (1 - cos(xi h)) |FG_t|^2 |xi|^{1-2H} dxi dt; O(|h|^{2H})."""
    if T <= 0:
        raise ValueError("horizon must be positive")
    if h == 0:
        return 0.0
    return _gap_integral(op, T, h, density.exponent, quad)


def covariance_gap(op: OperatorKind, t: float, x: float,
                   density: SpectralDensity,
                   quad: QuadratureSpec = DEFAULT_QUAD) -> float:
    """R(0) - R(x) for the driftless solution with sigma = I at time t:

        c_H int (1 - cos(xi x)) |xi|^{1-2H} int_0^t |FG_theta|^2 dtheta dxi
    """
    if t <= 0:
        raise ValueError("time must be positive")
    if x == 0:
        return 0.0
    return density.c_H * _gap_integral(op, t, x, density.exponent, quad)


def _gap_integral(op: OperatorKind, t: float, x: float, exponent: float,
                  quad: QuadratureSpec) -> float:
    f = lambda xi: (1.0 - np.cos(x * np.asarray(xi, float))) \
        * kernel_time_energy(op, t, xi) * np.abs(xi) ** exponent
    start = _heat_tail_start(t, quad) if op is OperatorKind.HEAT else quad.cutoff
    tail = multiply_by_one_minus_cos(_kernel_tail_terms(op, t, exponent), x)
    return 2.0 * half_line_integral(f, quad, tail_start=start, tail_terms=tail)


def increment_variance(op: OperatorKind, s: float, t: float,
                       density: SpectralDensity,
                       quad: QuadratureSpec = DEFAULT_QUAD
                       ) -> Tuple[float, float]:
    """Spectral decomposition of Var[u(t,0) - u(s,0)] into (I1, I2).

    I1 covers the noise injected on (s, t] and equals
    variance_integral(op, t-s); I2 is the decorrelation of the kernel over
    [0, s].  Both include the c_H factor, so I1 + I2 is the variance itself.
    """
    if not 0.0 <= s < t:
        raise ValueError("need 0 <= s < t")
    I1 = variance_integral(op, t - s, density, quad)
    if s == 0.0:
        return I1, 0.0
    d = t - s
    e = density.exponent
    if op is OperatorKind.HEAT:
        def f(xi):
            xi = np.asarray(xi, float)
            a = -np.expm1(-d * xi * xi)
            b = -np.expm1(-2.0 * s * xi * xi)
            with np.errstate(divide="ignore", invalid="ignore"):
                val = a * a * b / (2.0 * xi * xi) * np.abs(xi) ** e
            return np.where(xi == 0.0, 0.0, val)
        start = max(quad.cutoff, math.sqrt(20.0 / d), math.sqrt(20.0 / (2 * s)))
        amp = lambda xi: (-np.expm1(-d * np.asarray(xi, float) ** 2)) ** 2 \
            * (-np.expm1(-2.0 * s * np.asarray(xi, float) ** 2)) \
            * np.asarray(xi, float) ** (e - 2.0) / 2.0
        I2 = 2.0 * density.c_H * half_line_integral(
            f, quad, tail_start=start, tail_terms=[TrigTerm(amp, "one")])
        return I1, I2

    # int_0^s (sin((t-th)xi) - sin((s-th)xi))^2 / xi^2 dth
    # = (1 - cos(d xi)) * [s/xi^2 + (sin((t+s)xi) - sin(d xi)) / (2 xi^3)]
    def f(xi):
        xi = np.asarray(xi, float)
        with np.errstate(divide="ignore", invalid="ignore"):
            bracket = s / xi ** 2 + (np.sin((t + s) * xi) - np.sin(d * xi)) \
                / (2.0 * xi ** 3)
            val = (1.0 - np.cos(d * xi)) * bracket * np.abs(xi) ** e
        return np.where(np.abs(xi) < 1e-8, 0.0, val)

    base = [
        TrigTerm(lambda xi: s * np.asarray(xi, float) ** (e - 2.0), "one"),
        TrigTerm(lambda xi: 0.5 * np.asarray(xi, float) ** (e - 3.0), "sin",
                 t + s),
        TrigTerm(lambda xi: 0.5 * np.asarray(xi, float) ** (e - 3.0), "sin",
                 d, sign=-1.0),
    ]
    tail = multiply_by_one_minus_cos(base, d)
    I2 = 2.0 * density.c_H * half_line_integral(
        f, quad, tail_start=quad.cutoff, tail_terms=tail)
    return I1, I2
