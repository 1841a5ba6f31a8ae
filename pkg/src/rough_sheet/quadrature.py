"""Half-line quadrature for spectral-density integrals.

The integrals evaluated here all have the shape

    int_0^inf  f(xi) dxi,    f >= 0,

where f behaves like a power law times (possibly) trigonometric factors at
large xi, and may have an integrable algebraic kink at xi = 0.  The head of
the integral is handled by adaptive quadrature; the tail either by dyadic
blocks with geometric extrapolation (smooth envelopes) or, for explicitly
oscillatory terms, by QUADPACK's Fourier-weighted routine.

Tail envelopes decaying like xi^p with p >= -1 are not integrable; the block
scheme detects this (block ratios stop contracting) and raises
QuadratureError instead of returning a bogus value.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np
from scipy import integrate


class QuadratureError(RuntimeError):
    """Raised when a quadrature refinement fails to converge.

    Carries the best available estimate and an error bound so callers can
    report how far the refinement got.
    """

    def __init__(self, message, estimate=None, error_bound=None):
        super().__init__(message)
        self.estimate = estimate
        self.error_bound = error_bound


@dataclass(frozen=True)
class QuadratureSpec:
    """Accuracy targets and truncation controls for spectral integrals."""

    rel_tol: float = 1e-9
    abs_tol: float = 1e-12
    cutoff: float = 1.0
    max_refinements: int = 400

    def __post_init__(self):
        eps = np.finfo(float).eps
        if self.rel_tol < 100 * eps or self.abs_tol < 100 * eps * 1e-4:
            raise ValueError("tolerances below what double precision supports")
        if self.cutoff <= 0 or self.max_refinements < 1:
            raise ValueError("cutoff and max_refinements must be positive")


DEFAULT_QUAD = QuadratureSpec()

# Ratio above which dyadic tail blocks are considered non-contracting,
# i.e. the envelope decays no faster than 1/xi.
_DIVERGENCE_RATIO = 0.995
_MIN_BLOCKS = 6


@dataclass(frozen=True)
class TrigTerm:
    """One term a(xi) * {1 | cos(w xi) | sin(w xi)} of a tail expansion."""

    amplitude: Callable[[np.ndarray], np.ndarray]
    kind: str = "one"  # "one" | "cos" | "sin"
    frequency: float = 0.0
    sign: float = 1.0

    def __post_init__(self):
        if self.kind not in ("one", "cos", "sin"):
            raise ValueError(f"unknown trig kind {self.kind!r}")


def scale_term(term: TrigTerm, factor: float) -> TrigTerm:
    return TrigTerm(term.amplitude, term.kind, term.frequency, term.sign * factor)


def multiply_by_one_minus_cos(terms: Sequence[TrigTerm], x: float) -> list[TrigTerm]:
    """Expand (1 - cos(x xi)) * sum(terms) back into TrigTerm form.

    Uses the product-to-sum identities, so QUADPACK's Fourier weights stay
    applicable to every tail term.
    """
    w = abs(x)
    out: list[TrigTerm] = []
    for t in terms:
        out.append(t)
        if w == 0.0:
            continue
        if t.kind == "one":
            out.append(TrigTerm(t.amplitude, "cos", w, -t.sign))
        elif t.kind == "cos":
            # cos(a)cos(b) = (cos(a-b) + cos(a+b)) / 2
            for f in (t.frequency - w, t.frequency + w):
                out.append(_cosine(t.amplitude, f, -0.5 * t.sign))
        else:
            # sin(a)cos(b) = (sin(a+b) + sin(a-b)) / 2
            for f in (t.frequency + w, t.frequency - w):
                out.append(_sine(t.amplitude, f, -0.5 * t.sign))
    return _merge(out)


def _cosine(amp, freq, sign):
    if freq < 0:
        freq = -freq
    return TrigTerm(amp, "one" if freq == 0.0 else "cos", freq, sign)


def _sine(amp, freq, sign):
    if freq < 0:
        freq, sign = -freq, -sign
    return TrigTerm(amp, "sin", freq, sign)


def _merge(terms):
    # Drop sin terms with zero frequency (identically zero).
    return [t for t in terms if not (t.kind == "sin" and t.frequency == 0.0)]


def evaluate_terms(terms: Sequence[TrigTerm], xi: np.ndarray) -> np.ndarray:
    total = np.zeros_like(np.asarray(xi, dtype=float))
    for t in terms:
        a = t.sign * np.asarray(t.amplitude(xi), dtype=float)
        if t.kind == "cos":
            a = a * np.cos(t.frequency * xi)
        elif t.kind == "sin":
            a = a * np.sin(t.frequency * xi)
        total = total + a
    return total


def _finite_quad(f, a, b, quad: QuadratureSpec):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        val, err = integrate.quad(f, a, b, epsabs=quad.abs_tol,
                                  epsrel=quad.rel_tol, limit=400)
    if err > 1e4 * (quad.abs_tol + quad.rel_tol * abs(val)) and err > 1e-8 * abs(val):
        raise QuadratureError(
            f"adaptive quadrature on [{a:g}, {b:g}] achieved error {err:.3g} "
            "only; integrand may be non-integrable there",
            estimate=val, error_bound=err)
    return val, err


def dyadic_tail(f, start: float, quad: QuadratureSpec,
                total_hint: float = 0.0) -> float:
    """Integrate f over [start, inf) by dyadic blocks with geometric tail.

    Requires an eventually monotone, nonnegative power-law-type envelope.
    Raises QuadratureError when the block sums stop contracting (envelope
    decaying like xi^p with p >= -1, i.e. a divergent integral) or the
    refinement budget runs out.
    """
    blocks = []
    total = 0.0
    a = start
    for k in range(quad.max_refinements):
        b = 2.0 * a
        val, _ = _finite_quad(f, a, b, quad)
        blocks.append(val)
        total += val
        tol = quad.abs_tol + quad.rel_tol * (abs(total) + abs(total_hint))
        if abs(val) < tol and k >= 1:
            return total
        if k >= 1 and abs(blocks[-2]) > 0:
            r = abs(blocks[-1]) / abs(blocks[-2])
            if r < _DIVERGENCE_RATIO:
                # Geometric extrapolation of the remaining tail; exact for a
                # pure power-law envelope, since block ratios are constant.
                tail = abs(blocks[-1]) * r / (1.0 - r)
                if tail < tol:
                    return total + np.sign(blocks[-1] if blocks[-1] else 1.0) * tail
            elif k >= _MIN_BLOCKS:
                ratios = [abs(blocks[i + 1]) / abs(blocks[i])
                          for i in range(len(blocks) - _MIN_BLOCKS, len(blocks) - 1)
                          if abs(blocks[i]) > 0]
                if ratios and min(ratios) >= _DIVERGENCE_RATIO:
                    raise QuadratureError(
                        "tail blocks are not contracting; the integral "
                        "diverges or converges too slowly for the requested "
                        "tolerance",
                        estimate=total, error_bound=abs(blocks[-1]))
        a = b
    raise QuadratureError("refinement budget exhausted before the tail "
                          "converged", estimate=total,
                          error_bound=abs(blocks[-1]))


def _fourier_tail(term: TrigTerm, start: float, quad: QuadratureSpec) -> float:
    f = lambda xi: term.amplitude(np.asarray(xi))
    val, err = integrate.quad(f, start, np.inf, weight=term.kind,
                              wvar=term.frequency,
                              epsabs=max(quad.abs_tol, 1e-13), limit=400)
    return term.sign * val


def half_line_integral(f: Callable, quad: QuadratureSpec = DEFAULT_QUAD,
                       tail_start: Optional[float] = None,
                       tail_terms: Optional[Sequence[TrigTerm]] = None) -> float:
    """Integrate f over [0, inf).

    When ``tail_terms`` is given it must equal f beyond ``tail_start``; the
    oscillatory terms are then integrated with Fourier weights and only the
    smooth terms go through the dyadic-block scheme.  Without it the tail is
    treated as a smooth envelope, which is only safe for non-oscillatory f.
    """
    start = tail_start if tail_start is not None else quad.cutoff
    head, _ = _finite_quad(f, 0.0, start, quad)
    if tail_terms is None:
        return head + dyadic_tail(f, start, quad, total_hint=head)
    tail = 0.0
    for term in tail_terms:
        if term.kind == "one":
            g = lambda xi, t=term: t.sign * np.asarray(t.amplitude(xi), dtype=float)
            tail += dyadic_tail(g, start, quad, total_hint=head)
        else:
            tail += _fourier_tail(term, start, quad)
    return head + tail


def full_line_integral(f: Callable, quad: QuadratureSpec = DEFAULT_QUAD) -> float:
    """Adaptive integral of a decaying integrand over the whole real line."""
    val, _ = integrate.quad(f, -np.inf, np.inf, epsabs=quad.abs_tol,
                            epsrel=quad.rel_tol, limit=400)
    return val
