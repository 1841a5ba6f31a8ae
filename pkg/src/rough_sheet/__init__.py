"""Stochastic heat and wave equations driven by noise white in time and
fractional in space (Hurst index H <= 1/2): spectral formulas, exact noise
sampling, two constructions of the solution field, and Holder-regularity
estimation."""

__version__ = "1.0.0"
