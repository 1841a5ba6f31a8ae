"""Frozen high-precision oracles for the closed-form spectral integrals,
plus structural properties.  Oracle values were computed independently with
30-digit arithmetic (separate oscillatory tail treatment / regularized
Gamma constants) and are trusted to well below the asserted tolerances."""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rough_sheet.kernels import OperatorKind
from rough_sheet.quadrature import QuadratureError
from rough_sheet import spectral as sp

HEAT, WAVE = OperatorKind.HEAT, OperatorKind.WAVE

C_H_ORACLE = {
    0.1: 0.045156991435727807,
    0.25: 0.099735570100358169,
    0.4: 0.14097922649999519,
}

HEAT_VAR_T1_H25 = 0.29068415850955929
HEAT_VAR_T2_H25 = 0.34568366951814667
HEAT_VAR_T1_H10 = 0.25859780729774635
WAVE_VAR_T1_H25 = 0.23570228649498988
WAVE_VAR_T05_H25 = 0.083333374048345704
WAVE_VAR_T1_H40 = 0.24181960950574007
GAUSS_ENERGY_H25 = 0.64573784411752152
HEAT_COVGAP = 0.17226998206917126   # t=1, x=0.5, H=0.25
WAVE_COVGAP = 0.17123043976307532   # t=1, x=0.5, H=0.25
HEAT_INCVAR = 0.40518472395651789   # s=0.5, t=1, H=0.25
WAVE_INCVAR = 0.24855167699148012   # s=0.5, t=1, H=0.25


def density(H=0.25):
    return sp.make_density(H)


def test_density_constants():
    for H, c in C_H_ORACLE.items():
        d = sp.make_density(H)
        assert d.c_H == pytest.approx(c, rel=1e-14)
        assert d.C_H == pytest.approx(H * (1 - 2 * H) / 2, rel=1e-14)
        assert d.exponent == pytest.approx(1 - 2 * H)


def test_density_white_noise_limit():
    d = sp.make_density(0.5)
    assert d.c_H == pytest.approx(1.0 / (2.0 * math.pi), rel=1e-14)
    assert d.C_H == 0.0


def test_density_domain():
    for H in (0.0, -0.1, 0.6):
        with pytest.raises(ValueError):
            sp.make_density(H)


def test_variance_oracles():
    d = density()
    assert sp.variance_integral(HEAT, 1.0, d) == pytest.approx(
        HEAT_VAR_T1_H25, rel=1e-8)
    assert sp.variance_integral(HEAT, 2.0, d) == pytest.approx(
        HEAT_VAR_T2_H25, rel=1e-8)
    assert sp.variance_integral(WAVE, 1.0, d) == pytest.approx(
        WAVE_VAR_T1_H25, rel=5e-7)
    assert sp.variance_integral(WAVE, 0.5, d) == pytest.approx(
        WAVE_VAR_T05_H25, rel=5e-7)
    assert sp.variance_integral(HEAT, 1.0, density(0.1)) == pytest.approx(
        HEAT_VAR_T1_H10, rel=1e-7)
    assert sp.variance_integral(WAVE, 1.0, density(0.4)) == pytest.approx(
        WAVE_VAR_T1_H40, rel=5e-7)


def test_exact_scaling_identity():
    # heat variance is exactly C t^H, wave exactly C t^{1+2H}
    d = density()
    v1 = sp.variance_integral(HEAT, 1.0, d)
    assert sp.variance_integral(HEAT, 2.0, d) / v1 == pytest.approx(
        2.0 ** 0.25, rel=1e-8)
    w1 = sp.variance_integral(WAVE, 1.0, d)
    assert sp.variance_integral(WAVE, 0.5, d) / w1 == pytest.approx(
        0.5 ** 1.5, rel=5e-7)


def test_weighted_energy_gaussian_oracle():
    g_hat = lambda xi: math.sqrt(math.pi) * np.exp(-np.asarray(xi) ** 2 / 4)
    assert sp.weighted_energy(g_hat, density()) == pytest.approx(
        GAUSS_ENERGY_H25, rel=1e-9)


def test_norm_equivalence_gaussian():
    d = density()
    lhs = sp.weighted_energy(
        lambda xi: math.sqrt(math.pi) * np.exp(-np.asarray(xi) ** 2 / 4), d)
    rhs = sp.difference_energy(lambda x: np.exp(-x * x), d, support=12.0)
    assert rhs == pytest.approx(lhs, rel=1e-6)


def test_difference_energy_rejects_white_noise():
    with pytest.raises(ValueError):
        sp.difference_energy(lambda x: np.exp(-x * x), sp.make_density(0.5))


def test_kernel_time_energy_closed_forms():
    xi = np.array([0.3, 1.0, 4.0])
    t = 0.8
    heat = -np.expm1(-2 * t * xi ** 2) / (2 * xi ** 2)
    np.testing.assert_allclose(sp.kernel_time_energy(HEAT, t, xi), heat,
                               rtol=1e-13)
    wave = t * (1 - np.sin(2 * t * xi) / (2 * t * xi)) / (2 * xi ** 2)
    np.testing.assert_allclose(sp.kernel_time_energy(WAVE, t, xi), wave,
                               rtol=1e-12)
    # xi -> 0 limits: t and t^3/3
    assert float(sp.kernel_time_energy(HEAT, t, 0.0)) == pytest.approx(t)
    assert float(sp.kernel_time_energy(WAVE, t, 0.0)) == pytest.approx(
        t ** 3 / 3.0)


def test_kernel_energy_divergence_boundary():
    for op in (HEAT, WAVE):
        with pytest.raises(QuadratureError):
            sp.kernel_energy(op, 1.0, 1.0)
        assert sp.kernel_energy(op, 1.0, 0.9) > 0


def test_covariance_gap_oracles():
    d = density()
    assert sp.covariance_gap(HEAT, 1.0, 0.5, d) == pytest.approx(
        HEAT_COVGAP, rel=1e-8)
    assert sp.covariance_gap(WAVE, 1.0, 0.5, d) == pytest.approx(
        WAVE_COVGAP, rel=1e-8)


def test_covariance_gap_even_and_zero():
    d = density()
    assert sp.covariance_gap(HEAT, 1.0, 0.0, d) == 0.0
    assert sp.covariance_gap(WAVE, 0.7, -0.3, d) == pytest.approx(
        sp.covariance_gap(WAVE, 0.7, 0.3, d), rel=1e-10)


def test_increment_variance_oracles():
    d = density()
    i1, i2 = sp.increment_variance(HEAT, 0.5, 1.0, d)
    assert i1 + i2 == pytest.approx(HEAT_INCVAR, rel=1e-7)
    j1, j2 = sp.increment_variance(WAVE, 0.5, 1.0, d)
    assert j1 + j2 == pytest.approx(WAVE_INCVAR, rel=1e-6)


def test_increment_variance_i1_identity():
    d = density()
    for op in (HEAT, WAVE):
        i1, i2 = sp.increment_variance(op, 0.25, 0.75, d)
        assert i1 == pytest.approx(sp.variance_integral(op, 0.5, d),
                                   rel=1e-12)
        assert i2 > 0
    i1, i2 = sp.increment_variance(HEAT, 0.0, 0.5, d)
    assert i2 == 0.0


def test_increment_variance_domain():
    d = density()
    with pytest.raises(ValueError):
        sp.increment_variance(HEAT, 0.5, 0.5, d)
    with pytest.raises(ValueError):
        sp.increment_variance(HEAT, -0.1, 0.5, d)


def test_shift_energies_positive_and_monotone():
    d = density()
    for op in (HEAT, WAVE):
        small = sp.spatial_shift_energy(op, 0.1, 1.0, d)
        large = sp.spatial_shift_energy(op, 0.4, 1.0, d)
        assert 0 < small < large
        assert sp.spatial_shift_energy(op, 0.0, 1.0, d) == 0.0
        assert sp.temporal_shift_energy(op, 0.1, 1.0, d) > 0


@settings(max_examples=15, deadline=None)
@given(t=st.floats(0.1, 2.0), h=st.sampled_from([0.1, 0.25, 0.4]))
def test_variance_monotone_in_time(t, h):
    d = sp.make_density(h)
    for op in (HEAT, WAVE):
        assert sp.variance_integral(op, t, d) < \
            sp.variance_integral(op, t * 1.5, d)
