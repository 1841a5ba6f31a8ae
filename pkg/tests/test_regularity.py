import math

import numpy as np
import pytest

from rough_sheet.kernels import OperatorKind
from rough_sheet.noise import GridSpec
from rough_sheet.solver import SolutionField
from rough_sheet import regularity as rg

HEAT, WAVE = OperatorKind.HEAT, OperatorKind.WAVE


def ramp_field(kind="x", n_t=16, n_x=256):
    g = GridSpec(t_max=1.0, n_t=n_t, x_min=-2.0, x_max=2.0, n_x=n_x)
    xs = g.x_min + np.arange(g.n_x) * g.dx
    ts = g.t_nodes()
    if kind == "x":
        vals = np.broadcast_to(xs, (1, g.n_t + 1, g.n_x)).copy()
    else:
        vals = np.broadcast_to(ts[:, None], (1, g.n_t + 1, g.n_x)).copy()
    return SolutionField(grid=g, values=vals, eval_window=(-2.0, 2.0), seed=0)


def test_metric_values():
    assert rg.metric(HEAT, (1.0, 0.0), (0.0, 0.5)) == pytest.approx(1.5)
    assert rg.metric(HEAT, (0.25, 0.0), (0.0, 0.0)) == pytest.approx(0.5)
    assert rg.metric(WAVE, (1.0, 0.0), (0.0, 0.5)) == pytest.approx(1.5)
    assert rg.metric(WAVE, (0.25, 1.0), (0.0, 0.0)) == pytest.approx(1.25)


def test_default_lags_dyadic():
    lags = rg.default_lags(4.0 / 256, 4.0)
    np.testing.assert_allclose(lags, [0.0625, 0.125, 0.25, 0.5])
    with pytest.raises(ValueError):
        rg.default_lags(1.0, 2.0)


def test_theoretical_exponent_table():
    H = 0.25
    assert rg.theoretical_exponent(HEAT, rg.Direction.SPATIAL, 2.0, H) == 0.5
    assert rg.theoretical_exponent(HEAT, rg.Direction.TEMPORAL, 2.0, H) == 0.25
    assert rg.theoretical_exponent(WAVE, rg.Direction.SPATIAL, 2.0, H) == 0.5
    assert rg.theoretical_exponent(WAVE, rg.Direction.TEMPORAL, 2.0, H) == 0.5
    # rougher initial data caps the exponent
    assert rg.theoretical_exponent(HEAT, rg.Direction.SPATIAL, 4.0, H,
                                   alpha=0.1) == pytest.approx(0.4)


def test_structure_function_linear_ramp_spatial():
    fld = ramp_field("x", n_x=512)
    # keep the window strictly inside the domain so rolls never wrap
    lags = rg.default_lags(fld.grid.dx, 2.0)
    sf = rg.structure_function([fld], rg.Direction.SPATIAL, 2.0, lags,
                               window=(-1.0, 1.0))
    np.testing.assert_allclose(sf.values, lags ** 2, rtol=1e-12)
    fit = rg.fit_exponent(sf)
    assert fit.exponent == pytest.approx(2.0, abs=1e-10)
    assert fit.r_squared == pytest.approx(1.0)


def test_structure_function_linear_ramp_temporal():
    fld = ramp_field("t", n_t=512)
    lags = rg.default_lags(fld.grid.dt, 1.0)
    sf = rg.structure_function([fld], rg.Direction.TEMPORAL, 2.0, lags)
    np.testing.assert_allclose(sf.values, lags ** 2, rtol=1e-12)
    assert rg.fit_exponent(sf).exponent == pytest.approx(2.0, abs=1e-10)


def test_structure_function_validation():
    fld = ramp_field("x")
    lags = rg.default_lags(fld.grid.dx, 4.0)
    with pytest.raises(ValueError):
        rg.structure_function([fld], rg.Direction.SPATIAL, 0.5, lags)
    with pytest.raises(ValueError):
        rg.structure_function([], rg.Direction.SPATIAL, 2.0, lags)
    with pytest.raises(ValueError):
        # lags must sit on the spatial grid
        rg.structure_function([fld], rg.Direction.SPATIAL, 2.0, [0.1])


def test_structure_function_insufficient_data():
    fld = ramp_field("x")
    with pytest.raises(rg.InsufficientDataError):
        rg.structure_function([fld], rg.Direction.SPATIAL, 2.0,
                              [4.0 * fld.grid.dx], window=(-0.01, 0.01))


def test_fit_exponent_recovers_power_law():
    lags = 2.0 ** -np.arange(1, 7)[::-1]
    sf = rg.StructureFunction(direction=rg.Direction.SPATIAL, p=2.0,
                              lags=lags, values=3.0 * lags ** 1.7,
                              sample_counts=np.full(6, 1000))
    fit = rg.fit_exponent(sf)
    assert fit.exponent == pytest.approx(1.7, abs=1e-12)
    assert fit.intercept == pytest.approx(math.log(3.0), abs=1e-10)
    assert fit.std_err == pytest.approx(0.0, abs=1e-10)
    narrow = rg.fit_exponent(sf, lag_range=(lags[1], lags[-2]))
    assert narrow.n_points == 4
    with pytest.raises(ValueError):
        rg.fit_exponent(sf, lag_range=(lags[0], lags[2]))


def test_fit_exponent_rejects_nonpositive_values():
    lags = np.array([0.1, 0.2, 0.4, 0.8])
    sf = rg.StructureFunction(direction=rg.Direction.SPATIAL, p=2.0,
                              lags=lags, values=np.array([1.0, 0.0, 1.0, 1.0]),
                              sample_counts=np.full(4, 1000))
    with pytest.raises(ValueError):
        rg.fit_exponent(sf)


def test_structure_function_dataclass_guards():
    with pytest.raises(ValueError):
        rg.StructureFunction(direction=rg.Direction.SPATIAL, p=2.0,
                             lags=np.array([0.2, 0.1]),
                             values=np.array([1.0, 1.0]),
                             sample_counts=np.array([10, 10]))
    with pytest.raises(ValueError):
        rg.StructureFunction(direction=rg.Direction.SPATIAL, p=2.0,
                             lags=np.array([0.1, 0.2]),
                             values=np.array([1.0]),
                             sample_counts=np.array([10]))


def test_holder_report_verdict():
    lags = 2.0 ** -np.arange(1, 6)[::-1]
    sf = rg.StructureFunction(direction=rg.Direction.SPATIAL, p=2.0,
                              lags=lags, values=lags ** 0.5,
                              sample_counts=np.full(5, 1000))
    fit = rg.fit_exponent(sf)
    good = rg.holder_report(HEAT, 0.25, sf, fit, tolerance=0.1)
    assert good.verdict and good.margin > 0
    assert "verdict: pass" in good.to_text()
    bad = rg.holder_report(HEAT, 0.4, sf, fit, tolerance=0.1)
    assert not bad.verdict and bad.margin < 0


def test_optimality_check():
    rep = rg.optimality_check(HEAT, 0.25, 1.0, [0.05, 0.2, 0.8])
    assert rep.passed
    assert 0 < rep.ratio_min <= rep.ratio_max
    assert "verdict: pass" in rep.to_text()
    with pytest.raises(ValueError):
        rg.optimality_check(HEAT, 0.25, 1.0, [])
    with pytest.raises(ValueError):
        rg.optimality_check(HEAT, 0.25, 1.0, [-0.1, 0.5])


def test_temporal_optimality_domain():
    for t0 in (0.0, 1.0, 1.5):
        with pytest.raises(ValueError):
            rg.temporal_optimality_check(HEAT, 0.25, t0, 1.0)
