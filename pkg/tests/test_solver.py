import io
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rough_sheet.kernels import InitialData, OperatorKind, ZERO_INITIAL
from rough_sheet.noise import GridSpec, sample_sheet
from rough_sheet import solver as sv

HEAT, WAVE = OperatorKind.HEAT, OperatorKind.WAVE


def heat_grid(n_t=16, n_x=256):
    return GridSpec(t_max=1.0, n_t=n_t, x_min=-11.0, x_max=11.0, n_x=n_x)


def wave_grid(n_t=16, n_x=128):
    return GridSpec(t_max=1.0, n_t=n_t, x_min=-3.0, x_max=3.0, n_x=n_x)


def const_init(c=1.0):
    return InitialData(u0=lambda x: c * np.ones_like(np.asarray(x, float)),
                       v0=lambda x: np.zeros_like(np.asarray(x, float)),
                       bound=abs(c))


def model(op, drift="none", sigma=None, d=1, init=ZERO_INITIAL, H=0.25):
    return sv.ModelSpec(op=op, d=d,
                        sigma=np.eye(d) if sigma is None else sigma,
                        drift=sv.DRIFTS[drift], init=init, H=H)


def test_model_validation():
    with pytest.raises(ValueError):
        model(HEAT, sigma=np.eye(2))
    with pytest.raises(ValueError):
        model(HEAT, H=0.7)


def test_buffers_and_window():
    assert sv.heat_buffer(1.0) == 8.0
    assert sv.wave_buffer(0.25) == 0.25
    lo, hi = sv.evaluation_window(HEAT, heat_grid())
    assert (lo, hi) == (-3.0, 3.0)
    with pytest.raises(ValueError):
        sv.evaluation_window(HEAT, GridSpec(1.0, 4, -2.0, 2.0, 16))


def test_mode_deficit_decreasing_and_guard():
    d1 = sv.mode_truncation_deficit(HEAT, 1.0, 0.25, 256.0)
    d2 = sv.mode_truncation_deficit(HEAT, 1.0, 0.25, 1024.0)
    assert 0 < d2 < d1
    with pytest.raises(sv.ConfigurationError):
        # a tiny cutoff cannot satisfy the default deficit tolerance
        sv.stochastic_convolution_spectral(
            HEAT, 0.25, heat_grid(), 1, np.eye(1), 0,
            mode=sv.ModeConfig(cutoff=8.0))


def test_spectral_shape_window_determinism():
    g = heat_grid()
    a = sv.stochastic_convolution_spectral(HEAT, 0.25, g, 2, np.eye(2), 5)
    assert a.values.shape == (2, g.n_t + 1, g.n_x)
    assert a.eval_window == (-3.0, 3.0)
    np.testing.assert_array_equal(a.values[:, 0, :], 0.0)
    b = sv.stochastic_convolution_spectral(HEAT, 0.25, g, 2, np.eye(2), 5)
    np.testing.assert_array_equal(a.values, b.values)


def test_spectral_fft_matches_basis_evaluation():
    # the folded-FFT synthesis must agree with direct basis summation
    for op, g in ((HEAT, heat_grid(n_t=4)), (WAVE, wave_grid(n_t=4))):
        full = sv.stochastic_convolution_spectral(op, 0.25, g, 1, np.eye(1), 3)
        cols = [0, 7, g.n_x // 2]
        xs = g.x_min + np.array(cols) * g.dx
        pts = sv.stochastic_convolution_spectral(op, 0.25, g, 1, np.eye(1), 3,
                                                 eval_x=xs)
        np.testing.assert_allclose(pts.values[0], full.values[0][:, cols],
                                   rtol=1e-9, atol=1e-12)


def test_spectral_sigma_mixes_components():
    g = wave_grid(n_t=2)
    sigma = np.array([[1.0, 0.0], [1.0, 0.0]])
    f = sv.stochastic_convolution_spectral(WAVE, 0.25, g, 2, sigma, 11)
    np.testing.assert_allclose(f.values[0], f.values[1], atol=1e-14)


def test_direct_weights_match_field():
    for op, g in ((HEAT, heat_grid(n_t=8)), (WAVE, wave_grid(n_t=8))):
        sheet = sample_sheet(g, 0.25, 1, 21)
        fld = sv.stochastic_convolution_direct(op, sheet)
        t, x = 0.5, g.x_min + (g.n_x // 2) * g.dx
        w = sv.direct_weights(op, g, t, x)
        direct = float(np.sum(w * sheet.increments[0]))
        j = int(round(t / g.dt))
        assert direct == pytest.approx(fld.values[0, j, g.n_x // 2],
                                       rel=1e-10, abs=1e-12)


def test_direct_weights_domain():
    g = heat_grid()
    with pytest.raises(ValueError):
        sv.direct_weights(HEAT, g, 0.5, 10.0)   # outside buffered window
    with pytest.raises(ValueError):
        sv.direct_weights(HEAT, g, 2.0, 0.0)    # beyond the horizon


def test_direct_kernel_rows_mass():
    # rows are space-time cell averages of G, so each heat row keeps the
    # kernel's unit mass and each wave row carries its mean cone width / 2
    g = heat_grid(n_t=8)
    rows = sv.direct_kernel_rows(HEAT, g)
    np.testing.assert_allclose(rows[1:].sum(axis=1) * g.dx, 1.0, rtol=1e-6)
    np.testing.assert_array_equal(rows[0], 0.0)
    gw = wave_grid(n_t=8)
    rows_w = sv.direct_kernel_rows(WAVE, gw)
    mean_lag = (np.arange(1, gw.n_t + 1) - 0.5) * gw.dt
    np.testing.assert_allclose(rows_w[1:].sum(axis=1) * gw.dx, mean_lag,
                               rtol=1e-3)


def test_homogeneous_field_heat_constant():
    g = heat_grid(n_t=4)
    om = sv.homogeneous_field(HEAT, const_init(2.5), g)
    np.testing.assert_allclose(om, 2.5, rtol=1e-12)


def test_homogeneous_field_wave_dalembert():
    g = GridSpec(1.0, 8, -math.pi, math.pi, 256)
    init = InitialData(u0=lambda x: np.cos(np.asarray(x, float)),
                       v0=lambda x: np.zeros_like(np.asarray(x, float)),
                       bound=1.0, holder_constant=1.0)
    om = sv.homogeneous_field(WAVE, init, g)
    xs = g.x_min + np.arange(g.n_x) * g.dx
    for j in (2, 8):
        t = j * g.dt
        np.testing.assert_allclose(om[j], np.cos(xs) * math.cos(t),
                                   atol=2e-3)


def test_picard_constant_drift_exact():
    # b = c, sigma = 0: heat gives c*t, wave gives c*t^2/2
    c = 0.7
    drift = sv.DriftSpec(lambda u: c * np.ones_like(u), 0.0, "const")
    for op, g, profile in (
            (HEAT, heat_grid(n_t=32), lambda t: c * t),
            (WAVE, wave_grid(n_t=32), lambda t: c * t * t / 2.0)):
        m = sv.ModelSpec(op=op, d=1, sigma=np.zeros((1, 1)), drift=drift,
                         init=ZERO_INITIAL, H=0.25)
        fld, dists = sv.picard_solve(m, g)
        mid = g.n_x // 2
        expect = profile(fld.t_nodes)
        np.testing.assert_allclose(fld.values[0, :, mid], expect,
                                   rtol=1e-6, atol=1e-9)
        assert dists[-1] < 1e-8


def test_picard_zero_drift_one_step():
    m = model(HEAT, init=const_init())
    _, dists = sv.picard_solve(m, heat_grid(), seed=3)
    assert dists == [0.0]


def test_picard_nonconvergence_carries_distances():
    wild = sv.DriftSpec(lambda u: 50.0 * u, 50.0, "wild")
    m = sv.ModelSpec(op=HEAT, d=1, sigma=np.zeros((1, 1)), drift=wild,
                     init=const_init(), H=0.25)
    with pytest.raises(sv.PicardNonconvergence) as exc:
        sv.picard_solve(m, heat_grid(n_t=32), config=sv.PicardConfig(max_iters=4))
    assert len(exc.value.distances) == 4
    assert all(d > 0 for d in exc.value.distances)


def test_drift_convolution_heat_constant():
    g = heat_grid(n_t=32)
    vals = np.ones((1, g.n_t + 1, g.n_x))
    hist = sv.SolutionField(grid=g, values=vals, eval_window=(-3.0, 3.0),
                            seed=0)
    drift = sv.DRIFTS["linear"]  # b(u) = -u
    out = sv.drift_convolution(HEAT, hist, drift, 1.0, 0.0)
    assert out[0] == pytest.approx(-1.0, rel=1e-3)


def test_ensemble_run_contracts():
    g = heat_grid(n_t=4)
    m = model(HEAT)
    fields = list(sv.ensemble_run(m, g, 3, 100))
    assert len(fields) == 3
    assert fields[0].seed == 100 and fields[2].seed == 102
    assert not np.array_equal(fields[0].values, fields[1].values)
    with pytest.raises(sv.ConfigurationError):
        next(iter(sv.ensemble_run(model(HEAT, drift="sin", init=const_init()),
                                  g, 1, 0)))
    with pytest.raises(ValueError):
        list(sv.ensemble_run(m, g, 0, 0))
    with pytest.raises(ValueError):
        next(iter(sv.ensemble_run(m, g, 1, 0, method="magic")))


def test_ensemble_spectral_adds_initial_condition():
    g = heat_grid(n_t=4)
    m = model(HEAT, init=const_init(3.0))
    fld = next(iter(sv.ensemble_run(m, g, 1, 7)))
    bare = next(iter(sv.ensemble_run(model(HEAT), g, 1, 7)))
    np.testing.assert_allclose(fld.values - bare.values, 3.0, rtol=1e-9)


def test_field_roundtrip():
    g = wave_grid(n_t=4)
    fld = sv.stochastic_convolution_spectral(WAVE, 0.25, g, 2, np.eye(2), 9)
    buf = io.BytesIO()
    sv.write_field(fld, buf)
    buf.seek(0)
    back = sv.read_field(buf)
    assert back.grid == g
    assert back.eval_window == fld.eval_window
    assert back.seed == fld.seed
    np.testing.assert_array_equal(back.values, fld.values)


@settings(max_examples=10, deadline=None)
@given(seed=st.integers(0, 10 ** 6))
def test_spectral_time_zero_always_zero(seed):
    g = wave_grid(n_t=2, n_x=64)
    fld = sv.stochastic_convolution_spectral(WAVE, 0.4, g, 1, np.eye(1), seed)
    assert float(np.max(np.abs(fld.values[:, 0, :]))) == 0.0
