"""Acceptance gate: every criterion of the verification suite at full
replica counts and tolerances.  These are long-running Monte Carlo checks;
the whole module takes on the order of half an hour on one core.  Criteria
10 and 11 share one cached ensemble, so their combined cost is paid once."""

from rough_sheet import verify as vf


def _run(name):
    res = vf.run_criterion(name, quick=False)
    assert res.passed, f"{name} failed (margin {res.margin:+.3f}): {res.detail}"
    return res


def test_criterion_01_norm_equivalence():
    _run("norm-equivalence")


def test_criterion_02_exact_scaling():
    _run("scaling")


def test_criterion_03_divergence_boundary():
    _run("divergence")


def test_criterion_04_ito_isometry():
    _run("isometry")


def test_criterion_05_sampler_law():
    _run("sampler-law")


def test_criterion_06_cross_validation():
    _run("cross-validation")


def test_criterion_07_solution_variance():
    _run("solution-variance")


def test_criterion_08_spatial_pinch():
    _run("spatial-pinch")


def test_criterion_09_temporal_optimality():
    _run("temporal-optimality")


def test_criterion_10_holder_exponents():
    _run("holder")


def test_criterion_11_gaussian_moments():
    _run("gaussian-moments")


def test_criterion_12_picard_contraction():
    _run("picard")


def test_criterion_13_initial_data():
    _run("initial-data")
