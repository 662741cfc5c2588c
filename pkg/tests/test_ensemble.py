import math
from fractions import Fraction

import numpy as np
import pytest

from djcm.ensemble import (CoherentConfig, InversionSeries, ModeCoupling, case_amplitudes,
                           default_cutoff, detect_collapse_revival, ensemble_inversion,
                           poisson_weights)
from djcm.measurement import InversionConvention
from djcm.model import Scenario, SystemParams

TIMES = np.linspace(0.0, 50.0, 20000)


def _exact_poisson(alpha_sq, cutoff):
    # rational n-dependence times one float prefactor; the prefactor cancels
    # on renormalization
    terms = [Fraction(alpha_sq) ** n / math.factorial(n) for n in range(cutoff + 1)]
    total = sum(terms)
    return [float(x / total) for x in terms]


def test_default_cutoff():
    assert default_cutoff(20) == 75
    assert default_cutoff(1) == 21


def test_poisson_weights_against_exact_rationals():
    p = poisson_weights(20.0, 80)
    assert abs(p.sum() - 1.0) < 1e-14
    assert abs(np.dot(np.arange(81), p) - 20.0) < 1e-8
    np.testing.assert_allclose(p, _exact_poisson(20, 80), rtol=1e-12, atol=0)
    assert p[0] == pytest.approx(math.exp(-20), rel=1e-9)
    assert p[0] == pytest.approx(2.061e-9, rel=1e-3)


def test_poisson_weights_large_mean_do_not_overflow():
    p = poisson_weights(900.0, default_cutoff(900.0))
    assert np.all(np.isfinite(p)) and abs(p.sum() - 1.0) < 1e-14
    assert np.argmax(p) in (899, 900)


def test_poisson_cutoff_too_small_names_a_cutoff():
    with pytest.raises(ValueError, match=r"use cutoff >= \d+"):
        poisson_weights(20.0, 40)
    with pytest.raises(ValueError):
        CoherentConfig(alpha_sq=20.0, cutoff=30)
    with pytest.raises(ValueError):
        poisson_weights(0.0, 10)


def test_suggested_cutoff_passes():
    with pytest.raises(ValueError) as err:
        poisson_weights(20.0, 40)
    suggested = int(str(err.value).rsplit(">= ", 1)[1])
    poisson_weights(20.0, suggested)
    with pytest.raises(ValueError):
        poisson_weights(20.0, suggested - 1)


def test_uncoupled_ensemble_is_constant():
    series = ensemble_inversion(SystemParams(g_A=0.0, g_B=0.0), CoherentConfig(alpha_sq=5.0),
                                TIMES[:500])
    np.testing.assert_array_equal(series.W_A, np.full(500, series.W_A[0]))
    assert series.W_A[0] == pytest.approx(1.0, abs=1e-14)
    analysis = detect_collapse_revival(series, 0.0, 5.0)
    assert analysis.t_collapse_est is None and analysis.t_revival_est is None


def test_twin_ensemble_is_standard_jcm_series():
    cfg = CoherentConfig(alpha_sq=20.0)
    g = 0.8
    series = ensemble_inversion(SystemParams(g_A=g, g_B=g), cfg, TIMES[::10])
    n = np.arange(cfg.cutoff + 1)
    oracle = np.cos(2 * g * np.sqrt(n + 1)[:, None] * TIMES[::10]).T @ poisson_weights(20.0, cfg.cutoff)
    assert np.max(np.abs(series.W_A - oracle)) < 1e-12
    np.testing.assert_array_equal(series.W_B, -series.W_A)
    assert series.convention is InversionConvention.PAPER_BELL
    assert series.weighting is ModeCoupling.TWIN_DIAGONAL


@pytest.mark.parametrize("weighting", ["twin_diagonal", "independent_product"])
@pytest.mark.parametrize("scenario", ["I", "II"])
def test_exact_convention_is_zero(weighting, scenario):
    cfg = CoherentConfig(alpha_sq=4.0, mode_coupling=weighting)
    series = ensemble_inversion(SystemParams(g_A=1.0, g_B=0.6, scenario=scenario), cfg,
                                TIMES[:400], convention="exact")
    assert np.max(np.abs(series.W_A)) < 1e-12
    assert np.max(np.abs(series.W_B)) < 1e-12


def test_case_amplitudes():
    assert case_amplitudes("I").pair() == (1.0, 0.0)
    assert case_amplitudes("II").pair() == (0.0, 1.0)
    assert case_amplitudes("II", Scenario.II).c11 == 1.0


def test_cases_differ_by_sign_and_start_at_cos_two_theta():
    params = SystemParams(g_A=1.0, g_B=1.0)
    one = ensemble_inversion(params, CoherentConfig(case="I"), TIMES[::20])
    two = ensemble_inversion(params, CoherentConfig(case="II"), TIMES[::20])
    np.testing.assert_allclose(two.W_A, -one.W_A, atol=1e-15)
    assert one.W_A[0] == pytest.approx(1.0, abs=1e-14)
    assert two.W_A[0] == pytest.approx(-1.0, abs=1e-14)


def test_second_scenario_mirrors_first_in_paper_convention():
    cfg = CoherentConfig(alpha_sq=20.0, case="II")
    first = ensemble_inversion(SystemParams(g_A=1.0, g_B=1.0, scenario="I"), cfg, TIMES[::5])
    second = ensemble_inversion(SystemParams(g_A=1.0, g_B=1.0, scenario="II"), cfg, TIMES[::5])
    assert np.max(np.abs(first.W_A - second.W_A)) < 1e-12


def test_product_weighting_matches_double_sum():
    cfg = CoherentConfig(alpha_sq=2.0, mode_coupling="independent_product")
    params = SystemParams(g_A=1.0, g_B=0.5)
    t = np.linspace(0.0, 10.0, 101)
    series = ensemble_inversion(params, cfg, t)
    p = cfg.weights
    n = np.arange(len(p))
    rate = np.sqrt(n + 1)[:, None] + 0.5 * np.sqrt(n + 1)[None, :]
    oracle = np.einsum("i,j,ijt->t", p, p, np.cos(rate[..., None] * t))
    assert np.max(np.abs(series.W_A - oracle)) < 1e-12


def test_paper_convention_rejects_detuning():
    with pytest.raises(ValueError):
        ensemble_inversion(SystemParams(delta=0.2), CoherentConfig(alpha_sq=2.0), TIMES[:10])


def test_detection_at_reference_parameters():
    series = ensemble_inversion(SystemParams(g_A=1.0, g_B=1.0), CoherentConfig(), TIMES)
    result = detect_collapse_revival(series, 1.0, 20.0)
    assert result.t_collapse_pred == pytest.approx(math.sqrt(2), abs=1e-15)
    assert result.t_revival_pred == pytest.approx(2 * math.pi * math.sqrt(20), abs=1e-12)
    assert abs(result.t_collapse_est - math.sqrt(2)) / math.sqrt(2) < 0.30
    assert abs(result.t_revival_est - result.t_revival_pred) / result.t_revival_pred < 0.10
    assert set(result.summary()) == {"t_collapse_est", "t_revival_est", "t_collapse_pred",
                                     "t_revival_pred", "convention", "weighting"}


def test_detection_is_stable_under_grid_refinement():
    params, cfg = SystemParams(g_A=1.0, g_B=1.0), CoherentConfig()
    coarse_t = np.linspace(0.0, 50.0, 5001)
    fine_t = np.linspace(0.0, 50.0, 10001)
    coarse = detect_collapse_revival(ensemble_inversion(params, cfg, coarse_t), 1.0, 20.0)
    fine = detect_collapse_revival(ensemble_inversion(params, cfg, fine_t), 1.0, 20.0)
    dt = coarse_t[1] - coarse_t[0]
    assert abs(coarse.t_collapse_est - fine.t_collapse_est) < dt
    assert abs(coarse.t_revival_est - fine.t_revival_est) < dt


def test_pure_cosine_has_no_collapse_or_revival():
    t = np.linspace(0.0, 60.0, 12000)
    w = np.cos(2 * math.sqrt(21) * t)
    series = InversionSeries(times=t, W_A=w, W_B=-w, convention="paper_bell")
    result = detect_collapse_revival(series, 1.0, 20.0)
    assert result.t_collapse_est is None
    assert result.t_revival_est is None
    assert result.notes


def test_detection_requires_nonzero_start():
    t = np.linspace(0.0, 1.0, 10)
    series = InversionSeries(times=t, W_A=np.zeros(10), W_B=np.zeros(10), convention="exact")
    with pytest.raises(ValueError):
        detect_collapse_revival(series, 1.0, 20.0)


def test_product_weighting_collapses_later():
    params, t = SystemParams(g_A=1.0, g_B=1.0), TIMES[:4000]
    twin = detect_collapse_revival(ensemble_inversion(params, CoherentConfig(), t), 1.0, 20.0)
    product = detect_collapse_revival(
        ensemble_inversion(params, CoherentConfig(mode_coupling="independent_product"), t),
        1.0, 20.0)
    assert product.t_collapse_est > twin.t_collapse_est
