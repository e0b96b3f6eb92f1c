import math

import numpy as np
import pytest
from scipy import stats

from cubic_beta import (LADDER, Beta, BetaCore, BoundaryValueError, CBeta, DataError, Dataset, FitConfig, FitResult,
                        InvalidParams, MeanRegressionParams, ModalRegressionParams, NegativeStatistic, NoSolution,
                        QBeta, SCBeta, ShapeParams, alpha_from_mean, alpha_from_mode, coeffs_from_shape, fit_ladder,
                        fit_mle, lr_test, make_distribution, neg_loglik)
from cubic_beta._params import IDENTITY

BODY_FAT_C = (2.61, 10.95, 0.354, 0.637)
BODY_FAT_SC = (2.63, 9.67, 0.339, 0.728)
HBA1_C = (14.64, 19.56, 0.057, 0.641)
HBA1_SC = (13.09, 19.30, 0.041, 0.682)

beta_data = Dataset(Beta(3.0, 5.0).sample(2000, rng=21), name='beta(3, 5)')
cbeta_data = Dataset(CBeta(*BODY_FAT_C).sample(400, rng=22), name='body fat like')
qbeta_data = Dataset(QBeta(3.0, 6.0, 0.2).sample(500, rng=23))

beta_fit = fit_mle('beta', beta_data)
ladder = fit_ladder(cbeta_data)

def fake_fit(family, nll):
    return FitResult(family=family, core=BetaCore(2.0, 3.0), shape=ShapeParams(), neg_loglik=nll,
                     converged=True, iterations=0)

def test_dataset_from_raw():
    data = Dataset.from_raw([10.0, 50.0, 90.0], interval=(0.0, 100.0), name='percent')

    np.testing.assert_allclose(data.values, [0.1, 0.5, 0.9])
    assert data.n == 3
    assert data.source_interval == (0.0, 100.0)
    assert data.log_jacobian == pytest.approx(3.0 * math.log(100.0))

def test_dataset_boundary_rows():
    with pytest.raises(BoundaryValueError) as info:
        Dataset.from_raw([5.0, 0.0, 7.0, 100.0], interval=(0.0, 100.0))

    assert info.value.rows == [1, 3]

def test_dataset_nudge():
    data = Dataset.from_raw([5.0, 0.0, 7.0, 100.0], interval=(0.0, 100.0), nudge=True)

    assert data.values[1] == pytest.approx(1.0 / 8.0)
    assert data.values[3] == pytest.approx(1.0 - 1.0 / 8.0)
    assert data.values[0] == pytest.approx(0.05)

def test_dataset_rejects_bad_input():
    with pytest.raises(BoundaryValueError):
        Dataset.from_raw([5.0, 120.0], interval=(0.0, 100.0), nudge=True)
    with pytest.raises(DataError):
        Dataset.from_raw([], interval=(0.0, 1.0))
    with pytest.raises(DataError):
        Dataset.from_raw([0.5], interval=(1.0, 1.0))
    with pytest.raises(BoundaryValueError) as info:
        Dataset([0.5, 1.0])

    assert info.value.rows == [1]

def test_dataset_flipped():
    data = Dataset([0.2, 0.7]).flipped()

    np.testing.assert_allclose(data.values, [0.8, 0.3])

def test_neg_loglik():
    assert neg_loglik('beta', {'alpha': 1.0, 'beta': 1.0}, [0.1, 0.5, 0.9]) == pytest.approx(0.0, abs=1e-15)

    expected = -np.sum(stats.beta.logpdf(beta_data.values, 2.0, 3.0))
    assert neg_loglik('cbeta', [2.0, 3.0, 0.5, 1.0 / 3.0], beta_data) == pytest.approx(expected, rel=1e-10)

    with pytest.raises(InvalidParams):
        neg_loglik('qbeta', {'alpha': 1.0, 'beta': 1.0}, beta_data)

def test_beta_fit_recovers_parameters():
    assert beta_fit.family == 'beta'
    assert beta_fit.converged
    assert beta_fit.n_obs == 2000
    assert beta_fit.params['alpha'] == pytest.approx(3.0, rel=0.15)
    assert beta_fit.params['beta'] == pytest.approx(5.0, rel=0.15)
    assert beta_fit.neg_loglik <= neg_loglik('beta', [3.0, 5.0], beta_data) + 1e-9

def test_beta_fit_matches_scipy():
    alpha, beta, _, _ = stats.beta.fit(beta_data.values, floc=0.0, fscale=1.0)

    assert beta_fit.neg_loglik == pytest.approx(neg_loglik('beta', [alpha, beta], beta_data), abs=1e-5)

def test_cbeta_on_beta_data_across_seeds():
    seeds = range(100, 120)
    passed = 0
    for seed in seeds:
        data = Dataset(Beta(3.0, 5.0).sample(2000, rng=seed))
        fits = fit_ladder(data, ['cbeta'])
        statistic, _ = lr_test(fits['beta'], fits['cbeta'])
        gain = neg_loglik('beta', [3.0, 5.0], data) - fits['cbeta'].neg_loglik

        assert gain >= -1e-6, seed
        passed += statistic < stats.chi2.ppf(0.99, 2) and gain < stats.chi2.ppf(0.999, 4) / 2.0

    assert passed >= 0.95 * len(seeds)


def test_ladder_order_and_monotonicity():
    assert tuple(ladder) == LADDER

    nll = {family: result.neg_loglik for family, result in ladder.items()}
    assert nll['qbeta'] <= nll['beta'] + 1e-6
    assert nll['sqbeta'] <= nll['beta'] + 1e-6
    assert nll['cbeta'] <= nll['qbeta'] + 1e-6
    assert nll['scbeta'] <= nll['sqbeta'] + 1e-6

def test_ladder_stage_trace():
    trace = [stage for stage, _ in ladder['cbeta'].stage_trace]

    assert trace[:2] == ['beta', 'qbeta']
    assert 'cbeta' in trace
    assert ladder['cbeta'].stage_trace[0][1] == pytest.approx(ladder['beta'].neg_loglik)

def test_cbeta_fit_reaches_truth():
    nll_true = neg_loglik('cbeta', BODY_FAT_C, cbeta_data)

    assert ladder['cbeta'].neg_loglik <= nll_true + 1e-3
    assert ladder['cbeta'].distribution().family == 'cbeta'

def check_recovery(family, truth, n, seeds=range(50)):
    names = ('alpha', 'beta', 'gamma', 'delta')
    estimates, reached = [], 0
    for seed in seeds:
        data = Dataset(make_distribution(family, *truth).sample(n, rng=seed))
        result = fit_ladder(data, [family])[family]
        estimates.append([result.params[name] for name in names])
        reached += result.neg_loglik <= neg_loglik(family, truth, data) + 1e-6

    estimates = np.array(estimates)
    spread = estimates.std(axis=0, ddof=1)
    assert reached >= 0.95 * len(seeds)
    np.testing.assert_array_less(np.abs(estimates.mean(axis=0) - truth), 3.0 * spread)
    assert np.mean(np.all(np.abs(estimates - truth) <= 3.0 * spread, axis=1)) >= 0.9

def test_cbeta_recovery_body_fat():
    check_recovery('cbeta', BODY_FAT_C, 252)

def test_scbeta_recovery_body_fat():
    check_recovery('scbeta', BODY_FAT_SC, 252)

def test_cbeta_recovery_hba1():
    check_recovery('cbeta', HBA1_C, 349)

def test_scbeta_recovery_hba1():
    check_recovery('scbeta', HBA1_SC, 349)

def test_ladder_fits_missing_parents():
    results = fit_ladder(qbeta_data, ['qbeta'])

    assert list(results) == ['beta', 'qbeta']

def test_label_invariance_of_fit():
    config = FitConfig(restarts=3)
    for truth in (CBeta(*BODY_FAT_C), SCBeta(*BODY_FAT_SC)):
        data = Dataset(truth.sample(1000, rng=26))
        fits = fit_ladder(data, config=config)
        mirrors = fit_ladder(data.flipped(), config=config)
        for family in ('qbeta', 'cbeta', 'sqbeta', 'scbeta'):
            fit, mirror = fits[family].params, mirrors[family].params

            assert fits[family].neg_loglik == pytest.approx(mirrors[family].neg_loglik, abs=1e-6), family
            assert fit['alpha'] == pytest.approx(mirror['beta'], rel=1e-3), family
            assert fit['beta'] == pytest.approx(mirror['alpha'], rel=1e-3), family
            assert fit['gamma'] == pytest.approx(1.0 - mirror['gamma'], abs=1e-3), family
            if 'delta' in fit:
                assert fit['delta'] == pytest.approx(mirror['delta'], abs=1e-3), family


def test_fit_result_fields():
    result = ladder['qbeta']
    record = result.as_dict()

    assert list(result.params) == ['alpha', 'beta', 'gamma']
    assert result.n_params == 3
    assert record['family'] == 'qbeta'
    assert record['neg_loglik'] == result.neg_loglik
    assert 'delta' not in record
    assert isinstance(result.distribution(), QBeta)

def test_fit_rejects_unknown_family():
    with pytest.raises(InvalidParams):
        fit_mle('genquad', beta_data)
    with pytest.raises(InvalidParams):
        fit_ladder(beta_data, [])
    with pytest.raises(InvalidParams):
        fit_ladder(beta_data, ['beta', 'gamma'])

def test_fit_config():
    with pytest.raises(InvalidParams):
        FitConfig(max_iterations=0)
    with pytest.raises(InvalidParams):
        FitConfig(margin=0.7)

def test_unconverged_fit_is_flagged():
    result = fit_mle('qbeta', qbeta_data, FitConfig(max_iterations=1, restarts=0))

    assert not result.converged
    assert any('[' in stage for stage, _ in result.stage_trace)

def test_lr_test_values():
    statistic, p_value = lr_test(fake_fit('sqbeta', -288.26), fake_fit('scbeta', -293.59))

    assert statistic == pytest.approx(10.66)
    assert p_value == pytest.approx(math.exp(-5.33), rel=1e-6)
    assert p_value < 0.01

    statistic, p_value = lr_test(fake_fit('qbeta', -731.48), fake_fit('cbeta', -748.16))
    assert statistic == pytest.approx(33.36)
    assert p_value < 0.001

def test_lr_test_edges():
    assert lr_test(fake_fit('beta', -10.0), fake_fit('cbeta', -10.0)) == (0.0, 1.0)
    assert lr_test(fake_fit('beta', -10.0), fake_fit('cbeta', -10.0 + 1e-7))[0] == 0.0
    assert lr_test(fake_fit('beta', -10.0), fake_fit('qbeta', -12.0), df=3)[1] == pytest.approx(stats.chi2.sf(4.0, 3))

    with pytest.raises(NegativeStatistic):
        lr_test(fake_fit('beta', -10.0), fake_fit('cbeta', -9.0))
    with pytest.raises(InvalidParams):
        lr_test(fake_fit('cbeta', -10.0), fake_fit('scbeta', -11.0))

def test_alpha_from_mean_identity():
    assert alpha_from_mean(0.3, 8.0, IDENTITY) == pytest.approx(2.4, abs=1e-10)

def test_alpha_from_mean_quadratic():
    gamma, eta, mu = 0.3, 8.0, 0.4
    a, b, c = 1.0 - 2.0 * gamma, 2.0 * gamma * eta + 1.0, -mu * eta * (eta + 1.0)
    expected = (-b + math.sqrt(b * b - 4.0 * a * c)) / (2.0 * a)

    assert alpha_from_mean(mu, eta, coeffs_from_shape(ShapeParams(gamma))) == pytest.approx(expected, abs=1e-10)

def test_alpha_from_mean_round_trip():
    d = CBeta(2.0, 6.0, 0.3, 0.5)
    assert alpha_from_mean(d.mean, 8.0, d.coeffs) == pytest.approx(2.0, abs=1e-10)

    sc = SCBeta(3.0, 7.0, 0.4, 0.7)
    assert alpha_from_mean(sc.mean, 10.0, sc.coeffs, jacobian_free=True) == pytest.approx(3.0, abs=1e-10)

def test_alpha_from_mean_random_round_trips():
    rng = np.random.default_rng(24)
    for i, (alpha, beta, gamma, delta) in enumerate(zip(rng.uniform(0.5, 15.0, 1000), rng.uniform(0.5, 15.0, 1000),
                                                        rng.uniform(0.05, 0.95, 1000),
                                                        rng.uniform(0.05, 0.95, 1000))):
        cls = SCBeta if i % 2 else CBeta
        d = cls(alpha, beta, gamma, delta)
        found = alpha_from_mean(d.mean, alpha + beta, d.coeffs, jacobian_free=cls is SCBeta)
        assert found == pytest.approx(alpha, abs=1e-8), repr(d)

def test_alpha_from_mean_no_solution():
    with pytest.raises(NoSolution):
        alpha_from_mean(1.2, 5.0, IDENTITY)
    with pytest.raises(NoSolution):
        alpha_from_mean(0.0, 5.0, IDENTITY)

def test_alpha_from_mode():
    coeffs = coeffs_from_shape(ShapeParams(0.3, 0.6))
    x_m = float(coeffs.x_of(0.5))

    assert alpha_from_mode('scbeta', x_m, 6.0, coeffs) == pytest.approx(3.0, abs=1e-10)
    assert alpha_from_mode('cbeta', 2.0 / 3.0, 5.0, IDENTITY) == pytest.approx(3.0, abs=1e-12)

    d = SCBeta(4.0, 8.0, 0.3, 0.6)
    assert alpha_from_mode(SCBeta, d.mode.x_m, 12.0, d.coeffs) == pytest.approx(4.0, abs=1e-9)

def test_alpha_from_mode_random_round_trips():
    rng = np.random.default_rng(25)
    for alpha, beta, gamma, delta in zip(rng.uniform(1.5, 15.0, 200), rng.uniform(1.5, 15.0, 200),
                                         rng.uniform(0.05, 0.95, 200), rng.uniform(0.05, 0.95, 200)):
        d = CBeta(alpha, beta, gamma, delta)
        assert alpha_from_mode('cbeta', d.mode.x_m, alpha + beta, d.coeffs) == pytest.approx(alpha, abs=1e-7), \
            repr(d)

def test_alpha_from_mode_no_solution():
    with pytest.raises(NoSolution):
        alpha_from_mode('scbeta', 0.4, 1.5, IDENTITY)
    with pytest.raises(NoSolution):
        alpha_from_mode('cbeta', 0.0, 5.0, IDENTITY)
    with pytest.raises(InvalidParams):
        alpha_from_mode('genquad', 0.5, 5.0, IDENTITY)

def test_mean_regression_likelihood():
    truth = CBeta(*BODY_FAT_C)
    d = MeanRegressionParams(truth.mean, truth.core.eta, truth.gamma, truth.delta).to_distribution('cbeta')

    assert isinstance(d, CBeta)
    assert d.alpha == pytest.approx(truth.alpha, abs=1e-10)
    assert d.neg_loglik(cbeta_data.values) == pytest.approx(truth.neg_loglik(cbeta_data.values), abs=1e-7)

def test_mean_regression_families():
    assert MeanRegressionParams(0.25, 8.0).to_distribution('beta').mean == pytest.approx(0.25, abs=1e-11)
    assert MeanRegressionParams(0.6, 9.0, 0.7, 0.8).to_distribution('scbeta').mean == pytest.approx(0.6, abs=1e-11)
    assert MeanRegressionParams(0.6, 9.0, 0.7, 0.8).to_distribution('qbeta').mean == pytest.approx(0.6, abs=1e-11)

def test_modal_regression():
    d = ModalRegressionParams(0.3, 12.0, 0.2, 0.7).to_distribution('scbeta')
    assert d.mode.x_m == pytest.approx(0.3, abs=1e-10)
    assert d.alpha + d.beta == pytest.approx(12.0)

    c = ModalRegressionParams(0.4, 15.0, 0.6, 0.45).to_distribution('cbeta')
    assert c.mode.kind == 'mode'
    assert c.mode.x_m == pytest.approx(0.4, abs=1e-8)
