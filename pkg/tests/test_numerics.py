import math
from dataclasses import dataclass, field

import numpy as np
import pytest
from scipy import stats

from cubic_beta import (Beta, CBeta, CubicCoeffs, DomainError, InvalidCoeffs, RootSolveConfig, ShapeParams,
                        ToleranceNotMet, coeffs_from_shape, inc_beta_step_down, invert_monotone_poly, quadrature,
                        reg_inc_beta, solve_increasing, solve_monotone_poly)

rng = np.random.default_rng(7)


@dataclass(frozen=True)
class RecordingCoeffs(CubicCoeffs):
    seen: list = field(default_factory=list, compare=False, repr=False)

    def x_of(self, p):
        self.seen.append(np.array(p, dtype=float, copy=True))
        return super().x_of(p)


def test_identity_inversion():
    root = solve_monotone_poly(CubicCoeffs(1.0, 0.0, 0.0), 0.37)

    assert root.p == pytest.approx(0.37, abs=1e-15)
    assert root.jacobian == pytest.approx(1.0)
    assert root.delta == pytest.approx(0.5)

def test_quadratic_inversion():
    coeffs = coeffs_from_shape(ShapeParams(0.3, 1.0 / 3.0))
    x = float(coeffs.x_of(0.6))

    assert solve_monotone_poly(coeffs, x).p == pytest.approx(0.6, abs=1e-12)

def test_inversion_endpoints():
    for s in (ShapeParams(0.5, 1.0 / 3.0), ShapeParams(0.1, 0.2), ShapeParams(0.8, 0.9), ShapeParams(0.0, 1.0)):
        coeffs = coeffs_from_shape(s)
        p, _, _ = invert_monotone_poly(coeffs, np.array([0.0, 1.0]))
        assert p[0] == pytest.approx(0.0, abs=1e-12)
        assert p[1] == pytest.approx(1.0, abs=1e-12)

def test_inversion_round_trip():
    for gamma, delta, p in zip(rng.uniform(0.05, 0.95, 1000), rng.uniform(0.05, 0.95, 1000), rng.random(1000)):
        coeffs = coeffs_from_shape(ShapeParams(gamma, delta))
        assert solve_monotone_poly(coeffs, float(coeffs.x_of(p))).p == pytest.approx(p, abs=1e-10)

def test_inversion_keeps_shape():
    coeffs = coeffs_from_shape(ShapeParams(0.2, 0.7))
    x = rng.random((4, 5))
    p, jac, delta = invert_monotone_poly(coeffs, x)

    assert p.shape == (4, 5)
    assert jac.shape == (4, 5)
    assert delta is None
    np.testing.assert_allclose(coeffs.x_of(p), x, atol=1e-12)

def test_inversion_on_degenerate_boundary():
    coeffs = CubicCoeffs(3.0, -6.0, 4.0)
    x = np.linspace(0.0, 1.0, 41)
    p, _, _ = invert_monotone_poly(coeffs, x)

    np.testing.assert_allclose(coeffs.x_of(p), x, atol=1e-12)
    assert np.all(np.diff(p) >= 0.0)

def test_iterates_stay_clamped():
    s = coeffs_from_shape(ShapeParams(0.02, 0.95))
    coeffs = RecordingCoeffs(s.a, s.b, s.c)
    invert_monotone_poly(coeffs, np.linspace(0.0, 1.0, 257))

    assert coeffs.seen
    for p in coeffs.seen:
        assert np.all(p >= 0.0) and np.all(p <= 1.0)

def test_inversion_rejects_bad_input():
    with pytest.raises(InvalidCoeffs):
        invert_monotone_poly(CubicCoeffs(5.0, -8.0, 4.0), 0.5)
    with pytest.raises(DomainError):
        invert_monotone_poly(CubicCoeffs(1.0, 0.0, 0.0), 1.5)
    with pytest.raises(DomainError):
        invert_monotone_poly(CubicCoeffs(1.0, 0.0, 0.0), [0.2, math.nan])

def test_solver_config():
    tight = RootSolveConfig(tolerance=1e-14, max_iterations=5)
    coeffs = coeffs_from_shape(ShapeParams(0.3, 0.8))

    assert solve_monotone_poly(coeffs, 0.4, tight).p == pytest.approx(solve_monotone_poly(coeffs, 0.4).p, abs=1e-12)

def test_reg_inc_beta_examples():
    assert reg_inc_beta(1.0, 1.0, 0.42) == pytest.approx(0.42, abs=1e-15)
    assert reg_inc_beta(2.0, 2.0, 0.5) == pytest.approx(0.5, abs=1e-15)
    assert reg_inc_beta(3.0, 4.0, 0.0) == 0.0
    assert reg_inc_beta(3.0, 4.0, 1.0) == 1.0

def test_reg_inc_beta_against_quadrature():
    density = Beta(2.61, 10.95)
    expected = quadrature(lambda u: 0.2 * density.pdf(0.2 * u), abs_tol=1e-13)

    assert reg_inc_beta(2.61, 10.95, 0.2) == pytest.approx(expected, abs=1e-10)

def test_reg_inc_beta_symmetry():
    for alpha, beta, x in zip(rng.uniform(0.1, 40.0, 200), rng.uniform(0.1, 40.0, 200), rng.random(200)):
        assert reg_inc_beta(alpha, beta, x) == pytest.approx(1.0 - reg_inc_beta(beta, alpha, 1.0 - x), abs=1e-12)

def test_reg_inc_beta_domain():
    with pytest.raises(DomainError):
        reg_inc_beta(0.0, 1.0, 0.5)
    with pytest.raises(DomainError):
        reg_inc_beta(1.0, 1.0, -0.1)

def test_inc_beta_step_down():
    assert inc_beta_step_down(1.0, 1.0, 0.5, 0.5) == pytest.approx(0.25, abs=1e-15)
    assert inc_beta_step_down(2.0, 2.0, 0.5, 0.5) == pytest.approx(reg_inc_beta(3.0, 2.0, 0.5), abs=1e-12)
    assert inc_beta_step_down(2.5, 3.5, 0.0, 0.0) == 0.0

    for alpha, beta, x in zip(rng.uniform(0.5, 30.0, 200), rng.uniform(0.5, 30.0, 200), rng.random(200)):
        stepped = inc_beta_step_down(alpha, beta, x, reg_inc_beta(alpha, beta, x))
        assert stepped == pytest.approx(reg_inc_beta(alpha + 1.0, beta, x), abs=1e-11)

def test_inc_beta_step_down_vectorized():
    x = np.linspace(0.0, 1.0, 11)
    stepped = inc_beta_step_down(4.0, 2.0, x, reg_inc_beta(4.0, 2.0, x))

    np.testing.assert_allclose(stepped, stats.beta.cdf(x, 5.0, 2.0), atol=1e-12)

def test_quadrature_normalization():
    assert quadrature(Beta(2.0, 3.0).pdf) == pytest.approx(1.0, abs=1e-10)

def test_quadrature_polynomial():
    coeffs = CubicCoeffs(0.5, 0.3, 0.2)

    assert quadrature(lambda p: p * coeffs.jacobian(p)) == pytest.approx(0.6, abs=1e-12)

def test_quadrature_endpoint_singularity():
    assert quadrature(Beta(0.5, 0.5).pdf, abs_tol=1e-9) == pytest.approx(1.0, abs=1e-8)

def test_quadrature_mean_of_cbeta():
    d = CBeta(2.61, 10.95, 0.354, 0.637)

    assert quadrature(lambda x: x * d.pdf(x), abs_tol=1e-12) == pytest.approx(d.mean, abs=1e-9)

def test_quadrature_tolerance_not_met():
    with pytest.raises(ToleranceNotMet) as info:
        quadrature(lambda t: math.cos(400.0 * t), abs_tol=1e-14, limit=2)

    assert info.value.error > 1e-14

def test_solve_increasing():
    root = solve_increasing(lambda x: x ** 3, lambda x: 3.0 * x ** 2, 0.125, 0.0, 1.0)

    assert root == pytest.approx(0.5, abs=1e-12)

def test_solve_increasing_flat_derivative():
    root = solve_increasing(lambda x: x ** 3, lambda x: 0.0, 0.001, 0.0, 1.0, x0=0.9)

    assert root == pytest.approx(0.1, abs=1e-4)

def test_solve_increasing_root_near_zero():
    root = solve_increasing(lambda x: x ** 0.3, lambda x: 0.3 * x ** -0.7 if x > 0.0 else math.inf,
                            1e-7, 0.0, 1.0, tolerance=1e-20)

    assert root == pytest.approx(1e-7 ** (1.0 / 0.3), rel=1e-9)
