"""
Numerical kernels shared by all families: inversion of the monotone cubic
transform, the regularized incomplete beta function with its step-down
identity, a safeguarded Newton solver for increasing functions and the
quadrature oracle used to check closed forms.
"""
import logging
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy import integrate, special

from cubic_beta._exceptions import DomainError, InvalidCoeffs, InvalidParams, NonConvergence, ToleranceNotMet
from cubic_beta._params import validate_monotone

logger = logging.getLogger(__name__)

_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class RootSolveConfig:
    """Settings of the clamped Newton-Raphson inversion.

    Args:
        tolerance (float, optional): Bound on ``|x(p) - x|``. (Default is 1e-12)

        max_iterations (int, optional): Newton steps before switching to
            bisection. (Default is 100)

        clamp_lo (float, optional): Lower clamp applied after every step.

        clamp_hi (float, optional): Upper clamp applied after every step.
    """
    tolerance: float = 1e-12
    max_iterations: int = 100
    clamp_lo: float = 0.0
    clamp_hi: float = 1.0

    def __post_init__(self):
        if not self.tolerance > 0:
            raise InvalidParams(f'tolerance must be positive, got {self.tolerance!r}')
        if self.max_iterations < 1:
            raise InvalidParams(f'max_iterations must be at least 1, got {self.max_iterations!r}')
        if not self.clamp_lo < self.clamp_hi:
            raise InvalidParams('clamp_lo must be below clamp_hi')


DEFAULT_SOLVER = RootSolveConfig()


@dataclass(frozen=True)
class QuadInversion:
    """Root ``p`` of ``x(p) = x`` with the Jacobian ``dx/dp`` there.

    ``delta`` is ``(gamma**2 + (1 - 2*gamma)*x)**0.5``, only set when the
    quadratic closed form was used.
    """
    p: float
    jacobian: float
    delta: Optional[float] = None


def as_unit_array(x, name='x'):
    """Return ``x`` as a float array, raising `DomainError` outside ``[0, 1]``."""
    x = np.asarray(x, dtype=float)
    if np.any(np.isnan(x)) or np.any(x < 0.0) or np.any(x > 1.0):
        raise DomainError(f'{name} must lie in [0, 1]')
    return x


def _invert_quadratic(coeffs, x, cfg):
    # c == 0: x = 2g*p + (1 - 2g)*p**2, p = x / (g + D), J = 2D
    gamma = 0.5 * coeffs.a
    delta = np.sqrt(np.maximum(gamma * gamma + coeffs.b * x, 0.0))
    denom = gamma + delta
    safe = np.where(denom > 0.0, denom, 1.0)
    p = np.where(denom > 0.0, x / safe, 0.0)
    p = np.clip(p, cfg.clamp_lo, cfg.clamp_hi)
    return p, 2.0 * delta, delta


def _bisect(coeffs, x, cfg):
    lo = np.full_like(x, cfg.clamp_lo)
    hi = np.full_like(x, cfg.clamp_hi)
    for _ in range(2000):
        mid = 0.5 * (lo + hi)
        below = coeffs.x_of(mid) < x
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
        if np.all(hi - lo <= 2.0 * _EPS):
            break
    return 0.5 * (lo + hi)


def invert_monotone_poly(coeffs, x, cfg=DEFAULT_SOLVER):
    """Vectorized inverse of ``x(p) = a*p + b*p**2 + c*p**3`` on ``[0, 1]``.

    Newton-Raphson from ``p = x``, clamping ``p`` into
    ``[cfg.clamp_lo, cfg.clamp_hi]`` after every step. Entries that are
    still off after the Newton phase, or whose Newton steps stall, are
    finished by bisection on the bracket. With ``c == 0`` the quadratic
    closed form is used instead.

    Args:
        coeffs (CubicCoeffs): Coefficients in the closed monotone region.

        x (array_like): Values in ``[0, 1]``.

        cfg (RootSolveConfig, optional): Solver settings.

    Returns:
        tuple: ``(p, jacobian, delta)`` arrays shaped like ``x``; ``delta`` is
        `None` on the cubic path.

    Raises:
        InvalidCoeffs: If the transform is not monotone on ``[0, 1]``.
        DomainError: If any ``x`` lies outside ``[0, 1]``.
        NonConvergence: If even bisection cannot meet the tolerance.
    """
    if not validate_monotone(coeffs, strict=False):
        raise InvalidCoeffs(f'coefficients {coeffs} do not give a monotone transform')
    x = as_unit_array(x)
    if coeffs.c == 0.0:
        return _invert_quadratic(coeffs, x, cfg)
    shape = x.shape
    x = x.reshape(-1)

    p = np.clip(x, cfg.clamp_lo, cfg.clamp_hi)
    resid = coeffs.x_of(p) - x
    best, stalls = np.inf, 0
    for _ in range(cfg.max_iterations):
        err = float(np.max(np.abs(resid), initial=0.0))
        if err <= cfg.tolerance:
            break
        if err < best:
            best, stalls = err, 0
        else:
            stalls += 1
            if stalls >= 3:
                break
        jac = coeffs.jacobian(p)
        positive = jac > 0.0
        step = np.where(positive, resid / np.where(positive, jac, 1.0), 0.0)
        p = np.clip(p - step, cfg.clamp_lo, cfg.clamp_hi)
        resid = coeffs.x_of(p) - x

    unsolved = np.abs(resid) > cfg.tolerance
    if np.any(unsolved):
        logger.debug('Newton left %d of %d roots unsolved, bisecting', int(np.sum(unsolved)), unsolved.size)
        p = np.array(p, copy=True)
        p[unsolved] = _bisect(coeffs, x[unsolved], cfg)
        resid = coeffs.x_of(p) - x
        worst = float(np.max(np.abs(resid), initial=0.0))
        if worst > cfg.tolerance:
            raise NonConvergence(f'could not invert transform to {cfg.tolerance:g} (residual {worst:g})',
                                 best=p, iterations=cfg.max_iterations)
    p = p.reshape(shape)
    return p, coeffs.jacobian(p), None


def solve_monotone_poly(coeffs, x, cfg=DEFAULT_SOLVER):
    """Solve ``a*p + b*p**2 + c*p**3 = x`` for ``p`` in ``[0, 1]``.

        Typical usage example:

        ``solve_monotone_poly(CubicCoeffs(1.0, 0.0, 0.0), 0.37).p``

    Args:
        coeffs (CubicCoeffs): Monotone coefficients.

        x (float): Target in ``[0, 1]``.

        cfg (RootSolveConfig, optional): Solver settings.

    Returns:
        QuadInversion: The root, ``J(p)`` at the root and, on the quadratic
        path, ``Delta(x)``.
    """
    p, jac, delta = invert_monotone_poly(coeffs, np.array([float(x)]), cfg)
    return QuadInversion(p=float(p[0]), jacobian=float(jac[0]),
                         delta=None if delta is None else float(delta[0]))


def _check_shapes(alpha, beta):
    if not (alpha > 0 and beta > 0):
        raise DomainError(f'shape parameters must be positive, got ({alpha!r}, {beta!r})')


def reg_inc_beta(alpha, beta, x):
    """Regularized incomplete beta function ``I(alpha, beta; x)``.

    Args:
        alpha (float): Positive shape.

        beta (float): Positive shape.

        x (float or array_like): Point(s) in ``[0, 1]``.

    Returns:
        float or numpy.ndarray: ``I`` at ``x``; a float for scalar ``x``.
    """
    _check_shapes(alpha, beta)
    value = special.betainc(alpha, beta, as_unit_array(x))
    return float(value) if np.ndim(value) == 0 else value


def log_beta(alpha, beta):
    """``log B(alpha, beta)``."""
    _check_shapes(alpha, beta)
    return float(special.betaln(alpha, beta))


def inc_beta_step_down(alpha, beta, x, I_val):
    """``I(alpha + 1, beta; x)`` from ``I_val = I(alpha, beta; x)``.

    Uses ``I(alpha+1, beta; x) = I(alpha, beta; x) - x**alpha (1-x)**beta /
    (alpha B(alpha, beta))``.
    """
    _check_shapes(alpha, beta)
    x = as_unit_array(x)
    log_term = special.xlogy(alpha, x) + special.xlog1py(beta, -x) - math.log(alpha) - special.betaln(alpha, beta)
    value = I_val - np.exp(log_term)
    return float(value) if np.ndim(value) == 0 else value


def solve_increasing(func, dfunc, target, lo, hi, x0=None, tolerance=1e-12, max_iterations=200):
    """Solve ``func(x) = target`` for increasing ``func`` on ``[lo, hi]``.

    Newton steps are accepted while they stay inside the shrinking bracket,
    otherwise the bracket is bisected.

    Returns:
        float: The root.

    Raises:
        NonConvergence: After ``max_iterations`` without meeting ``tolerance``.
    """
    x = 0.5 * (lo + hi) if x0 is None else min(max(x0, lo), hi)
    for iteration in range(max_iterations):
        fx = func(x) - target
        if abs(fx) <= tolerance:
            return x
        if fx < 0.0:
            lo = x
        else:
            hi = x
        mid = 0.5 * (lo + hi)
        if hi - lo <= 4.0 * _EPS * abs(x) or not lo < mid < hi:
            return x
        d = dfunc(x)
        x_new = x - fx / d if (d > 0.0 and math.isfinite(d)) else math.nan
        if not lo < x_new < hi:
            x_new = mid
        x = x_new
    raise NonConvergence(f'no root within {tolerance:g} after {max_iterations} iterations',
                         best=x, iterations=max_iterations)


def quadrature(f, abs_tol=1e-10, points=None, limit=500):
    """Adaptive Gauss-Kronrod integral of ``f`` over ``[0, 1]``.

    The nodes never touch the endpoints, so integrable endpoint
    singularities (``alpha < 1`` or ``beta < 1``) are fine. Used to check
    closed forms, not on any evaluation path.

    Args:
        f (callable): Scalar integrand.

        abs_tol (float, optional): Absolute error target. (Default is 1e-10)

        points (list[float], optional): Interior break points, e.g. a point
            where the density diverges.

        limit (int, optional): Maximum number of subintervals.

    Returns:
        float: The integral estimate.

    Raises:
        ToleranceNotMet: If the subdivision budget ran out before the error
        estimate fell below ``abs_tol``.
    """
    result = integrate.quad(f, 0.0, 1.0, epsabs=abs_tol, epsrel=0.0, limit=limit,
                            points=points, full_output=1)
    value, error, info = result[0], result[1], result[2]
    if len(result) > 3 and error > abs_tol:
        if info.get('last', 0) >= limit:
            raise ToleranceNotMet(f'quadrature stopped at error {error:g} > {abs_tol:g}', estimate=value, error=error)
        logger.warning('quadrature: %s (error estimate %g)', result[3], error)
    return value
