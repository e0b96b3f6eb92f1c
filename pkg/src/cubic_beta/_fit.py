"""
Fitting Module

Maximum-likelihood fitting over the model ladder
``beta -> qbeta/sqbeta -> cbeta/scbeta``, likelihood-ratio tests between
rungs, and the mean/modal reparameterizations used for regression.
"""
import logging
import math
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass, field
from typing import List, Tuple

import numpy as np
from numpy.polynomial import Polynomial
from numpy.polynomial import polynomial as P
from scipy import optimize, special, stats

from cubic_beta._dist import FAMILIES, make_distribution
from cubic_beta._exceptions import (BoundaryValueError, CubicBetaError, DataError, InvalidCoeffs,
                                    InvalidParams, NegativeStatistic, NoSolution)
from cubic_beta._numerics import DEFAULT_SOLVER, RootSolveConfig, solve_increasing, solve_monotone_poly
from cubic_beta._params import QUADRATIC_DELTA, BetaCore, ShapeParams, coeffs_from_shape, validate_monotone

logger = logging.getLogger(__name__)

LADDER = ('beta', 'qbeta', 'sqbeta', 'cbeta', 'scbeta')
PARENT = {'qbeta': 'beta', 'sqbeta': 'beta', 'cbeta': 'qbeta', 'scbeta': 'sqbeta'}
_RUNG = {'beta': 0, 'qbeta': 1, 'sqbeta': 1, 'cbeta': 2, 'scbeta': 2}
_JACOBIAN_FREE = ('sqbeta', 'scbeta')

# log(alpha), log(beta) are clipped here before exponentiation
_LOG_CLIP = 30.0
_SIMPLEX_STEP = 0.25
_SHOWN_ROWS = 10


def _rows_text(rows):
    shown = ', '.join(str(r) for r in rows[:_SHOWN_ROWS])
    return shown + (', ...' if len(rows) > _SHOWN_ROWS else '')


@dataclass(eq=False)
class Dataset:
    """Observations rescaled to the open unit interval.

        Typical usage example:

        ``data = Dataset.from_raw(body_fat, interval=(0, 100), name='body fat')``

    Args:
        values (array_like): Values strictly inside ``(0, 1)``.

        source_interval (tuple, optional): The ``(lo, hi)`` the raw values
            were rescaled from. (Default is ``(0, 1)``)

        name (str, optional): Label used in reports.

    Raises:
        DataError: If there are no values.
        BoundaryValueError: If a value is not strictly inside ``(0, 1)``.
    """
    values: np.ndarray
    source_interval: Tuple[float, float] = (0.0, 1.0)
    name: str = ''

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float).reshape(-1)
        lo, hi = self.source_interval
        if not lo < hi:
            raise DataError(f'interval must satisfy lo < hi, got ({lo!r}, {hi!r})')
        if self.values.size == 0:
            raise DataError('dataset is empty')
        bad = np.flatnonzero(~((self.values > 0.0) & (self.values < 1.0))).tolist()
        if bad:
            raise BoundaryValueError(f'{len(bad)} values not strictly inside (0, 1) at rows {_rows_text(bad)}',
                                     rows=bad)

    @classmethod
    def from_raw(cls, raw, interval=(0.0, 1.0), name='', nudge=False):
        """Rescale raw values by ``(v - lo) / (hi - lo)``.

        Args:
            raw (array_like): Raw observations in ``[lo, hi]``.

            interval (tuple, optional): ``(lo, hi)``. (Default is ``(0, 1)``)

            name (str, optional): Label used in reports.

            nudge (bool, optional): Move values sitting exactly on ``lo`` or
                ``hi`` inward by ``1/(2n)`` instead of failing. (Default is
                `False`)

        Returns:
            Dataset: The rescaled data.

        Raises:
            BoundaryValueError: For values outside ``[lo, hi]``, or on its ends
            without ``nudge``; ``rows`` lists the 0-based positions.
        """
        raw = np.asarray(raw, dtype=float).reshape(-1)
        lo, hi = float(interval[0]), float(interval[1])
        if not lo < hi:
            raise DataError(f'interval must satisfy lo < hi, got ({lo!r}, {hi!r})')
        if raw.size == 0:
            raise DataError('dataset is empty')
        outside = np.flatnonzero(~((raw >= lo) & (raw <= hi))).tolist()
        if outside:
            raise BoundaryValueError(f'{len(outside)} values outside [{lo:g}, {hi:g}] at rows '
                                     f'{_rows_text(outside)}', rows=outside)
        values = (raw - lo) / (hi - lo)
        ends = np.flatnonzero((values <= 0.0) | (values >= 1.0)).tolist()
        if ends:
            if not nudge:
                raise BoundaryValueError(f'{len(ends)} values on the interval ends at rows {_rows_text(ends)} '
                                         '(use nudge to move them inside)', rows=ends)
            eps = 0.5 / raw.size
            values[ends] = np.where(values[ends] <= 0.0, eps, 1.0 - eps)
            logger.warning('moved %d boundary observations %g into (0, 1)', len(ends), eps)
        return cls(values, (lo, hi), name)

    @property
    def n(self):
        return int(self.values.size)

    @property
    def log_jacobian(self):
        """float: ``n*log(hi - lo)``, the likelihood offset between raw and unit scale."""
        lo, hi = self.source_interval
        return self.n * math.log(hi - lo)

    def flipped(self):
        """The dataset of ``1 - x``."""
        return Dataset(1.0 - self.values, self.source_interval, self.name)


@dataclass(frozen=True)
class FitConfig:
    """Settings of the simplex fits.

    Args:
        max_iterations (int, optional): Simplex iterations per stage.
            (Default is 4000)

        fatol (float, optional): Spread of ``-loglik`` over the simplex at
            convergence. (Default is 1e-9)

        xatol (float, optional): Spread of the transformed parameters at
            convergence. (Default is 1e-7)

        restarts (int, optional): Restarts from the optimum. (Default is 1)

        margin (float, optional): ``gamma`` and ``delta`` are kept inside
            ``[margin, 1 - margin]``. (Default is 1e-6)

        regression_slack (float, optional): How far a fit may end above its
            parent rung before fallback stages run. (Default is 1e-6)

        solver (RootSolveConfig, optional): Inversion settings.
    """
    max_iterations: int = 4000
    fatol: float = 1e-9
    xatol: float = 1e-7
    restarts: int = 1
    margin: float = 1e-6
    regression_slack: float = 1e-6
    solver: RootSolveConfig = DEFAULT_SOLVER

    def __post_init__(self):
        if self.max_iterations < 1:
            raise InvalidParams(f'max_iterations must be at least 1, got {self.max_iterations!r}')
        if self.restarts < 0:
            raise InvalidParams(f'restarts must not be negative, got {self.restarts!r}')
        if not (self.fatol > 0 and self.xatol > 0):
            raise InvalidParams('fatol and xatol must be positive')
        if not 0.0 < self.margin < 0.5:
            raise InvalidParams(f'margin must lie in (0, 0.5), got {self.margin!r}')
        if self.regression_slack < 0:
            raise InvalidParams('regression_slack must not be negative')


@dataclass
class FitResult:
    """Outcome of a maximum-likelihood fit.

    ``shape`` holds ``gamma = 1/2`` and ``delta = 1/3`` where the family does
    not use them. ``stage_trace`` lists ``(stage, -loglik)`` for every stage
    that led here, parent rungs included.
    """
    family: str
    core: BetaCore
    shape: ShapeParams
    neg_loglik: float
    converged: bool
    iterations: int
    stage_trace: List[Tuple[str, float]] = field(default_factory=list)
    n_obs: int = 0

    @property
    def param_names(self):
        return FAMILIES[self.family].param_names

    @property
    def n_params(self):
        return len(self.param_names)

    @property
    def full_params(self):
        return {'alpha': self.core.alpha, 'beta': self.core.beta,
                'gamma': self.shape.gamma, 'delta': self.shape.delta}

    @property
    def params(self):
        """dict: Fitted values of the family's own parameters."""
        full = self.full_params
        return {name: full[name] for name in self.param_names}

    def distribution(self, solver=DEFAULT_SOLVER):
        return make_distribution(self.family, *self.params.values(), solver=solver)

    def as_dict(self):
        return {
            'family': self.family,
            'neg_loglik': self.neg_loglik,
            **self.params,
            'converged': self.converged,
            'iterations': self.iterations,
            'stage_trace': [{'stage': stage, 'neg_loglik': value} for stage, value in self.stage_trace],
        }


def _values_of(data):
    if isinstance(data, Dataset):
        return data.values
    return Dataset(data).values


def neg_loglik(family, params, data, solver=DEFAULT_SOLVER):
    """Negative log-likelihood of ``family`` at ``params``.

    Args:
        family (str): Family tag, e.g. ``'cbeta'``.

        params (dict or sequence): Parameters by name, or in the family's
            ``param_names`` order.

        data (Dataset or array_like): Observations in ``(0, 1)``.

    Returns:
        float: ``-sum(log pdf)``, `math.inf` when an observation has zero
        density.

    Raises:
        InvalidParams: If the parameters are invalid for the family.
    """
    if isinstance(params, dict):
        try:
            params = [params[name] for name in FAMILIES[family].param_names]
        except KeyError as e:
            raise InvalidParams(f'missing parameter {e} for {family}') from None
    return make_distribution(family, *params, solver=solver).neg_loglik(_values_of(data))


def _to_theta(names, full):
    return np.array([math.log(full[n]) if n in ('alpha', 'beta') else float(special.logit(full[n]))
                     for n in names])


def _from_theta(names, theta, base, margin):
    full = dict(base)
    for name, t in zip(names, theta):
        if name in ('alpha', 'beta'):
            full[name] = math.exp(min(max(float(t), -_LOG_CLIP), _LOG_CLIP))
        else:
            full[name] = min(max(float(special.expit(t)), margin), 1.0 - margin)
    return full


def _objective(family, free, base, values, config):
    cls = FAMILIES[family]

    def fun(theta):
        full = _from_theta(free, theta, base, config.margin)
        try:
            d = cls.from_params(*(full[n] for n in cls.param_names), solver=config.solver)
            return d.neg_loglik(values)
        except CubicBetaError:
            return math.inf
    return fun


def _minimize(fun, x0, config):
    options = {'maxiter': config.max_iterations, 'xatol': config.xatol, 'fatol': config.fatol}
    simplex = np.vstack([x0] + [x0 + _SIMPLEX_STEP * e for e in np.eye(len(x0))])
    res = optimize.minimize(fun, x0, method='Nelder-Mead', options={**options, 'initial_simplex': simplex})
    x, f, nfev, ok = res.x, float(res.fun), int(res.nfev), bool(res.success)
    for _ in range(config.restarts):
        again = optimize.minimize(fun, x, method='Nelder-Mead', options=options)
        nfev += int(again.nfev)
        ok = bool(again.success)
        if again.fun <= f:
            x, f = again.x, float(again.fun)
    return x, f, nfev, ok


def _moment_start(values):
    m, v = float(np.mean(values)), float(np.var(values))
    common = m * (1.0 - m) / v - 1.0 if v > 0.0 else 2.0
    if not common > 0.0:
        common = 2.0
    return {'alpha': m * common, 'beta': (1.0 - m) * common, 'gamma': 0.5, 'delta': QUADRATIC_DELTA}


def _fallback_orders(names):
    shape_names = tuple(n for n in names if n in ('gamma', 'delta'))
    if len(shape_names) == 1:
        return [[shape_names, names]]
    return [[('gamma',), shape_names, names], [('delta',), shape_names, names]]


def fit_mle(family, data, config=None, parent=None):
    """Fit ``family`` by maximum likelihood, starting from its parent rung.

    The beta rung starts from the method of moments; every other rung starts
    at its parent's optimum (``gamma = 1/2`` or ``delta = 1/3``), where the
    two likelihoods coincide. All free parameters are refined together by a
    Nelder-Mead simplex in ``(log alpha, log beta, logit gamma, logit
    delta)``. If that stage does not converge, or ends above the parent's
    ``-loglik``, the shape parameters are floated one at a time (``gamma``
    then ``delta``, and the reverse) before another joint stage; the best
    stage wins.

        Typical usage example:

        ``result = fit_mle('cbeta', Dataset.from_raw(values, interval=(0, 100)))``

    Args:
        family (str): One of ``LADDER``.

        data (Dataset or array_like): Observations in ``(0, 1)``.

        config (FitConfig, optional): Simplex settings.

        parent (FitResult, optional): Fit of the parent rung; fitted here
            when missing.

    Returns:
        FitResult: The best fit found. ``converged`` is `False` when the last
        simplex stage ran out of iterations.
    """
    config = config or FitConfig()
    if family not in LADDER:
        raise InvalidParams(f'cannot fit {family!r}, expected one of {", ".join(LADDER)}')
    values = _values_of(data)
    names = FAMILIES[family].param_names
    margin = config.margin

    if family == 'beta':
        base, parent_nll, trace = _moment_start(values), math.inf, []
    else:
        if parent is None:
            parent = fit_mle(PARENT[family], data, config)
        base, parent_nll, trace = parent.full_params, parent.neg_loglik, list(parent.stage_trace)

    x, nll, total, ok = _minimize(_objective(family, names, base, values, config), _to_theta(names, base), config)
    best = (_from_theta(names, x, base, margin), nll, ok)
    trace.append((family, nll))
    logger.debug('%s joint stage: -loglik %.6f after %d evaluations', family, nll, total)

    if family != 'beta' and (not ok or nll > parent_nll + config.regression_slack):
        logger.warning('%s fit ended at %.6f against parent %.6f (converged=%s), floating shape parameters',
                       family, nll, parent_nll, ok)
        for order in _fallback_orders(names):
            params = dict(base)
            for free in order:
                x, f, nfev, stage_ok = _minimize(_objective(family, free, params, values, config),
                                                 _to_theta(free, params), config)
                params = _from_theta(free, x, params, margin)
                total += nfev
                trace.append((f'{family}[{",".join(free)}]', f))
            if f < best[1]:
                best = (params, f, stage_ok)

    full, nll, ok = best
    if not ok:
        logger.warning('%s fit did not converge within %d iterations', family, config.max_iterations)
    return FitResult(family=family, core=BetaCore(full['alpha'], full['beta']),
                     shape=ShapeParams(full['gamma'], full['delta']), neg_loglik=nll, converged=ok,
                     iterations=total, stage_trace=trace, n_obs=int(values.size))


def _with_ancestors(families):
    needed = set()
    for family in families:
        while family is not None:
            needed.add(family)
            family = PARENT.get(family)
    return needed


def fit_ladder(data, families=LADDER, config=None, max_workers=4):
    """Fit several families, each rung started from the one below.

    Missing parent rungs are fitted too. Families on the same rung are
    fitted concurrently.

    Returns:
        dict: ``family -> FitResult`` for every fitted rung, in ladder order.
    """
    families = list(dict.fromkeys(families))
    if not families:
        raise InvalidParams('no families to fit')
    unknown = [f for f in families if f not in LADDER]
    if unknown:
        raise InvalidParams(f'cannot fit {", ".join(map(repr, unknown))}, expected one of {", ".join(LADDER)}')
    needed = _with_ancestors(families)
    data = data if isinstance(data, Dataset) else Dataset(data)

    results = {}
    for rung in sorted(set(_RUNG.values())):
        todo = [f for f in LADDER if f in needed and _RUNG[f] == rung]
        if not todo:
            continue
        with ThreadPoolExecutor(max_workers=max_workers) as executor:
            futures = {executor.submit(fit_mle, family, data, config, results.get(PARENT.get(family))): family
                       for family in todo}
            for future in as_completed(futures):
                results[futures[future]] = future.result()
    return {family: results[family] for family in LADDER if family in results}


def lr_test(nested, parent, df=None, slack=1e-6):
    """Likelihood-ratio test of ``nested`` against ``parent``.

    Args:
        nested (FitResult): Fit of the smaller model.

        parent (FitResult): Fit of the model containing it.

        df (int, optional): Degrees of freedom; the parameter count
            difference by default.

        slack (float, optional): Tolerated optimizer shortfall of the parent.

    Returns:
        tuple: ``(statistic, p_value)``.

    Raises:
        NegativeStatistic: If the parent fit is worse than the nested one by
        more than ``slack``.
    """
    statistic = 2.0 * (nested.neg_loglik - parent.neg_loglik)
    if statistic < -2.0 * slack:
        raise NegativeStatistic(f'{parent.family} -loglik {parent.neg_loglik:.6f} is above nested '
                                f'{nested.family} {nested.neg_loglik:.6f}; the parent fit missed its optimum')
    statistic = max(statistic, 0.0)
    df = parent.n_params - nested.n_params if df is None else df
    if df < 1:
        raise InvalidParams(f'degrees of freedom must be at least 1, got {df!r}')
    return statistic, float(stats.chi2.sf(statistic, df))


def _rising_factorial_ratios(eta, n):
    # (alpha)_m / (eta)_m as polynomials in alpha, m = 0..n
    polys = [Polynomial([1.0])]
    for i in range(n):
        polys.append(polys[-1] * Polynomial([float(i), 1.0]) / (eta + i))
    return polys


def _mean_polys(coeffs, eta, jacobian_free):
    weight = np.array([coeffs.a, 2.0 * coeffs.b, 3.0 * coeffs.c]) if jacobian_free else np.array([1.0])
    num_weights = P.polymul(weight, coeffs.as_array())
    ratios = _rising_factorial_ratios(eta, len(num_weights) - 1)
    num = sum((r * float(w) for w, r in zip(num_weights, ratios)), Polynomial([0.0]))
    den = sum((r * float(w) for w, r in zip(weight, ratios)), Polynomial([0.0]))
    return num, den


def alpha_from_mean(mu, eta, coeffs, jacobian_free=False, tolerance=1e-12):
    """Find ``alpha`` (``beta = eta - alpha``) whose mean is ``mu``.

    The mean is a ratio of polynomials in ``alpha`` for fixed ``eta``,
    increasing on ``(0, eta)``; safeguarded Newton starts at ``eta/2``.

    Args:
        mu (float): Target mean in ``(0, 1)``.

        eta (float): ``alpha + beta``.

        coeffs (CubicCoeffs): Transform coefficients.

        jacobian_free (bool, optional): Invert the SQ/SC-beta mean instead
            of the Q/C-beta one. (Default is `False`)

    Raises:
        NoSolution: If ``mu`` is outside the means reachable for ``alpha``
        in ``(0, eta)``.
    """
    if not eta > 0.0:
        raise InvalidParams(f'eta must be positive, got {eta!r}')
    if not validate_monotone(coeffs, strict=False):
        raise InvalidCoeffs(f'{coeffs} do not give a monotone transform')
    if not 0.0 < mu < 1.0:
        raise NoSolution(f'mean {mu!r} is not inside (0, 1)')
    num, den = _mean_polys(coeffs, eta, jacobian_free)
    d_num, d_den = num.deriv(), den.deriv()

    def mean(alpha):
        return num(alpha) / den(alpha)

    def slope(alpha):
        d = den(alpha)
        return (d_num(alpha) * d - num(alpha) * d_den(alpha)) / (d * d)

    lo, hi = eta * 1e-12, eta * (1.0 - 1e-12)
    if not mean(lo) < mu < mean(hi):
        raise NoSolution(f'mean {mu!r} is not attainable with eta={eta!r} (range {mean(lo):.6g} to {mean(hi):.6g})')
    return solve_increasing(mean, slope, mu, lo, hi, x0=0.5 * eta, tolerance=tolerance)


def alpha_from_mode(family, x_m, eta, coeffs, solver=DEFAULT_SOLVER):
    """Find ``alpha`` (``beta = eta - alpha``) whose mode is ``x_m``.

    With ``p_m = p(x_m)``, SQ/SC-beta need ``alpha = 1 + p_m (eta - 2)``; for
    the Jacobian-bearing families the stationary condition is linear in
    ``alpha``: ``alpha = 1 + p_m (eta - 2) + p_m (1 - p_m) J'(p_m) / J(p_m)``.

    Args:
        family (str or type): Family tag or descriptor class.

        x_m (float): Target mode in ``(0, 1)``.

        eta (float): ``alpha + beta``.

        coeffs (CubicCoeffs): Transform coefficients.

    Raises:
        NoSolution: If the resulting ``alpha`` is not in ``(0, eta)``, or
        ``eta <= 2`` for SQ/SC-beta.
    """
    family = family if isinstance(family, str) else family.family
    if family not in LADDER:
        raise InvalidParams(f'no modal parameterization for {family!r}')
    if not 0.0 < x_m < 1.0:
        raise NoSolution(f'mode {x_m!r} is not inside (0, 1)')
    p = solve_monotone_poly(coeffs, x_m, solver).p
    if family in _JACOBIAN_FREE:
        if eta <= 2.0:
            raise NoSolution(f'an interior mode needs eta > 2, got {eta!r}')
        alpha = 1.0 + p * (eta - 2.0)
    else:
        alpha = 1.0 + p * (eta - 2.0) + p * (1.0 - p) * coeffs.jacobian_slope(p) / coeffs.jacobian(p)
    if not 0.0 < alpha < eta:
        raise NoSolution(f'mode {x_m!r} with eta={eta!r} needs alpha={alpha:.6g} outside (0, eta)')
    return float(alpha)


def _regression_distribution(family, alpha, eta, gamma, delta, solver):
    params = {'alpha': alpha, 'beta': eta - alpha, 'gamma': gamma, 'delta': delta}
    return make_distribution(family, *(params[n] for n in FAMILIES[family].param_names), solver=solver)


def _regression_coeffs(family, gamma, delta):
    if family == 'beta':
        gamma, delta = 0.5, QUADRATIC_DELTA
    elif family in ('qbeta', 'sqbeta'):
        delta = QUADRATIC_DELTA
    return coeffs_from_shape(ShapeParams(gamma, delta))


@dataclass(frozen=True)
class MeanRegressionParams:
    """``(mu, eta, gamma, delta)``, with the mean ``mu`` in place of ``alpha``."""
    mu: float
    eta: float
    gamma: float = 0.5
    delta: float = QUADRATIC_DELTA

    def to_distribution(self, family='cbeta', solver=DEFAULT_SOLVER):
        coeffs = _regression_coeffs(family, self.gamma, self.delta)
        alpha = alpha_from_mean(self.mu, self.eta, coeffs, jacobian_free=family in _JACOBIAN_FREE)
        return _regression_distribution(family, alpha, self.eta, self.gamma, self.delta, solver)


@dataclass(frozen=True)
class ModalRegressionParams:
    """``(x_m, eta, gamma, delta)``, with the mode ``x_m`` in place of ``alpha``."""
    x_m: float
    eta: float
    gamma: float = 0.5
    delta: float = QUADRATIC_DELTA

    def to_distribution(self, family='cbeta', solver=DEFAULT_SOLVER):
        coeffs = _regression_coeffs(family, self.gamma, self.delta)
        alpha = alpha_from_mode(family, self.x_m, self.eta, coeffs, solver)
        return _regression_distribution(family, alpha, self.eta, self.gamma, self.delta, solver)
