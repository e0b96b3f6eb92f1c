"""
Distributions Module

Descriptors of the transformed-beta families. Every descriptor evaluates
the density on the log scale first (``log_pdf``), so large ``alpha`` and
``beta`` stay stable; ``pdf`` exponentiates.
"""
import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from numpy.polynomial import polynomial as P
from scipy import special

from cubic_beta._exceptions import DomainError, InvalidCoeffs, InvalidParams
from cubic_beta._numerics import (DEFAULT_SOLVER, as_unit_array, inc_beta_step_down, invert_monotone_poly,
                                  reg_inc_beta, solve_increasing)
from cubic_beta._params import (IDENTITY, QUADRATIC_DELTA, BetaCore, CubicCoeffs, ShapeParams,
                                coeffs_from_shape, shape_from_coeffs, validate_monotone)

MODE = 'mode'
ANTIMODE = 'antimode'
BOUNDARY = 'boundary'
ABSENT = 'absent'

# below this |t| the GenQuad mgf is summed as a Taylor series
_MGF_SERIES_CUTOFF = 1e-3


@dataclass(frozen=True)
class ModeResult:
    """Location and nature of the density's turning point.

    Args:
        x_m (float, optional): Location in ``(0, 1)``, `None` when there is
            no interior turning point.

        p_m (float, optional): The matching point of the parent beta scale.

        kind (str): One of ``'mode'``, ``'antimode'``, ``'boundary'``
            (density largest at an end of the interval) or ``'absent'``
            (flat density).

        curvature (float, optional): Second derivative of the density at
            ``x_m`` where a closed form exists.

        boundary (tuple, optional): Ends of ``[0, 1]`` where the density
            diverges.
    """
    x_m: Optional[float]
    p_m: Optional[float]
    kind: str
    curvature: Optional[float] = None
    boundary: Tuple[float, ...] = ()


def _shaped(x, values):
    return float(values) if np.ndim(x) == 0 else values


class _Distribution:
    """Caching and likelihood plumbing shared by every descriptor."""
    family = None
    param_names = ()

    def __init__(self):
        self.__mean = None
        self.__variance = None
        self.__mode = None

    @property
    def params(self):
        """tuple: Parameter values in the order of ``param_names``."""
        return tuple(getattr(self, name) for name in self.param_names)

    @property
    def n_params(self):
        return len(self.param_names)

    @property
    def mean(self):
        """float: ``E(X)``."""
        if self.__mean is None:
            self.__mean = float(self._mean())
        return self.__mean

    @property
    def variance(self):
        """float: ``var(X)``, never negative."""
        if self.__variance is None:
            self.__variance = max(float(self._variance()), 0.0)
        return self.__variance

    @property
    def mode(self):
        """ModeResult: The turning point of the density."""
        if self.__mode is None:
            self.__mode = self._mode()
        return self.__mode

    def _variance(self):
        return self.raw_moment(2) - self.mean ** 2

    def pdf(self, x):
        values = np.exp(self.log_pdf(x))
        return _shaped(x, values)

    def neg_loglik(self, values):
        """Negative log-likelihood of observations in ``(0, 1)``.

        Returns:
            float: ``-sum(log_pdf(values))``, `math.inf` when any observation
            has zero (or infinite) density.
        """
        logs = self.log_pdf(np.asarray(values, dtype=float))
        total = -float(np.sum(logs))
        return total if math.isfinite(total) else math.inf

    def flipped(self):
        """Descriptor of ``1 - X``."""
        values = dict(zip(self.param_names, self.params))
        if 'alpha' in values:
            values['alpha'], values['beta'] = values['beta'], values['alpha']
        values['gamma'] = 1.0 - values['gamma']
        return type(self).from_params(*(values[name] for name in self.param_names),
                                      solver=self.solver)

    def __repr__(self):
        args = ', '.join(f'{name}={value:.6g}' for name, value in zip(self.param_names, self.params))
        return f'{type(self).__name__}({args})'


class _TransformedBeta(_Distribution):
    """Parent beta variate pushed through the monotone cubic ``x(p)``."""
    param_names = ('alpha', 'beta', 'gamma', 'delta')

    def __init__(self, alpha, beta, gamma=0.5, delta=QUADRATIC_DELTA, solver=DEFAULT_SOLVER):
        super().__init__()
        self.core = BetaCore(alpha, beta)
        self.shape = ShapeParams(gamma, delta)
        self.solver = solver
        self.coeffs = self._make_coeffs()
        if not validate_monotone(self.coeffs, strict=False):
            raise InvalidCoeffs(f'{self.coeffs} do not give a monotone transform')

    @classmethod
    def from_params(cls, *values, solver=DEFAULT_SOLVER):
        return cls(*values, solver=solver)

    def _make_coeffs(self):
        return coeffs_from_shape(self.shape)

    @property
    def alpha(self):
        return self.core.alpha

    @property
    def beta(self):
        return self.core.beta

    @property
    def gamma(self):
        return self.shape.gamma

    @property
    def delta(self):
        return self.shape.delta

    def _invert(self, x):
        p, jac, _ = invert_monotone_poly(self.coeffs, x, self.solver)
        return p, jac

    def _log_parent(self, p):
        return (special.xlogy(self.core.alpha - 1.0, p) + special.xlog1py(self.core.beta - 1.0, -p)
                - self.core.log_beta)

    def _spikes(self):
        return tuple(end for end, shape in ((0.0, self.core.alpha), (1.0, self.core.beta)) if shape < 1.0)

    def log_pdf(self, x):
        """Log density at ``x``; ``+inf`` at an end where the density diverges.

        Raises:
            DomainError: If ``x`` lies outside ``[0, 1]``.
        """
        x_arr = as_unit_array(x)
        p, jac = self._invert(x_arr)
        with np.errstate(divide='ignore', invalid='ignore'):
            values = self._log_density(p, jac)
        return _shaped(x, values)

    def cdf(self, x):
        x_arr = as_unit_array(x)
        p, _ = self._invert(x_arr)
        return _shaped(x, np.clip(self._cdf_from_p(p), 0.0, 1.0))

    def quantile(self, q):
        """Inverse of :meth:`cdf`.

        Raises:
            DomainError: If ``q`` lies outside ``[0, 1]``.
        """
        q_arr = as_unit_array(q, name='q')
        return _shaped(q, self._quantile(q_arr))

    def _beta_quantile_x(self, q):
        return np.clip(self.coeffs.x_of(special.betaincinv(self.core.alpha, self.core.beta, q)), 0.0, 1.0)

    def raw_moment(self, n):
        """``E(X**n)`` by expanding the transform into powers of ``p``.

        Each power ``p**m`` integrates to ``(alpha)_m / (eta)_m``.

        Raises:
            DomainError: If ``n`` is not a nonnegative integer.
        """
        if int(n) != n or n < 0:
            raise DomainError(f'moment order must be a nonnegative integer, got {n!r}')
        weights = P.polymul(self._moment_weight(), P.polypow(self.coeffs.as_array(), int(n)))
        ratios = self.core.moment_ratios(len(weights) - 1)
        return self._moment_scale() * float(np.dot(weights, ratios))

    def _moment_weight(self):
        return np.array([1.0])

    def _moment_scale(self):
        return 1.0

    def sample(self, size=None, rng=None):
        from cubic_beta._sampling import make_rng, sample_transform
        return sample_transform(self, make_rng(rng), size)


class CBeta(_TransformedBeta):
    """C-beta distribution, the law of ``x(P)`` for ``P ~ Beta(alpha, beta)``.

        Typical usage example:

        ``d = CBeta(2.61, 10.95, gamma=0.354, delta=0.637)``

        ``d.pdf(0.2), d.cdf(0.2), d.quantile(0.5), d.mean, d.mode``

    Args:
        alpha (float): First parent shape, positive.

        beta (float): Second parent shape, positive.

        gamma (float, optional): Label-symmetric shape in ``[0, 1]``.
            (Default is 0.5)

        delta (float, optional): Cubic shape in ``[0, 1]``; ``1/3`` gives the
            quadratic subfamily. (Default is 1/3)

        solver (RootSolveConfig, optional): Inversion settings.

    Note:
        ``gamma = 1/2, delta = 1/3`` is the identity transform, i.e. the beta
        distribution itself.
    """
    family = 'cbeta'

    def _jacobian_order(self, end):
        """Order of the zero of ``J`` at ``end`` and its leading Taylor coefficient."""
        a, b, c = self.coeffs.a, self.coeffs.b, self.coeffs.c
        # J(p) about p = 0, or J(1 - t) about t = 0
        taylor = (a, 2.0 * b, 3.0 * c) if end == 0.0 else (a + 2.0 * b + 3.0 * c, -2.0 * b - 6.0 * c, 3.0 * c)
        scale = max(abs(t) for t in taylor)
        for order, lead in enumerate(taylor):
            if lead > 1e-12 * scale:
                return order, lead
        return 0, taylor[0]

    def _spikes(self):
        ends = ((0.0, self.core.alpha), (1.0, self.core.beta))
        return tuple(end for end, shape in ends if shape - self._jacobian_order(end)[0] < 1.0)

    def _log_density(self, p, jac):
        values = self._log_parent(p) - np.log(jac)
        for end, shape in ((0.0, self.core.alpha), (1.0, self.core.beta)):
            order, lead = self._jacobian_order(end)
            at_end = p == end
            if order and np.any(at_end):
                # f ~ t**(shape - 1 - order) / lead, t the distance to the end
                limit = special.xlogy(shape - 1.0 - order, 0.0) - self.core.log_beta - math.log(lead)
                values = np.where(at_end, limit, values)
        return values

    def _cdf_from_p(self, p):
        return special.betainc(self.core.alpha, self.core.beta, p)

    def _quantile(self, q):
        return self._beta_quantile_x(q)

    def _mean(self):
        a, b, c = self.coeffs.a, self.coeffs.b, self.coeffs.c
        alpha, eta = self.core.alpha, self.core.eta
        return alpha / eta * (a + (alpha + 1.0) / (eta + 1.0) * (b + (alpha + 2.0) / (eta + 2.0) * c))

    def _stationary_poly(self):
        # d log f / dp, multiplied through by p(1 - p)J(p)
        a, b, c = self.coeffs.a, self.coeffs.b, self.coeffs.c
        alpha, beta = self.core.alpha, self.core.beta
        jac = np.array([a, 2.0 * b, 3.0 * c])
        poly = P.polysub((alpha - 1.0) * P.polymul([1.0, -1.0], jac),
                         (beta - 1.0) * P.polymul([0.0, 1.0], jac))
        return P.polysub(poly, P.polymul([0.0, 1.0, -1.0], [2.0 * b, 6.0 * c]))

    def _mode(self):
        spikes = self._spikes()
        poly = self._stationary_poly()
        scale = float(np.max(np.abs(poly), initial=0.0))
        if scale < 1e-14:
            return ModeResult(None, None, BOUNDARY if spikes else ABSENT, boundary=spikes)
        poly = P.polytrim(poly, tol=1e-14 * scale)
        roots = P.polyroots(poly) if len(poly) > 1 else np.array([])
        interior = sorted(float(r.real) for r in roots if abs(r.imag) < 1e-9 and 0.0 < r.real < 1.0)
        slope = P.polyder(poly)
        maxima = [r for r in interior if P.polyval(r, slope) < 0.0]
        if maxima:
            heights = [float(self._log_density(np.asarray(r), self.coeffs.jacobian(r))) for r in maxima]
            p_m = maxima[int(np.argmax(heights))]
            return ModeResult(float(self.coeffs.x_of(p_m)), p_m, MODE, boundary=spikes)
        if interior:
            p_m = interior[0]
            return ModeResult(float(self.coeffs.x_of(p_m)), p_m, ANTIMODE, boundary=spikes)
        return ModeResult(None, None, BOUNDARY, boundary=spikes)


class QBeta(CBeta):
    """Q-beta distribution, ``X = 2*gamma*P + (1 - 2*gamma)*P**2``.

    Same as :class:`CBeta` with ``delta = 1/3``; its mean and variance have
    closed forms.
    """
    family = 'qbeta'
    param_names = ('alpha', 'beta', 'gamma')

    def __init__(self, alpha, beta, gamma=0.5, solver=DEFAULT_SOLVER):
        super().__init__(alpha, beta, gamma, QUADRATIC_DELTA, solver)

    def _make_coeffs(self):
        return CubicCoeffs(2.0 * self.shape.gamma, 1.0 - 2.0 * self.shape.gamma, 0.0)

    def _mean(self):
        alpha, beta, eta = self.core.alpha, self.core.beta, self.core.eta
        return alpha * (2.0 * self.gamma * beta + alpha + 1.0) / (eta * (eta + 1.0))

    def _variance(self):
        g = self.gamma
        r = self.core.moment_ratios(4)
        second = 4.0 * g * g * r[2] + 4.0 * g * (1.0 - 2.0 * g) * r[3] + (1.0 - 2.0 * g) ** 2 * r[4]
        return second - self.mean ** 2


class Beta(QBeta):
    """The beta distribution, bottom rung of the model ladder."""
    family = 'beta'
    param_names = ('alpha', 'beta')

    def __init__(self, alpha, beta, solver=DEFAULT_SOLVER):
        super().__init__(alpha, beta, 0.5, solver)

    def _make_coeffs(self):
        return IDENTITY

    def _invert(self, x):
        return x, np.ones_like(x)

    def _mean(self):
        return self.core.alpha / self.core.eta

    def flipped(self):
        return Beta(self.core.beta, self.core.alpha, solver=self.solver)


class CBeta11(CBeta):
    """C-beta with a uniform parent, ``X = a*U + b*U**2 + c*U**3``.

    The cdf is ``p(x)`` itself and the density ``1 / J(p(x))``.
    """
    family = 'cbeta11'
    param_names = ('gamma', 'delta')

    def __init__(self, gamma=0.5, delta=QUADRATIC_DELTA, solver=DEFAULT_SOLVER):
        super().__init__(1.0, 1.0, gamma, delta, solver)

    def _cdf_from_p(self, p):
        return p

    def _quantile(self, q):
        return np.clip(self.coeffs.x_of(q), 0.0, 1.0)

    def _mean(self):
        a, b, c = self.coeffs.a, self.coeffs.b, self.coeffs.c
        return a / 2.0 + b / 3.0 + c / 4.0

    def _variance(self):
        a, b, c = self.coeffs.a, self.coeffs.b, self.coeffs.c
        return (a * a / 12.0 + 4.0 * b * b / 45.0 + 9.0 * c * c / 112.0
                + a * b / 6.0 + b * c / 6.0 + 3.0 * a * c / 20.0)

    def _mode(self):
        coeffs = self.coeffs
        p_m = coeffs.stationary_point
        if p_m is None:
            flat = coeffs.b == 0.0 and coeffs.c == 0.0
            return ModeResult(None, None, ABSENT if flat else BOUNDARY)
        curvature = -6.0 * coeffs.c / coeffs.jacobian(p_m) ** 4
        return ModeResult(float(coeffs.x_of(p_m)), p_m, MODE if coeffs.c > 0.0 else ANTIMODE,
                          curvature=float(curvature))


class SCBeta(_TransformedBeta):
    """SC-beta distribution, density ``C * f_p(p(x))`` without the Jacobian.

        Typical usage example:

        ``d = SCBeta(13.09, 19.30, gamma=0.041, delta=0.682)``

        ``d.norm_c, d.expected_efficiency, d.sample(1000, rng=7)``

    The density keeps the modal structure of the parent beta. ``norm_c`` is
    the normalizing constant ``C``; ``C**-1 = E(J(P))`` under the parent.
    """
    family = 'scbeta'

    def __init__(self, alpha, beta, gamma=0.5, delta=QUADRATIC_DELTA, solver=DEFAULT_SOLVER):
        super().__init__(alpha, beta, gamma, delta, solver)
        a, b, c = self.coeffs.a, self.coeffs.b, self.coeffs.c
        alpha, eta = self.core.alpha, self.core.eta
        self.inverse_norm = a + 2.0 * b * alpha / eta + 3.0 * c * alpha * (alpha + 1.0) / (eta * (eta + 1.0))
        if not self.inverse_norm > 0.0:
            raise InvalidParams(f'normalizing constant is not positive for {self!r}')
        self.norm_c = 1.0 / self.inverse_norm

    @property
    def expected_efficiency(self):
        """float: Acceptance rate of the rejection sampler, ``C**-1 / max J``."""
        return self.inverse_norm / self.coeffs.max_jacobian()

    def _log_density(self, p, jac):
        return self._log_parent(p) + math.log(self.norm_c)

    def _cdf_from_p(self, p):
        a, b, c = self.coeffs.a, self.coeffs.b, self.coeffs.c
        alpha, beta = self.core.alpha, self.core.beta
        r = self.core.moment_ratios(2)
        head = special.betainc(alpha, beta, p)
        # I(alpha + 1) and I(alpha + 2) from one incomplete beta evaluation
        first = inc_beta_step_down(alpha, beta, p, head)
        second = inc_beta_step_down(alpha + 1.0, beta, p, first)
        return self.norm_c * (a * head + 2.0 * b * r[1] * first + 3.0 * c * r[2] * second)

    def cdf_three_term(self, x):
        """The cdf as ``C`` times three incomplete beta ratios.

        Slower than :meth:`cdf`; kept as an independent check on it.
        """
        x_arr = as_unit_array(x)
        p, _ = self._invert(x_arr)
        a, b, c = self.coeffs.a, self.coeffs.b, self.coeffs.c
        alpha, beta = self.core.alpha, self.core.beta
        r = self.core.moment_ratios(2)
        values = self.norm_c * (a * reg_inc_beta(alpha, beta, p)
                                + 2.0 * b * r[1] * reg_inc_beta(alpha + 1.0, beta, p)
                                + 3.0 * c * r[2] * reg_inc_beta(alpha + 2.0, beta, p))
        return _shaped(x, np.clip(values, 0.0, 1.0))

    def _quantile(self, q):
        start = self._beta_quantile_x(q)
        out = np.empty(q.shape)
        for i, (target, x0) in enumerate(zip(q.ravel(), np.ravel(start))):
            if target <= 0.0 or target >= 1.0:
                out.flat[i] = target
            else:
                out.flat[i] = solve_increasing(self.cdf, self.pdf, target, 0.0, 1.0, x0=float(x0))
        return out

    def _moment_weight(self):
        return np.array([self.coeffs.a, 2.0 * self.coeffs.b, 3.0 * self.coeffs.c])

    def _moment_scale(self):
        return self.norm_c

    def _mean(self):
        a, b, c = self.coeffs.a, self.coeffs.b, self.coeffs.c
        alpha, eta = self.core.alpha, self.core.eta
        inner = 5.0 * b * c + (alpha + 4.0) / (eta + 4.0) * 3.0 * c * c
        inner = 4.0 * a * c + 2.0 * b * b + (alpha + 3.0) / (eta + 3.0) * inner
        inner = 3.0 * a * b + (alpha + 2.0) / (eta + 2.0) * inner
        return self.norm_c * alpha / eta * (a * a + (alpha + 1.0) / (eta + 1.0) * inner)

    def _mode(self):
        alpha, beta = self.core.alpha, self.core.beta
        spikes = self._spikes()
        if alpha == 1.0 and beta == 1.0:
            return ModeResult(None, None, ABSENT)
        if (alpha > 1.0 and beta > 1.0) or (alpha < 1.0 and beta < 1.0):
            p_m = (alpha - 1.0) / (alpha + beta - 2.0)
            return ModeResult(float(self.coeffs.x_of(p_m)), p_m, MODE if alpha > 1.0 else ANTIMODE,
                              boundary=spikes)
        return ModeResult(None, None, BOUNDARY, boundary=spikes)

    def sample(self, size=None, rng=None):
        from cubic_beta._sampling import make_rng, sample_rejection
        values, _ = sample_rejection(self, make_rng(rng), size)
        return values


class SQBeta(SCBeta):
    """SC-beta with ``delta = 1/3``, i.e. a quadratic transform."""
    family = 'sqbeta'
    param_names = ('alpha', 'beta', 'gamma')

    def __init__(self, alpha, beta, gamma=0.5, solver=DEFAULT_SOLVER):
        super().__init__(alpha, beta, gamma, QUADRATIC_DELTA, solver)

    def _make_coeffs(self):
        return CubicCoeffs(2.0 * self.shape.gamma, 1.0 - 2.0 * self.shape.gamma, 0.0)


class GenQuad(_Distribution):
    """General quadratic distribution on ``[0, 1]``, density ``a + 2*b*p + 3*c*p**2``.

        Typical usage example:

        ``d = GenQuad(CubicCoeffs(0.5, 0.3, 0.2))``

        ``d = GenQuad.from_shape(gamma=0.2, delta=0.8)``

    The cdf is the cubic ``a*p + b*p**2 + c*p**3``, so the coefficients obey
    the same region as the transform of the other families.
    """
    family = 'genquad'
    param_names = ('gamma', 'delta')

    def __init__(self, coeffs, solver=DEFAULT_SOLVER):
        super().__init__()
        if not validate_monotone(coeffs, strict=False):
            raise InvalidCoeffs(f'{coeffs} do not give a nonnegative density')
        self.coeffs = coeffs
        self.solver = solver

    @classmethod
    def from_shape(cls, gamma=0.5, delta=QUADRATIC_DELTA, solver=DEFAULT_SOLVER):
        return cls(coeffs_from_shape(ShapeParams(gamma, delta)), solver=solver)

    from_params = from_shape

    @property
    def shape(self):
        return shape_from_coeffs(self.coeffs)

    @property
    def gamma(self):
        return self.shape.gamma

    @property
    def delta(self):
        return self.shape.delta

    def log_pdf(self, x):
        x_arr = as_unit_array(x)
        with np.errstate(divide='ignore'):
            values = np.log(np.maximum(self.coeffs.jacobian(x_arr), 0.0))
        return _shaped(x, values)

    def cdf(self, x):
        x_arr = as_unit_array(x)
        return _shaped(x, np.clip(self.coeffs.x_of(x_arr), 0.0, 1.0))

    def quantile(self, q):
        p, _, _ = invert_monotone_poly(self.coeffs, as_unit_array(q, name='q'), self.solver)
        return _shaped(q, p)

    def raw_moment(self, n):
        if int(n) != n or n < 0:
            raise DomainError(f'moment order must be a nonnegative integer, got {n!r}')
        a, b, c = self.coeffs.a, self.coeffs.b, self.coeffs.c
        return a / (n + 1.0) + 2.0 * b / (n + 2.0) + 3.0 * c / (n + 3.0)

    def _mean(self):
        return self.coeffs.a / 2.0 + 2.0 * self.coeffs.b / 3.0 + 3.0 * self.coeffs.c / 4.0

    def _variance(self):
        a, b, c = self.coeffs.a, self.coeffs.b, self.coeffs.c
        return a / 3.0 + b / 2.0 + 3.0 * c / 5.0 - self.mean ** 2

    def mgf(self, t):
        """Moment-generating function ``E(exp(t*P))``.

        Near ``t = 0`` the closed form cancels catastrophically, so a Taylor
        series through ``t**4`` is used there.
        """
        if abs(t) < _MGF_SERIES_CUTOFF:
            return sum(t ** k / math.factorial(k) * self.raw_moment(k) for k in range(5))
        a, b, c = self.coeffs.a, self.coeffs.b, self.coeffs.c
        e, em1 = math.exp(t), math.expm1(t)
        return (a * em1 / t
                + 2.0 * b * (e / t - em1 / t ** 2)
                + 3.0 * c * (e / t - 2.0 * e / t ** 2 + 2.0 * em1 / t ** 3))

    def _mode(self):
        coeffs = self.coeffs
        p_m = coeffs.stationary_point
        if p_m is None:
            flat = coeffs.b == 0.0 and coeffs.c == 0.0
            return ModeResult(None, None, ABSENT if flat else BOUNDARY)
        return ModeResult(p_m, p_m, MODE if coeffs.c < 0.0 else ANTIMODE, curvature=6.0 * coeffs.c)

    def flipped(self):
        return GenQuad(self.coeffs.flipped(), solver=self.solver)

    def sample(self, size=None, rng=None, method='inversion'):
        from cubic_beta._sampling import make_rng, sample_genquad
        return sample_genquad(self, make_rng(rng), size, method=method)

    def __repr__(self):
        return f'GenQuad(a={self.coeffs.a:.6g}, b={self.coeffs.b:.6g}, c={self.coeffs.c:.6g})'


FAMILIES = {
    'beta': Beta,
    'qbeta': QBeta,
    'sqbeta': SQBeta,
    'cbeta': CBeta,
    'scbeta': SCBeta,
    'cbeta11': CBeta11,
    'genquad': GenQuad,
}


def make_distribution(family, *params, solver=DEFAULT_SOLVER):
    """Build the descriptor of ``family`` from its parameters in order.

    Raises:
        InvalidParams: For an unknown family or a wrong parameter count.
    """
    try:
        cls = FAMILIES[family]
    except KeyError:
        raise InvalidParams(f'unknown family {family!r}, expected one of {", ".join(FAMILIES)}') from None
    if len(params) != len(cls.param_names):
        raise InvalidParams(f'{family} takes {len(cls.param_names)} parameters '
                            f'({", ".join(cls.param_names)}), got {len(params)}')
    return cls.from_params(*params, solver=solver)
