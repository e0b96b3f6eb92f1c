"""
Parameter Module

The label-symmetric shape parameters ``(gamma, delta)``, the monotone cubic
coefficients ``(a, b, c)`` of ``x(p) = a*p + b*p**2 + c*p**3`` they map to, and
the ``(alpha, beta)`` pair of the parent beta distribution.
"""
import math
from dataclasses import dataclass, field

import numpy as np
from scipy import special

from cubic_beta._exceptions import InvalidCoeffs, InvalidParams

SUM_TOLERANCE = 1e-12

# delta at which c = 0, i.e. the quadratic subfamily
QUADRATIC_DELTA = 1.0 / 3.0


@dataclass(frozen=True)
class ShapeParams:
    """Shape parameters ``gamma`` and ``delta``, both in ``[0, 1]``.

    ``delta = (c + 2) / 6`` is invariant under ``X -> 1 - X`` while
    ``gamma -> 1 - gamma``. ``delta = 1/3`` gives the quadratic subfamily and
    ``gamma = 1/2, delta = 1/3`` the identity transform.
    """
    gamma: float = 0.5
    delta: float = QUADRATIC_DELTA

    def __post_init__(self):
        for name in ('gamma', 'delta'):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise InvalidParams(f'{name} must lie in [0, 1], got {value!r}')

    @property
    def is_quadratic(self):
        return abs(6.0 * self.delta - 2.0) < 1e-14


@dataclass(frozen=True)
class CubicCoeffs:
    """Coefficients of the transform ``x(p) = a*p + b*p**2 + c*p**3``.

    Also read as pdf coefficients ``a + 2*b*p + 3*c*p**2`` by the general
    quadratic distribution. No validation happens on construction, see
    :func:`validate_monotone`.
    """
    a: float
    b: float
    c: float

    def x_of(self, p):
        """Forward transform ``x(p)`` (Horner form)."""
        return p * (self.a + p * (self.b + p * self.c))

    def jacobian(self, p):
        """``J(p) = dx/dp = a + 2*b*p + 3*c*p**2``."""
        return self.a + p * (2.0 * self.b + 3.0 * self.c * p)

    def jacobian_slope(self, p):
        """``J'(p) = 2*b + 6*c*p``."""
        return 2.0 * self.b + 6.0 * self.c * p

    @property
    def stationary_point(self):
        """Root ``-b/(3c)`` of ``J'`` when it lies strictly inside ``(0, 1)``,
        else `None`."""
        if self.c == 0.0:
            return None
        p = -self.b / (3.0 * self.c)
        return p if 0.0 < p < 1.0 else None

    def _jacobian_candidates(self):
        values = [self.a, self.a + 2.0 * self.b + 3.0 * self.c]
        if self.stationary_point is not None:
            values.append(float(self.jacobian(self.stationary_point)))
        return values

    def max_jacobian(self):
        """Maximum of ``J`` over ``[0, 1]`` from the endpoints and the
        stationary point."""
        return max(self._jacobian_candidates())

    def min_jacobian(self):
        """Minimum of ``J`` over ``[0, 1]``."""
        return min(self._jacobian_candidates())

    def flipped(self):
        """Coefficients of ``1 - x`` written in powers of ``1 - p``."""
        a = 2.0 + self.c - self.a
        return CubicCoeffs(a=a, b=1.0 - a - self.c, c=self.c)

    def as_array(self):
        """Power-series coefficients ``[0, a, b, c]`` of ``x(p)``."""
        return np.array([0.0, self.a, self.b, self.c])


IDENTITY = CubicCoeffs(1.0, 0.0, 0.0)


@dataclass(frozen=True)
class BetaCore:
    """Parameters of the parent ``Beta(alpha, beta)`` distribution.

    ``eta = alpha + beta`` and the log beta function are cached on
    construction.
    """
    alpha: float
    beta: float
    eta: float = field(init=False, repr=False)
    log_beta: float = field(init=False, repr=False)

    def __post_init__(self):
        if not (self.alpha > 0.0 and self.beta > 0.0):
            raise InvalidParams(f'alpha and beta must be positive, got ({self.alpha!r}, {self.beta!r})')
        if not (math.isfinite(self.alpha) and math.isfinite(self.beta)):
            raise InvalidParams('alpha and beta must be finite')
        object.__setattr__(self, 'eta', self.alpha + self.beta)
        object.__setattr__(self, 'log_beta', float(special.betaln(self.alpha, self.beta)))

    def moment_ratios(self, n):
        """``E(P**m) = (alpha)_m / (eta)_m`` for ``m = 0..n``.

        Returns:
            numpy.ndarray: Array of length ``n + 1``.
        """
        m = np.arange(n)
        ratios = np.ones(n + 1)
        ratios[1:] = np.cumprod((self.alpha + m) / (self.eta + m))
        return ratios

    def flipped(self):
        return BetaCore(self.beta, self.alpha)


def coeffs_from_shape(s):
    """Convert shape parameters to transform coefficients.

    ``c = 6*delta - 2``; for ``delta < 1/2`` ``a = (c + 2)*gamma``, otherwise
    ``a = (gamma - 1/2)*sqrt(3c(4 - c)) + 1 + c/2``; ``b = 1 - a - c``.

    Args:
        s (ShapeParams): Shape parameters.

    Returns:
        CubicCoeffs: The coefficients. Boundary ``gamma`` with ``delta <= 1/2``
        gives ``a = 0`` or ``a = c + 2``, where ``J`` vanishes at an endpoint.
    """
    c = 6.0 * s.delta - 2.0
    if abs(c) < 1e-14:
        c = 0.0
    if s.delta < 0.5:
        a = (c + 2.0) * s.gamma
    else:
        a = (s.gamma - 0.5) * math.sqrt(max(3.0 * c * (4.0 - c), 0.0)) + 1.0 + 0.5 * c
    return CubicCoeffs(a=a, b=1.0 - a - c, c=c)


def shape_from_coeffs(coeffs):
    """Inverse of :func:`coeffs_from_shape`.

    Raises:
        InvalidCoeffs: If the coefficients lie outside the (closed) monotone
        region.
    """
    if not validate_monotone(coeffs, strict=False):
        raise InvalidCoeffs(f'coefficients {coeffs} do not give a monotone transform')
    a, c = coeffs.a, coeffs.c
    delta = (c + 2.0) / 6.0
    if c < 1.0:
        gamma = a / (c + 2.0) if c > -2.0 else 0.5
    else:
        root = math.sqrt(max(3.0 * c * (4.0 - c), 0.0))
        gamma = (a - (1.0 + 0.5 * c)) / root + 0.5 if root > 0.0 else 0.5
    return ShapeParams(gamma=min(max(gamma, 0.0), 1.0), delta=min(max(delta, 0.0), 1.0))


def flip(s):
    """Shape parameters of ``1 - X``: ``(1 - gamma, delta)``."""
    return ShapeParams(gamma=1.0 - s.gamma, delta=s.delta)


def _a_limits(c):
    if c <= 1.0:
        return 0.0, c + 2.0
    half_root = 0.5 * math.sqrt(max(3.0 * c * (4.0 - c), 0.0))
    return 1.0 + 0.5 * c - half_root, 1.0 + 0.5 * c + half_root


def validate_monotone(coeffs, strict=True):
    """Check ``J(p) > 0`` on ``[0, 1]`` by the region test on ``(c, a)``.

    Args:
        coeffs (CubicCoeffs): Coefficients to test.

        strict (bool, optional): With `False` the closed region is accepted,
            i.e. ``J`` may vanish at isolated points (degenerate boundary).
            (Default is `True`)

    Returns:
        bool: Whether the coefficients satisfy ``a + b + c = 1``,
        ``-2 <= c <= 4`` and the ``a`` range for their ``c``.
    """
    a, b, c = coeffs.a, coeffs.b, coeffs.c
    if not all(math.isfinite(v) for v in (a, b, c)):
        return False
    if abs(a + b + c - 1.0) > SUM_TOLERANCE:
        return False
    if not -2.0 <= c <= 4.0:
        return False
    lo, hi = _a_limits(c)
    if strict:
        return lo < a < hi
    slack = 1e-12
    return lo - slack <= a <= hi + slack
