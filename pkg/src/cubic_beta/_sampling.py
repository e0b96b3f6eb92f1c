"""
Sampling Module

Random variates for every family: the transform method for the
Jacobian-bearing families, rejection from the parent beta for SQ/SC-beta,
and inversion or rejection for the general quadratic.
"""
import logging
import math
from dataclasses import dataclass

import numpy as np

from cubic_beta._dist import CBeta, CBeta11, GenQuad, SCBeta
from cubic_beta._exceptions import InvalidParams
from cubic_beta._numerics import invert_monotone_poly

logger = logging.getLogger(__name__)

# proposals are drawn in batches of at least this many
_MIN_BATCH = 64


@dataclass
class RejectionStats:
    """Counts of a rejection sampler.

    ``max_ratio`` is the largest acceptance probability argument seen, which
    must never exceed 1.
    """
    proposed: int = 0
    accepted: int = 0
    max_ratio: float = 0.0

    @property
    def efficiency(self):
        return self.accepted / self.proposed if self.proposed else math.nan

    def update(self, proposed, accepted, max_ratio):
        self.proposed += int(proposed)
        self.accepted += int(accepted)
        self.max_ratio = max(self.max_ratio, float(max_ratio))


def make_rng(seed=None):
    """A `numpy.random.Generator` (PCG64); an existing generator passes through."""
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def _count(size):
    return 1 if size is None else int(np.prod(size))


def _shaped(values, size):
    return float(values[0]) if size is None else values.reshape(size)


def sample_beta(core, rng, size=None):
    """Draws from the parent ``Beta(alpha, beta)``."""
    return rng.beta(core.alpha, core.beta, size)


def sample_transform(d, rng, size=None):
    """Transform method: ``X = a*P + b*P**2 + c*P**3``.

    ``P`` is a parent beta draw, or uniform for :class:`CBeta11`.

    Raises:
        InvalidParams: For a family without a transform sampler.
    """
    if isinstance(d, CBeta11):
        p = rng.random(size)
    elif isinstance(d, CBeta):
        p = sample_beta(d.core, rng, size)
    else:
        raise InvalidParams(f'{d.family} has no transform sampler')
    x = d.coeffs.x_of(p)
    return float(x) if size is None else x


def _accept_reject(propose, weight, weight_max, n, rng, stats, expected):
    kept, have = [], 0
    while have < n:
        batch = max(_MIN_BATCH, int(math.ceil(1.2 * (n - have) / expected)))
        candidates = propose(batch)
        ratio = weight(candidates) / weight_max
        accept = rng.random(batch) < ratio
        stats.update(batch, np.count_nonzero(accept), np.max(ratio))
        kept.append(candidates[accept])
        have += int(np.count_nonzero(accept))
    return np.concatenate(kept)[:n]


def sample_rejection(d, rng, size=None):
    """Rejection sampler for SQ/SC-beta.

    Proposes ``P ~ Beta(alpha, beta)`` and accepts it with probability
    ``J(P) / max J``, returning ``x(P)``. The acceptance rate is
    ``d.expected_efficiency``.

        Typical usage example:

        ``values, stats = sample_rejection(SCBeta(2, 5, 0.3, 0.7), make_rng(1), 1000)``

    Returns:
        tuple: ``(values, stats)`` with a float for ``size=None``, else an
        array, and the :class:`RejectionStats` of the run.

    Raises:
        InvalidParams: If ``d`` is not an SQ/SC-beta descriptor.
    """
    if not isinstance(d, SCBeta):
        raise InvalidParams(f'{d.family} has no rejection sampler')
    stats = RejectionStats()
    p = _accept_reject(lambda k: sample_beta(d.core, rng, k), d.coeffs.jacobian, d.coeffs.max_jacobian(),
                       _count(size), rng, stats, d.expected_efficiency)
    assert stats.max_ratio <= 1.0 + 1e-12, 'acceptance probability above one'
    logger.debug('%s rejection sampler: %d of %d accepted (efficiency %.4f)',
                 d.family, stats.accepted, stats.proposed, stats.efficiency)
    return _shaped(d.coeffs.x_of(p), size), stats


def sample_genquad(d, rng, size=None, method='inversion'):
    """Draws from :class:`GenQuad`.

    ``'inversion'`` solves ``a*P + b*P**2 + c*P**3 = U`` by clamped Newton;
    ``'rejection'`` accepts ``U`` with probability ``f(U) / max f``.
    """
    if not isinstance(d, GenQuad):
        raise InvalidParams(f'{d.family} is not the general quadratic')
    n = _count(size)
    if method == 'inversion':
        p, _, _ = invert_monotone_poly(d.coeffs, rng.random(n), d.solver)
    elif method == 'rejection':
        f_max = d.coeffs.max_jacobian()
        p = _accept_reject(rng.random, d.coeffs.jacobian, f_max, n, rng, RejectionStats(), 1.0 / f_max)
    else:
        raise InvalidParams(f"method must be 'inversion' or 'rejection', got {method!r}")
    return _shaped(p, size)
