"""
It's the interface module of the package. Developers will start
interacting with the library using the `CubicBeta` Class object via the
different functions provided in it.
"""
import logging

from cubic_beta._dist import Beta, CBeta, CBeta11, GenQuad, QBeta, SCBeta, SQBeta, make_distribution
from cubic_beta._fit import (LADDER, Dataset, FitConfig, MeanRegressionParams, ModalRegressionParams,
                             fit_ladder, fit_mle, lr_test)
from cubic_beta._numerics import DEFAULT_SOLVER
from cubic_beta._sampling import make_rng, sample_genquad, sample_rejection

logger = logging.getLogger(__name__)


class CubicBeta:
    """Main Class to build, sample and fit the transformed-beta families

        Typical usage example:

        ``from cubic_beta import CubicBeta``

        ``cb = CubicBeta(seed=2024)``

    Args:
        seed (int, optional): Seed of the random stream used by `sample`.
            Identical seeds replay identical streams. (Default is `None`, a
            fresh stream)

        solver (RootSolveConfig, optional): Settings of the Newton-Raphson
            inversion of the cubic transform, shared by every descriptor
            built here.

        fit_config (FitConfig, optional): Settings of the maximum-likelihood
            fits.

        max_workers (int, optional): Number of threads used to fit families
            of the same ladder rung concurrently. (Default is 4)

        fits (int, optional): It's an integer value for keeping track of all
            the families fitted by the object. Initially, it is set to 0. At
            the end of a program, you can see the number of fits like this:

            ``print(cb.fits)``

    Returns:
        CubicBeta: A `CubicBeta` Class Object. It can be used to access all
        the other functions such as: `cbeta`, `scbeta`, `sample`, `fit`,
        `fit_ladder`, etc ...

    Note:
        Descriptors are immutable and can be shared between threads; the
        random stream is not, so use one `CubicBeta` object per thread when
        sampling concurrently.
    """
    def __init__(self, seed=None, solver=DEFAULT_SOLVER, fit_config=None, max_workers=4, fits=0):
        self.seed = seed
        self.rng = make_rng(seed)
        self.solver = solver
        self.fit_config = fit_config or FitConfig(solver=solver)
        self.max_workers = max_workers
        self.fits = fits
        self.rejection_stats = None

    def beta(self, alpha, beta):
        """For getting the `Beta` descriptor

            Typical usage example:

            ``d = cb.beta(4.36, 18.67)``

        Args:
            alpha (float): First shape, positive.

            beta (float): Second shape, positive.

        Returns:
            Beta: The beta distribution, bottom rung of the model ladder.
        """
        return Beta(alpha, beta, solver=self.solver)

    def qbeta(self, alpha, beta, gamma=0.5):
        """For getting the Q-beta descriptor

        Args:
            alpha (float): First parent shape.

            beta (float): Second parent shape.

            gamma (float, optional): Shape in ``[0, 1]``; ``1/2`` gives the
                beta distribution. (Default is 0.5)

        Returns:
            QBeta: Distribution of ``2*gamma*P + (1 - 2*gamma)*P**2``.
        """
        return QBeta(alpha, beta, gamma, solver=self.solver)

    def cbeta(self, alpha, beta, gamma=0.5, delta=1.0 / 3.0):
        """For getting the C-beta descriptor

            Typical usage example:

            ``d = cb.cbeta(2.61, 10.95, gamma=0.354, delta=0.637)``

            ``d.pdf(0.2), d.cdf(0.2), d.quantile(0.5), d.mean, d.mode``

        Args:
            alpha (float): First parent shape.

            beta (float): Second parent shape.

            gamma (float, optional): Label-symmetric shape in ``[0, 1]``.
                (Default is 0.5)

            delta (float, optional): Cubic shape in ``[0, 1]``; ``1/3`` gives
                Q-beta. (Default is 1/3)

        Returns:
            CBeta: Distribution of ``a*P + b*P**2 + c*P**3`` for
            ``P ~ Beta(alpha, beta)``.
        """
        return CBeta(alpha, beta, gamma, delta, solver=self.solver)

    def sqbeta(self, alpha, beta, gamma=0.5):
        """For getting the SQ-beta descriptor (SC-beta with ``delta = 1/3``)"""
        return SQBeta(alpha, beta, gamma, solver=self.solver)

    def scbeta(self, alpha, beta, gamma=0.5, delta=1.0 / 3.0):
        """For getting the SC-beta descriptor

        Args:
            alpha (float): First parent shape.

            beta (float): Second parent shape.

            gamma (float, optional): Label-symmetric shape. (Default is 0.5)

            delta (float, optional): Cubic shape. (Default is 1/3)

        Returns:
            SCBeta: The Jacobian-less family, whose density is the parent
            beta density at ``p(x)`` times a constant.
        """
        return SCBeta(alpha, beta, gamma, delta, solver=self.solver)

    def cbeta11(self, gamma=0.5, delta=1.0 / 3.0):
        """For getting the C-beta descriptor with a uniform parent"""
        return CBeta11(gamma, delta, solver=self.solver)

    def genquad(self, gamma=0.5, delta=1.0 / 3.0, coeffs=None):
        """For getting the general quadratic descriptor

        Args:
            gamma (float, optional): Shape parameter. (Default is 0.5)

            delta (float, optional): Shape parameter. (Default is 1/3)

            coeffs (CubicCoeffs, optional): Density coefficients
                ``(a, b, c)``; when given, ``gamma`` and ``delta`` are
                ignored.

        Returns:
            GenQuad: The distribution with density ``a + 2*b*p + 3*c*p**2``.
        """
        if coeffs is not None:
            return GenQuad(coeffs, solver=self.solver)
        return GenQuad.from_shape(gamma, delta, solver=self.solver)

    def distribution(self, family, *params):
        """For getting any descriptor by its family tag

            Typical usage example:

            ``d = cb.distribution('scbeta', 13.09, 19.30, 0.041, 0.682)``

        Args:
            family (str): One of ``beta``, ``qbeta``, ``sqbeta``, ``cbeta``,
                ``scbeta``, ``cbeta11`` or ``genquad``.

            *params (float): The family's parameters in order.

        Returns:
            The descriptor.
        """
        return make_distribution(family, *params, solver=self.solver)

    def dataset(self, values, interval=(0.0, 1.0), name='', nudge=False):
        """For getting a `Dataset` rescaled from ``interval`` to ``(0, 1)``

        Args:
            values (array_like): Raw observations.

            interval (tuple, optional): ``(lo, hi)`` of the raw scale.
                (Default is ``(0, 1)``)

            name (str, optional): Label used in reports.

            nudge (bool, optional): Move observations on the interval ends
                inward instead of failing. (Default is `False`)

        Returns:
            Dataset: The rescaled observations.
        """
        return Dataset.from_raw(values, interval=interval, name=name, nudge=nudge)

    def sample(self, dist, n=None, method='inversion'):
        """For drawing random variates from any descriptor

            Typical usage example:

            ``values = cb.sample(cb.scbeta(2.63, 9.67, 0.339, 0.728), n=1000)``

            ``print(cb.rejection_stats.efficiency)``

        Args:
            dist: A descriptor built by this object (or directly).

            n (int, optional): Number of variates; a single float when
                `None`.

            method (str, optional): ``'inversion'`` or ``'rejection'``, only
                used by the general quadratic. (Default is ``'inversion'``)

        Returns:
            float or numpy.ndarray: The variates.

        Note:
            SQ/SC-beta use rejection from the parent beta; the counts of the
            last such draw are kept in ``rejection_stats``.
        """
        if isinstance(dist, SCBeta):
            values, self.rejection_stats = sample_rejection(dist, self.rng, n)
            logger.debug('%s sampler accepted %d of %d proposals (efficiency %.4f)', dist.family,
                        self.rejection_stats.accepted, self.rejection_stats.proposed,
                        self.rejection_stats.efficiency)
            return values
        if isinstance(dist, GenQuad):
            return sample_genquad(dist, self.rng, n, method=method)
        return dist.sample(n, rng=self.rng)

    def fit(self, data, family='cbeta'):
        """For fitting one family by maximum likelihood

        Parent rungs of the ladder are fitted first to start the optimizer.

        Args:
            data (Dataset or array_like): Observations in ``(0, 1)``.

            family (str, optional): One of ``beta``, ``qbeta``, ``sqbeta``,
                ``cbeta``, ``scbeta``. (Default is ``'cbeta'``)

        Returns:
            FitResult: Fitted parameters, ``-loglik`` and diagnostics.
        """
        result = fit_mle(family, data, self.fit_config)
        self.fits += 1
        return result

    def fit_ladder(self, data, families=LADDER):
        """For fitting several families, each rung started from the one below

        Families of the same rung are fitted concurrently with
        ``max_workers`` threads.

        Args:
            data (Dataset or array_like): Observations in ``(0, 1)``.

            families (list[str], optional): Families to fit. (Default is all
                five ladder families)

        Returns:
            dict: ``family -> FitResult`` in ladder order, parent rungs
            included.
        """
        results = fit_ladder(data, families, self.fit_config, max_workers=self.max_workers)
        self.fits += len(results)
        return results

    def lr_test(self, nested, parent, df=None):
        """For the likelihood-ratio test of ``nested`` against ``parent``

        Returns:
            tuple: ``(statistic, p_value)``.
        """
        return lr_test(nested, parent, df=df, slack=self.fit_config.regression_slack)

    def mean_regression(self, mu, eta, gamma=0.5, delta=1.0 / 3.0, family='cbeta'):
        """For getting the descriptor with mean ``mu`` and ``alpha + beta = eta``"""
        return MeanRegressionParams(mu, eta, gamma, delta).to_distribution(family, solver=self.solver)

    def modal_regression(self, x_m, eta, gamma=0.5, delta=1.0 / 3.0, family='cbeta'):
        """For getting the descriptor with mode ``x_m`` and ``alpha + beta = eta``"""
        return ModalRegressionParams(x_m, eta, gamma, delta).to_distribution(family, solver=self.solver)
