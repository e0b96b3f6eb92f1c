from cubic_beta.cubicbeta import CubicBeta
from cubic_beta._dist import (FAMILIES, Beta, CBeta, CBeta11, GenQuad, ModeResult, QBeta, SCBeta, SQBeta,
                              make_distribution)
from cubic_beta._exceptions import (BoundaryValueError, CubicBetaError, DataError, DomainError, InvalidCoeffs,
                                    InvalidParams, NegativeStatistic, NonConvergence, NoSolution, ParseError,
                                    ToleranceNotMet, UsageError)
from cubic_beta._fit import (LADDER, Dataset, FitConfig, FitResult, MeanRegressionParams, ModalRegressionParams,
                             alpha_from_mean, alpha_from_mode, fit_ladder, fit_mle, lr_test, neg_loglik)
from cubic_beta._numerics import (DEFAULT_SOLVER, RootSolveConfig, inc_beta_step_down, invert_monotone_poly,
                                  log_beta, quadrature, reg_inc_beta, solve_increasing, solve_monotone_poly)
from cubic_beta._params import (BetaCore, CubicCoeffs, ShapeParams, coeffs_from_shape, flip, shape_from_coeffs,
                                validate_monotone)
from cubic_beta._sampling import (RejectionStats, make_rng, sample_beta, sample_genquad, sample_rejection,
                                  sample_transform)

# To prevent importing other modules while `from cubic_beta import *`
__all__ = [
    'CubicBeta',
    'Beta', 'QBeta', 'CBeta', 'SQBeta', 'SCBeta', 'CBeta11', 'GenQuad', 'ModeResult', 'FAMILIES',
    'make_distribution',
    'ShapeParams', 'CubicCoeffs', 'BetaCore', 'coeffs_from_shape', 'shape_from_coeffs', 'flip', 'validate_monotone',
    'RootSolveConfig', 'DEFAULT_SOLVER', 'invert_monotone_poly', 'solve_monotone_poly', 'solve_increasing',
    'reg_inc_beta', 'inc_beta_step_down', 'log_beta', 'quadrature',
    'RejectionStats', 'make_rng', 'sample_beta', 'sample_transform', 'sample_rejection', 'sample_genquad',
    'LADDER', 'Dataset', 'FitConfig', 'FitResult', 'MeanRegressionParams', 'ModalRegressionParams',
    'neg_loglik', 'fit_mle', 'fit_ladder', 'lr_test', 'alpha_from_mean', 'alpha_from_mode',
    'CubicBetaError', 'DomainError', 'InvalidParams', 'InvalidCoeffs', 'NonConvergence', 'ToleranceNotMet',
    'NoSolution', 'NegativeStatistic', 'DataError', 'ParseError', 'BoundaryValueError', 'UsageError',
]

__version__ = '0.1.0'
