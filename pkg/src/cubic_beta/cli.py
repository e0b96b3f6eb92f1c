"""
Command line interface of the package.

    Typical usage example:

    ``cubic-beta fit bodyfat.csv --column 1 --interval 0 100``

    ``cubic-beta sample --family scbeta --alpha 13.09 --beta 19.30 --gamma 0.041 --delta 0.682 --n 1000 --seed 7``

    ``cubic-beta pdf-grid --family cbeta --alpha 2.61 --beta 10.95 --gamma 0.354 --delta 0.637``

Reports go to standard output, diagnostics to standard error. Exit codes:
0 success, 1 usage error, 2 data error, 3 a fit did not converge.
"""
import argparse
import logging
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Tuple

import numpy as np
import pandas as pd
from ujson import dumps

from cubic_beta import __version__
from cubic_beta._dist import FAMILIES
from cubic_beta._exceptions import (CubicBetaError, DataError, DomainError, InvalidParams, NegativeStatistic,
                                    NonConvergence, ParseError, UsageError)
from cubic_beta._fit import LADDER, PARENT, FitConfig
from cubic_beta.cubicbeta import CubicBeta

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_CONVERGENCE = 3

OUTPUT_FORMATS = ('text', 'tsv', 'json')
SHAPE_DEFAULTS = {'gamma': 0.5, 'delta': 1.0 / 3.0}
# grid ends are moved inside by this much where the density diverges
GRID_OFFSET = 1e-9

JACOBIAN_NOTE = ('-loglik is on the (0, 1) scale; add log_jacobian = n*log(hi - lo) '
                 'for the -loglik of the raw data')


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass(frozen=True)
class RunConfig:
    """Validated settings of one command line run.

    Raises:
        UsageError: If the settings cannot be run.
    """
    command: str
    input_path: Optional[str] = None
    column: str = '0'
    header: bool = True
    interval: Tuple[float, float] = (0.0, 1.0)
    families: Tuple[str, ...] = LADDER
    nudge: bool = False
    max_iterations: int = FitConfig.max_iterations
    family: Optional[str] = None
    shape: dict = field(default_factory=dict)
    seed: Optional[int] = None
    n: int = 1
    method: str = 'inversion'
    grid_points: int = 101
    output_format: str = 'text'

    def __post_init__(self):
        if self.command == 'fit':
            if not self.input_path:
                raise UsageError('fit needs an input file')
            if not self.families:
                raise UsageError('no families to fit')
            unknown = [f for f in self.families if f not in LADDER]
            if unknown:
                raise UsageError(f'cannot fit {", ".join(unknown)}')
            if not self.interval[0] < self.interval[1]:
                raise UsageError(f'interval must satisfy LO < HI, got {self.interval[0]:g} {self.interval[1]:g}')
            if self.max_iterations < 1:
                raise UsageError('--max-iterations must be at least 1')
        elif self.command in ('sample', 'pdf-grid', 'cdf-grid'):
            if self.family not in FAMILIES:
                raise UsageError(f'unknown family {self.family!r}')
        else:
            raise UsageError(f'unknown command {self.command!r}')
        if self.command == 'sample' and self.n < 1:
            raise UsageError(f'--n must be at least 1, got {self.n}')
        if self.command.endswith('grid') and self.grid_points < 2:
            raise UsageError(f'--grid-points must be at least 2, got {self.grid_points}')
        if self.output_format not in OUTPUT_FORMATS:
            raise UsageError(f'unknown output format {self.output_format!r}')

    @classmethod
    def from_args(cls, args):
        values = vars(args)
        shape = {name: values[name] for name in ('alpha', 'beta', 'gamma', 'delta')
                 if values.get(name) is not None}
        settings = {key: values[key] for key in cls.__dataclass_fields__ if key in values and key != 'shape'}
        if 'families' in settings:
            settings['families'] = tuple(dict.fromkeys(settings['families']))
        if 'interval' in settings:
            settings['interval'] = tuple(settings['interval'])
        return cls(shape=shape, **settings)

    def distribution_params(self):
        """Parameters of ``family`` in order; ``gamma``, ``delta`` default to the identity shape."""
        params = []
        for name in FAMILIES[self.family].param_names:
            value = self.shape.get(name, SHAPE_DEFAULTS.get(name))
            if value is None:
                raise UsageError(f'--{name} is required for {self.family}')
            params.append(value)
        return params


def build_parser():
    parser = _ArgumentParser(prog='cubic-beta',
                             description='Fit, sample and tabulate the cubic-transformed beta families.')
    parser.add_argument('--version', action='version', version=f'%(prog)s {__version__}')
    parser.add_argument('--log-level', default='INFO', choices=('DEBUG', 'INFO', 'WARNING', 'ERROR'),
                        help='Diagnostics written to standard error (default: INFO)')
    commands = parser.add_subparsers(dest='command', metavar='COMMAND')
    commands.required = True

    fit = commands.add_parser('fit', help='Fit the model ladder to one column of a CSV file')
    fit.add_argument('input_path', help='Comma-separated input file')
    fit.add_argument('--column', default='0', help='Column name or 0-based index (default: 0)')
    fit.add_argument('--no-header', dest='header', action='store_false', help='The file has no header line')
    fit.add_argument('--interval', nargs=2, type=float, metavar=('LO', 'HI'), default=(0.0, 1.0),
                     help='Interval the data live on, rescaled to (0, 1) (default: 0 1)')
    fit.add_argument('--families', nargs='*', choices=LADDER, default=list(LADDER),
                     help='Families to fit (default: all)')
    fit.add_argument('--nudge', action='store_true',
                     help='Move observations on the interval ends inward by 1/(2n)')
    fit.add_argument('--max-iterations', type=int, default=FitConfig.max_iterations,
                     help='Simplex iterations per stage')
    fit.add_argument('--format', dest='output_format', choices=OUTPUT_FORMATS, default='text')

    for name, help_text in (('sample', 'Draw random variates'),
                            ('pdf-grid', 'Tabulate x, pdf, cdf on an equally spaced grid'),
                            ('cdf-grid', 'Tabulate x, cdf, pdf on an equally spaced grid')):
        sub = commands.add_parser(name, help=help_text)
        sub.add_argument('--family', required=True, choices=list(FAMILIES))
        for shape in ('alpha', 'beta', 'gamma', 'delta'):
            sub.add_argument(f'--{shape}', type=float)
        if name == 'sample':
            sub.add_argument('--n', type=int, required=True, help='Number of variates')
            sub.add_argument('--seed', type=int, help='Seed of the random stream')
            sub.add_argument('--method', choices=('inversion', 'rejection'), default='inversion',
                             help='General quadratic sampler (default: inversion)')
        else:
            sub.add_argument('--grid-points', type=int, default=101)
            sub.add_argument('--format', dest='output_format', choices=OUTPUT_FORMATS, default='tsv')
    return parser


def load_column(path, column='0', header=True):
    """Read one numeric column of a CSV file.

    Every cell is read as text and converted, so a cell that is not a number
    stops the run with its line number instead of being dropped.

    Raises:
        ParseError: For a cell that is not a finite number.
        DataError: For a missing column or an empty file.
    """
    try:
        frame = pd.read_csv(path, header=0 if header else None, dtype=str, keep_default_na=False,
                            skip_blank_lines=False, skipinitialspace=True)
    except pd.errors.EmptyDataError:
        raise DataError(f'{path} is empty') from None
    except pd.errors.ParserError as e:
        raise ParseError(f'{path}: {e}') from None

    if header and column in frame.columns:
        series = frame[column]
    else:
        try:
            index = int(column)
        except ValueError:
            raise DataError(f'{path} has no column {column!r}') from None
        if not 0 <= index < frame.shape[1]:
            raise DataError(f'{path} has {frame.shape[1]} columns, no column {index}')
        series = frame.iloc[:, index]
    if series.empty:
        raise DataError(f'{path} has no data rows')

    numbers = pd.to_numeric(series.str.strip(), errors='coerce')
    bad = np.flatnonzero(~np.isfinite(numbers.to_numpy(dtype=float)))
    if bad.size:
        line = int(bad[0]) + (2 if header else 1)
        raise ParseError(f'{path}, line {line}: cannot read {series.iloc[bad[0]]!r} as a number', line=line)
    return numbers.to_numpy(dtype=float)


def _finite(value):
    return value if value is not None and math.isfinite(value) else None


def _lr_entry(cubic_beta, nested, parent):
    try:
        statistic, p_value = cubic_beta.lr_test(nested, parent)
    except NegativeStatistic as e:
        logger.warning('%s', e)
        return None
    return {'against': nested.family, 'statistic': statistic, 'df': parent.n_params - nested.n_params,
            'p_value': p_value}


def cmd_fit(config, cubic_beta=None):
    """Fit the requested families and build the report.

    Returns:
        dict: ``dataset`` (name, n, interval, log_jacobian, note), ``fits``
        (one entry per requested family in ladder order, with the fitted
        parameters, ``-loglik``, stage trace and LR tests against the beta
        fit and the parent rung) and ``converged``.
    """
    cubic_beta = cubic_beta or CubicBeta(fit_config=FitConfig(max_iterations=config.max_iterations))
    values = load_column(config.input_path, config.column, config.header)
    data = cubic_beta.dataset(values, interval=config.interval, name=Path(config.input_path).stem,
                              nudge=config.nudge)
    logger.info('fitting %s to %d observations of %s', ', '.join(config.families), data.n, data.name)
    results = cubic_beta.fit_ladder(data, config.families)

    fits = []
    for family in LADDER:
        if family not in config.families:
            continue
        result = results[family]
        entry = result.as_dict()
        entry['neg_loglik'] = _finite(entry['neg_loglik'])
        entry['stage_trace'] = [{'stage': s['stage'], 'neg_loglik': _finite(s['neg_loglik'])}
                                for s in entry['stage_trace']]
        entry['lr_vs_beta'] = None if family == 'beta' else _lr_entry(cubic_beta, results['beta'], result)
        parent = PARENT.get(family)
        entry['lr_vs_parent'] = None if parent in (None, 'beta') else _lr_entry(cubic_beta, results[parent], result)
        fits.append(entry)

    return {
        'dataset': {'name': data.name, 'n': data.n, 'interval': list(data.source_interval),
                    'log_jacobian': data.log_jacobian, 'note': JACOBIAN_NOTE},
        'fits': fits,
        'converged': all(results[f].converged for f in config.families),
    }


def _fit_table(report):
    rows = []
    for entry in report['fits']:
        lr = entry['lr_vs_beta'] or {}
        rows.append({'family': entry['family'], '-loglik': entry['neg_loglik'],
                     'alpha': entry['alpha'], 'beta': entry['beta'],
                     'gamma': entry.get('gamma'), 'delta': entry.get('delta'),
                     'LR_vs_beta': lr.get('statistic'), 'df': lr.get('df'), 'p_value': lr.get('p_value'),
                     'converged': entry['converged']})
    return pd.DataFrame(rows)


def format_report(report, output_format='text'):
    """Render a :func:`cmd_fit` report as aligned text, TSV or JSON."""
    if output_format == 'json':
        return dumps(report, indent=2) + '\n'
    dataset = report['dataset']
    lines = [f"# dataset {dataset['name']}: n={dataset['n']} interval={dataset['interval']} "
             f"log_jacobian={dataset['log_jacobian']:.6f}",
             f"# {dataset['note']}"]
    table = _fit_table(report)
    if output_format == 'tsv':
        body = table.to_csv(sep='\t', index=False, float_format='%.6g', na_rep='')
    else:
        body = table.to_string(index=False, float_format=lambda v: f'{v:.4f}', na_rep='') + '\n'
    for entry in report['fits']:
        trace = ', '.join(f"{s['stage']}={s['neg_loglik']:.4f}" for s in entry['stage_trace']
                          if s['neg_loglik'] is not None)
        body += f"# {entry['family']} stages: {trace}\n"
    return '\n'.join(lines) + '\n' + body


def cmd_sample(config, cubic_beta=None):
    """Draw ``config.n`` variates.

    Returns:
        tuple: ``(values, stats)``, with the `RejectionStats` of SQ/SC-beta
        runs and `None` otherwise.
    """
    cubic_beta = cubic_beta or CubicBeta(seed=config.seed)
    dist = cubic_beta.distribution(config.family, *config.distribution_params())
    values = cubic_beta.sample(dist, n=config.n, method=config.method)
    return np.asarray(values), cubic_beta.rejection_stats


def cmd_grid(config, cubic_beta=None):
    """Tabulate the density and distribution function on ``[0, 1]``.

    Ends where the density diverges are moved inside by ``GRID_OFFSET``.

    Returns:
        pandas.DataFrame: Columns ``x, pdf, cdf`` (``x, cdf, pdf`` for
        ``cdf-grid``).
    """
    cubic_beta = cubic_beta or CubicBeta()
    dist = cubic_beta.distribution(config.family, *config.distribution_params())
    x = np.linspace(0.0, 1.0, config.grid_points)
    ends = dist.pdf(x[[0, -1]])
    if not np.isfinite(ends[0]):
        x[0] = GRID_OFFSET
    if not np.isfinite(ends[1]):
        x[-1] = 1.0 - GRID_OFFSET
    pdf = dist.pdf(x)
    cdf = np.maximum.accumulate(dist.cdf(x))
    columns = ('x', 'pdf', 'cdf') if config.command == 'pdf-grid' else ('x', 'cdf', 'pdf')
    return pd.DataFrame({'x': x, 'pdf': pdf, 'cdf': cdf}, columns=list(columns))


def _format_frame(frame, output_format):
    if output_format == 'json':
        return dumps(frame.to_dict(orient='list')) + '\n'
    if output_format == 'tsv':
        return frame.to_csv(sep='\t', index=False, float_format='%.12g')
    return frame.to_string(index=False) + '\n'


def _configure_logging(level):
    package_logger = logging.getLogger('cubic_beta')
    for handler in list(package_logger.handlers):
        package_logger.removeHandler(handler)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter('[%(levelname)s]: %(message)s'))
    package_logger.addHandler(handler)
    package_logger.setLevel(level)
    package_logger.propagate = False


def run(config):
    """Run a validated `RunConfig`, writing results to standard output.

    Returns:
        int: The exit code.
    """
    if config.command == 'fit':
        report = cmd_fit(config)
        sys.stdout.write(format_report(report, config.output_format))
        if not report['converged']:
            logger.error('not every fit converged')
            return EXIT_CONVERGENCE
    elif config.command == 'sample':
        values, stats = cmd_sample(config)
        sys.stdout.write(''.join(f'{v!r}\n' for v in values.tolist()))
        if stats is not None:
            logger.info('rejection stats: proposed=%d accepted=%d efficiency=%.4f',
                        stats.proposed, stats.accepted, stats.efficiency)
    else:
        sys.stdout.write(_format_frame(cmd_grid(config), config.output_format))
    return EXIT_OK


def main(argv=None):
    """Entry point of the ``cubic-beta`` command.

    Returns:
        int: The exit code.
    """
    _configure_logging(logging.INFO)
    try:
        args = build_parser().parse_args(argv)
        _configure_logging(args.log_level)
        config = RunConfig.from_args(args)
        return run(config)
    except (UsageError, InvalidParams, DomainError) as e:
        logger.error('%s', e)
        return EXIT_USAGE
    except (DataError, OSError) as e:
        logger.error('%s', e)
        return EXIT_DATA
    except NonConvergence as e:
        logger.error('%s', e)
        return EXIT_CONVERGENCE
    except CubicBetaError as e:
        logger.error('%s', e)
        return EXIT_DATA


if __name__ == '__main__':
    sys.exit(main())
