import time

from ..baseexperiment import BaseExperiment
from ..cache import ZeroLedger
from ..hpnum import format_fixed
from ..solver import parse_index, scan_zeros, solve_zero, tilde_t

ZERO_COLUMNS = ['n', 't', 'n_primes', 'delta', 'predicted_error', 'residual', 'iterations']
LEDGER_FILENAME = 'zeros_ledger.csv'


class _ZeroSolvingExperiment(BaseExperiment):

    def _solve_config(self):
        p = self.params
        kwargs = {}
        if p['n_primes'] is not None:
            kwargs['n_primes'] = int(p['n_primes'])
        if p['delta'] is not None:
            kwargs['delta'] = float(p['delta'])
        return self.config.solve_config(**kwargs)

    def _record(self, results, runtime_s):
        if self.params['ledger'] and self.config.cache_dir is not None:
            ledger = ZeroLedger(self.config.cache_dir / LEDGER_FILENAME)
            ledger.append(results, self.config.precision.working_digits(results[-1].t), runtime_s)


class ZeroExperiment(_ZeroSolvingExperiment):
    """
    One zero ordinate t_{n;N} solved from the first N primes.
    """

    experiment_name = 'zero'
    output_columns = ZERO_COLUMNS
    # threads of one process would append to the zero ledger at the same time
    compatible_with_parallel = {'loky': True, 'multiprocessing': True, 'threading': False}

    _default_params = {
        'n': '1e21',
        'n_primes': None,
        'delta': None,
        'fractional_digits': 12,
        'ledger': True,
    }

    _params_description = {
        'n': "Zero index: integer, '1e21', '10^100', optionally with an offset like '1e21+1'",
        'n_primes': "Number of primes N (default: run configuration, 5e6)",
        'delta': "Distance to the critical line (default: run configuration, 1e-6)",
        'fractional_digits': "Fractional digits of t in the output",
        'ledger': "Append the result to zeros_ledger.csv in the cache directory",
    }

    experiment_description = """Solves theta(t) + pi a_N(t) = (n - 3/2) pi for the n-th ordinate with a
    damped quasi-Newton iteration seeded by the Lambert W approximation."""

    def _run(self, output_folder):
        config = self._solve_config()
        n = parse_index(self.params['n'])
        table = self.get_primes(config.n_primes)
        t0 = time.perf_counter()
        result = solve_zero(n, config, table=table, n_jobs=self.config.n_jobs, verbose=self.verbose)
        self._record([result], time.perf_counter() - t0)
        self.summary = {'n': str(n), 't': format_fixed(result.t, self.params['fractional_digits']),
                        'predicted_error': float(result.predicted_error), 'iterations': result.iterations}
        return [result.as_row(self.params['fractional_digits'])]


class ScanExperiment(_ZeroSolvingExperiment):
    """
    Consecutive zeros from one index on.
    """

    experiment_name = 'scan'
    output_columns = ZERO_COLUMNS
    compatible_with_parallel = {'loky': True, 'multiprocessing': True, 'threading': False}

    _default_params = {
        'n_from': '1e21-1',
        'count': 3,
        'n_primes': None,
        'delta': None,
        'fractional_digits': 12,
        'ledger': True,
    }

    _params_description = {
        'n_from': "First zero index (same notations as 'zero')",
        'count': "Number of consecutive zeros (at most 1e4)",
        'n_primes': "Number of primes N (default: run configuration, 5e6)",
        'delta': "Distance to the critical line (default: run configuration, 1e-6)",
        'fractional_digits': "Fractional digits of t in the output",
        'ledger': "Append the results to zeros_ledger.csv in the cache directory",
    }

    experiment_description = """Solves a window of consecutive zeros, sharing one phase reduction of
    the prime sum between all the zeros it covers."""

    def _run(self, output_folder):
        config = self._solve_config()
        table = self.get_primes(config.n_primes)
        t0 = time.perf_counter()
        results = scan_zeros(self.params['n_from'], int(self.params['count']), config, table=table,
                             n_jobs=self.config.n_jobs, verbose=self.verbose)
        self._record(results, time.perf_counter() - t0)
        self.summary = {'count': len(results)}
        return [result.as_row(self.params['fractional_digits']) for result in results]


class TildeExperiment(BaseExperiment):
    """
    The smooth Lambert W approximation of consecutive ordinates.
    """

    experiment_name = 'tilde'
    output_columns = ['n', 'tilde_t']

    _default_params = {
        'n_from': '1',
        'count': 30,
        'fractional_digits': 12,
    }

    _params_description = {
        'n_from': "First index",
        'count': "Number of indices",
        'fractional_digits': "Fractional digits of the output",
    }

    experiment_description = """Lists t~_n = 2 pi (n - 11/8) / W((n - 11/8) / e), the zero-knowledge
    approximation of the n-th ordinate."""

    def _run(self, output_folder):
        n_from = parse_index(self.params['n_from'])
        digits = self.params['fractional_digits']
        rows = []
        for n in range(n_from, n_from + int(self.params['count'])):
            rows.append([str(n), format_fixed(tilde_t(n, self.config.precision), digits)])
        self.summary = {'count': len(rows)}
        return rows
