"""
Base class of every runnable experiment.

An experiment is decomposed in the same steps whatever it computes:
  * setup the output folder and the run configuration
  * set parameters (checked against the class defaults, dumped to json)
  * run, which times the computation and writes a json log even on failure
  * get the result back, from the object or later from the folder alone

Results are CSV files with a header row, so a finished folder can be
collected without re-running anything.
"""
import copy
import datetime
import shutil
import time
import traceback
from pathlib import Path

from .cache import PrimeCache
from .config import RunConfig
from .primes import generate_primes
from .tools import ExperimentError, dump_json, echo, get_git_commit, read_csv, write_csv
from .version import version

PARAMS_FILENAME = 'zetascope_params.json'
LOG_FILENAME = 'zetascope_log.json'


class BaseExperiment:
    experiment_name = ''  # convenience for reporting
    output_columns = []
    compatible_with_parallel = {'loky': True, 'multiprocessing': True, 'threading': True}
    _default_params = {}
    _params_description = {}
    experiment_description = ""

    def __init__(self, output_folder=None, config=None, verbose=False, delete_output_folder=False):
        self.verbose = verbose
        self.config = config if config is not None else RunConfig.from_env(verbose=verbose)
        self.params = self.default_params()

        if output_folder is None:
            output_folder = self.experiment_name + '_output'
        output_folder = Path(output_folder).absolute()

        if output_folder.is_dir():
            shutil.rmtree(str(output_folder))
        output_folder.mkdir(parents=True)
        self.output_folder = output_folder
        self.delete_output_folder = delete_output_folder
        self.summary = {}

    @classmethod
    def default_params(cls):
        return copy.deepcopy(cls._default_params)

    @classmethod
    def params_description(cls):
        return copy.deepcopy(cls._params_description)

    def set_params(self, **params):
        bad_params = []
        for p in params.keys():
            if p not in self._default_params.keys():
                bad_params.append(p)
        if len(bad_params) > 0:
            raise AttributeError('Bad parameters: ' + str(bad_params))
        self.params.update(params)

        # dump parameters inside the folder with json
        self._dump_params()

    def _dump_params(self):
        params = dict()
        params['experiment_params'] = self.params
        params['config'] = {
            'target_fractional_digits': self.config.precision.target_fractional_digits,
            'guard_digits': self.config.precision.guard_digits,
            'n_primes': self.config.n_primes,
            'delta': self.config.delta,
            'seed': self.config.seed,
            'cache_dir': self.config.cache_dir,
            'n_jobs': self.config.n_jobs,
        }
        dump_json(self.output_folder / PARAMS_FILENAME, params)

    @property
    def result_path(self):
        return self.output_folder / f'{self.experiment_name}.csv'

    def get_primes(self, count):
        """First `count` primes, from the prime cache when a cache directory is configured."""
        if self.config.cache_dir is None:
            return generate_primes(count, n_jobs=self.config.n_jobs)
        cache = PrimeCache(self.config.cache_dir, verbose=self.verbose)
        return cache.get(count, n_jobs=self.config.n_jobs)

    def run(self, raise_error=True):
        self._dump_params()

        now = datetime.datetime.now()
        log = {
            'experiment_name': str(self.experiment_name),
            'zetascope_version': version,
            'git_commit': get_git_commit(Path(__file__).parent),
            'datetime': now.isoformat(),
        }

        t0 = time.perf_counter()
        error = None
        try:
            rows = self._run(self.output_folder)
            write_csv(self.result_path, self.output_columns, rows)
            run_time = float(time.perf_counter() - t0)
            log['error'] = False
        except Exception as err:
            error = err
            run_time = None
            log['error'] = True
            log['error_trace'] = traceback.format_exc()

        log['run_time'] = run_time
        log['summary'] = self.summary
        dump_json(self.output_folder / LOG_FILENAME, log)

        if run_time is None:
            echo('Error running', self.experiment_name, verbose=self.verbose)
            if raise_error:
                raise ExperimentError(f"{self.experiment_name} failed: {error}. You can inspect the runtime trace in "
                                      f"the {LOG_FILENAME} of the output folder") from error
        else:
            echo('{} run time {:0.2f}s'.format(self.experiment_name, run_time), verbose=self.verbose)

        return run_time

    def _run(self, output_folder):
        # need be implemented in subclass
        # returns the CSV rows (already formatted cells) and may fill self.summary
        raise NotImplementedError

    @classmethod
    def get_result_from_folder(cls, output_folder):
        output_folder = Path(output_folder)
        return read_csv(output_folder / f'{cls.experiment_name}.csv')

    def get_result(self):
        result = self.get_result_from_folder(self.output_folder)
        if self.delete_output_folder:
            echo("Removing ", str(self.output_folder), verbose=self.verbose)
            shutil.rmtree(str(self.output_folder), ignore_errors=True)
        return result
