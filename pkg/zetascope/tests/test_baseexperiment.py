import json

import pytest

from zetascope import BaseExperiment, RunConfig
from zetascope.baseexperiment import LOG_FILENAME, PARAMS_FILENAME
from zetascope.hpnum import PrecisionPolicy
from zetascope.tools import DomainError, ExperimentError


class SquaresExperiment(BaseExperiment):
    experiment_name = 'squares'
    output_columns = ['k', 'square']
    _default_params = {'count': 3, 'fail': False}
    _params_description = {'count': "Number of squares", 'fail': "Raise inside the run"}

    def _run(self, output_folder):
        if self.params['fail']:
            raise DomainError("asked to fail")
        self.summary = {'total': sum(k * k for k in range(self.params['count']))}
        return [[str(k), str(k * k)] for k in range(self.params['count'])]


def test_run_and_log(tmp_path):
    experiment = SquaresExperiment(output_folder=tmp_path / 'squares', config=RunConfig(cache_dir=None))
    experiment.set_params(count=4)
    run_time = experiment.run()
    assert run_time >= 0
    assert experiment.get_result()[-1] == {'k': '3', 'square': '9'}

    log = json.loads((tmp_path / 'squares' / LOG_FILENAME).read_text())
    assert log['experiment_name'] == 'squares'
    assert log['summary'] == {'total': 14}
    params = json.loads((tmp_path / 'squares' / PARAMS_FILENAME).read_text())
    assert params['experiment_params'] == {'count': 4, 'fail': False}
    assert params['config']['cache_dir'] is None


def test_existing_folder_is_replaced(tmp_path):
    folder = tmp_path / 'squares'
    folder.mkdir()
    (folder / 'stale.txt').write_text('stale')
    SquaresExperiment(output_folder=folder, config=RunConfig(cache_dir=None))
    assert not (folder / 'stale.txt').exists()


def test_run_error(tmp_path):
    experiment = SquaresExperiment(output_folder=tmp_path / 'fail', config=RunConfig(cache_dir=None))
    experiment.set_params(fail=True)
    assert experiment.run(raise_error=False) is None
    log = json.loads((tmp_path / 'fail' / LOG_FILENAME).read_text())
    assert log['error'] is True
    assert 'asked to fail' in log['error_trace']
    assert not experiment.result_path.exists()

    with pytest.raises(ExperimentError):
        experiment.run()


def test_run_config(monkeypatch, tmp_path):
    config = RunConfig()
    assert config.n_primes == 5_000_000
    assert config.delta == 1e-6
    assert config.precision == PrecisionPolicy(12, 20)

    narrow = config.with_precision(target_fractional_digits=3)
    assert narrow.precision == PrecisionPolicy(3, 20)
    assert config.precision.target_fractional_digits == 12

    solve_config = RunConfig(n_primes=1000, delta=1e-3).solve_config(bracket_halfwidth=2.)
    assert solve_config.n_primes == 1000
    assert solve_config.delta == 1e-3
    assert solve_config.bracket_halfwidth == 2.

    monkeypatch.setenv('ZETASCOPE_CACHE', str(tmp_path))
    assert RunConfig.from_env().cache_dir == tmp_path
    assert RunConfig.from_env(cache_dir=tmp_path / 'other', n_jobs=None).cache_dir == tmp_path / 'other'

    with pytest.raises(DomainError):
        RunConfig(n_primes=0)
    with pytest.raises(DomainError):
        RunConfig(delta=0.)
