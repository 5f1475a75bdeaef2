import unittest

import numpy as np

from zetascope import DeltaStatsExperiment, KacExperiment, PairCorrExperiment, run_deltastats, run_kac, run_paircorr
from zetascope.config import RunConfig
from zetascope.stats import sample_model_zeros
from zetascope.tests.common_tests import ExperimentCommonTestSuite


def write_zeros_file(path, zeros):
    with open(path, 'w', encoding='utf8') as f:
        for t in zeros.ordinates:
            f.write(f'{float(t)!r}\n')
    return path


# This run several tests
class DeltaStatsCommonTestSuite(ExperimentCommonTestSuite, unittest.TestCase):
    ExperimentClass = DeltaStatsExperiment

    def get_test_params(self):
        zeros = sample_model_zeros(2000, 0.274, seed=5, first_index=1000)
        zeros_file = write_zeros_file(self.folder / 'model_zeros.txt', zeros)
        return {'zeros_file': str(zeros_file), 'first_index': 1000}


class PairCorrCommonTestSuite(ExperimentCommonTestSuite, unittest.TestCase):
    ExperimentClass = PairCorrExperiment
    test_params = {'model': True, 'count': 2000}


class KacCommonTestSuite(ExperimentCommonTestSuite, unittest.TestCase):
    ExperimentClass = KacExperiment
    test_params = {'n_primes': 1000, 't': 1e4, 'samples': 1000}


def test_run_deltastats(tmp_path):
    zeros = sample_model_zeros(5000, 0.274, seed=17, first_index=1000)
    zeros_file = write_zeros_file(tmp_path / 'zeros.txt', zeros)
    experiment = DeltaStatsExperiment(output_folder=tmp_path / 'deltastats', config=RunConfig(cache_dir=None))
    experiment.set_params(zeros_file=str(zeros_file), first_index=1000)
    experiment.run()
    rows = experiment.get_result()
    assert len(rows) == 60
    assert sum(int(row['count']) for row in rows) == 5000
    assert abs(experiment.summary['stddev'] - 0.274) < 0.02
    assert abs(experiment.summary['mean']) < 0.02


def test_deltastats_needs_zeros_file(tmp_path):
    rows = run_deltastats(output_folder=tmp_path / 'deltastats', config=RunConfig(cache_dir=None),
                          raise_error=False)
    assert rows is None


def test_run_paircorr(tmp_path):
    rows = run_paircorr(output_folder=tmp_path / 'paircorr', config=RunConfig(cache_dir=None), model=True,
                        count=3000, seed=7)
    assert len(rows) == 60
    assert rows[0]['u'] == '0.025'
    gue = np.array([float(row['gue']) for row in rows])
    np.testing.assert_allclose(gue[-1], 1 - (np.sin(np.pi * 2.975) / (np.pi * 2.975)) ** 2, rtol=1e-10)


def test_run_kac(tmp_path):
    experiment = KacExperiment(output_folder=tmp_path / 'kac', config=RunConfig(cache_dir=None))
    experiment.set_params(n_primes=2000, t=1e6, samples=4000, seed=3)
    experiment.run()
    assert abs(experiment.summary['variance'] - 0.5) < 0.05
    assert abs(experiment.summary['mean']) < 0.05
    rows = experiment.get_result()
    assert len(rows) == 60


if __name__ == '__main__':
    PairCorrCommonTestSuite().test_params_description()
