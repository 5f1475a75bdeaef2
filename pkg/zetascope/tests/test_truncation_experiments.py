import unittest

import numpy as np

from zetascope import ArgScanExperiment, RnExperiment, run_argscan
from zetascope.config import RunConfig
from zetascope.tests.common_tests import ExperimentCommonTestSuite


# This run several tests
class RnCommonTestSuite(ExperimentCommonTestSuite, unittest.TestCase):
    ExperimentClass = RnExperiment
    test_params = {'sigma': 0.75, 'tmin': 10., 'tmax': 20., 'points': 3, 'max_primes': 1000}


class ArgScanCommonTestSuite(ExperimentCommonTestSuite, unittest.TestCase):
    ExperimentClass = ArgScanExperiment
    test_params = {'tmin': 10., 'tmax': 11., 'step': 0.5, 'delta': 0.01, 'n_primes': 1000}


def test_rn_decay(tmp_path):
    experiment = RnExperiment(output_folder=tmp_path / 'rn', config=RunConfig(cache_dir=None))
    experiment.set_params(tmin=10., tmax=100., points=91)
    experiment.run()
    rows = experiment.get_result()
    assert [int(row['n_primes']) for row in rows[:3]] == [100, 121, 144]
    assert all(float(row['abs_r_direct']) > 0 for row in rows)
    # |estimate| ~ t^(1 - 2 sigma) / log^sigma N
    assert abs(experiment.summary['decay_exponent_log_corrected'] + 0.5) < 0.02
    assert -0.9 < experiment.summary['decay_exponent'] < -0.6
    # |R_N| measured against the reference zeta stays within a factor 5 of the estimate
    assert experiment.summary['agreement_fraction'] >= 0.9


def test_run_argscan(tmp_path):
    rows = run_argscan(output_folder=tmp_path / 'argscan', config=RunConfig(cache_dir=None), tmin=10., tmax=12.,
                       step=0.25, n_primes=1000)
    assert len(rows) == 9
    assert rows[0]['t'] == '10' and rows[-1]['t'] == '12'
    for row in rows:
        assert abs(float(row['a_euler']) - float(row['a_pnt']) - float(row['delta_a'])) < 1e-9
        assert -1 <= float(row['a_exact']) <= 1
    # no zero ordinate in [10, 12]: a(t) stays small on both sides
    a_exact = np.array([float(row['a_exact']) for row in rows])
    assert np.all(np.abs(a_exact) < 0.5)


if __name__ == '__main__':
    RnCommonTestSuite().test_params_description()
