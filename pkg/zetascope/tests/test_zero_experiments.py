import unittest
from decimal import Decimal

from zetascope import ScanExperiment, TildeExperiment, ZeroExperiment, run_tilde, run_zero
from zetascope.cache import ZeroLedger
from zetascope.config import RunConfig
from zetascope.experiments.zeros import LEDGER_FILENAME
from zetascope.tests.common_tests import ExperimentCommonTestSuite


# This run several tests
class ZeroCommonTestSuite(ExperimentCommonTestSuite, unittest.TestCase):
    ExperimentClass = ZeroExperiment
    test_params = {'n': '1e21', 'n_primes': 10000, 'ledger': False}


class ScanCommonTestSuite(ExperimentCommonTestSuite, unittest.TestCase):
    ExperimentClass = ScanExperiment
    test_params = {'n_from': '1e21', 'count': 2, 'n_primes': 10000, 'ledger': False}


class TildeCommonTestSuite(ExperimentCommonTestSuite, unittest.TestCase):
    ExperimentClass = TildeExperiment
    test_params = {'n_from': '1', 'count': 5}


def test_run_tilde(tmp_path):
    rows = run_tilde(output_folder=tmp_path / 'tilde', config=RunConfig(cache_dir=None), n_from='1e21', count=1,
                     fractional_digits=3)
    assert rows[0]['n'] == str(10 ** 21)
    # t~ lies within a couple of mean spacings (~0.14) of t_n = 144176897509546973538.29
    assert abs(Decimal(rows[0]['tilde_t']) - Decimal('144176897509546973538.29')) < Decimal('0.5')


def test_run_zero_with_ledger(tmp_path):
    config = RunConfig(cache_dir=tmp_path / 'cache')
    rows = run_zero(output_folder=tmp_path / 'zero', config=config, n='1e21', n_primes=10000)
    assert len(rows) == 1
    assert rows[0]['n'] == str(10 ** 21)
    assert rows[0]['t'].startswith('144176897509546973')
    assert rows[0]['n_primes'] == '10000'

    ledger = ZeroLedger(tmp_path / 'cache' / LEDGER_FILENAME).read()
    assert len(ledger) == 1
    assert ledger[0]['t'] == rows[0]['t']
    assert ledger[0]['delta'] == '1e-06'
    assert int(ledger[0]['precision_digits']) >= 50
    assert float(ledger[0]['runtime_s']) >= 0


if __name__ == '__main__':
    ZeroCommonTestSuite().test_params_description()
    # ~ ZeroCommonTestSuite().test_on_small_params()
