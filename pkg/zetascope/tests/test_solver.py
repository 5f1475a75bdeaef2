import os
from pathlib import Path

import numpy as np
import pytest

from zetascope.eulerprod import PrimeArgumentSum
from zetascope.hpnum import PrecisionPolicy, format_fixed, make_context
from zetascope.primes import generate_primes
from zetascope.solver import (MAX_SCAN_COUNT, SolveConfig, error_estimate, mean_spacing, parse_index, scan_zeros,
                              solve_zero, tilde_t)
from zetascope.stats import delta_n, load_zeros
from zetascope.tools import ConvergenceError, DomainError, NoRootInBracketError, PrecisionError, ResourceLimitError

FIRST_ZEROS = Path(__file__).parent / 'data' / 'first_zeros.txt'

run_slow = pytest.mark.skipif(not os.environ.get('ZETASCOPE_RUN_SLOW'),
                              reason='set ZETASCOPE_RUN_SLOW=1 to solve with 5e6 primes')


def test_parse_index():
    assert parse_index(7) == 7
    assert parse_index(' 144 ') == 144
    assert parse_index('1e21') == 10 ** 21
    assert parse_index('2.5e1') == 25
    assert parse_index('10^100') == 10 ** 100
    assert parse_index('10**22') == 10 ** 22
    assert parse_index('1e21+1') == 10 ** 21 + 1
    assert parse_index('10^22 - 1') == 10 ** 22 - 1

    for bad in ['0', '1e21-1e21', 'abc', '1.5', '1e-3', '10^100000', '', '-5']:
        with pytest.raises(DomainError):
            parse_index(bad)


def test_tilde_t_near_first_zeros():
    zeros = load_zeros(FIRST_ZEROS)
    assert zeros.count == 30
    for n in range(10, 31):
        assert abs(float(delta_n(zeros.ordinates[n - 1], n))) < 1


def test_tilde_t_high():
    ctx = make_context(60)
    tt = ctx.mpf(tilde_t('1e21'))
    assert abs(tt - ctx.mpf('144176897509546973538.29')) < 0.5
    assert tilde_t('1e21+1') > tilde_t('1e21')


def test_mean_spacing():
    assert abs(float(mean_spacing(1e6)) - 2 * np.pi / np.log(1e6 / (2 * np.pi))) < 1e-12
    # about 0.141 at the 1e21-st zero
    assert 0.135 < float(mean_spacing('144176897509546973538')) < 0.145


def test_error_estimate():
    assert abs(float(error_estimate('1e21', 5_000_000)) - 0.0105) < 5e-4
    assert error_estimate('1e22', 10 ** 6) < error_estimate('1e21', 10 ** 6)
    with pytest.raises(DomainError):
        error_estimate(1000, 10 ** 6)
    with pytest.raises(DomainError):
        error_estimate('1e21', 10)


def test_solve_zero_quick():
    result = solve_zero('1e21', SolveConfig(n_primes=100000))
    assert result.n == 10 ** 21
    assert result.n_primes == 100000
    assert result.iterations <= 60
    assert result.residual < 1e-8
    integer_part, fractional_part = format_fixed(result.t, 3).split('.')
    assert integer_part == '144176897509546973538'
    assert abs(int(fractional_part) / 1000 - 0.291) < 0.1
    assert abs(float(result.predicted_error) - 0.0122) < 5e-4

    row = result.as_row(3)
    assert row[0] == '1000000000000000000000'
    assert row[1].startswith('144176897509546973538.')
    assert row[2] == '100000'


def test_solve_zero_errors():
    with pytest.raises(DomainError):
        solve_zero(99999)
    with pytest.raises(PrecisionError):
        solve_zero('10^100', SolveConfig(precision=PrecisionPolicy(12, 0)))

    table = generate_primes(1000)
    with pytest.raises(NoRootInBracketError):
        solve_zero('1e21', SolveConfig(n_primes=1000, bracket_halfwidth=1e-6), table=table)
    with pytest.raises(ConvergenceError):
        solve_zero('1e21', SolveConfig(n_primes=1000, max_iterations=1), table=table)

    far_away = PrimeArgumentSum(tilde_t('1e21'), 1e-6, table)
    with pytest.raises(DomainError):
        solve_zero('1e22', SolveConfig(n_primes=1000), prime_sum=far_away)


def test_scan_zeros():
    results = scan_zeros('1e21-1', 3, SolveConfig(n_primes=100000))
    assert [r.n for r in results] == [10 ** 21 - 1, 10 ** 21, 10 ** 21 + 1]
    assert results[0].t < results[1].t < results[2].t
    for result, expected in zip(results, [0.225, 0.291, 0.498]):
        integer_part, fractional_part = format_fixed(result.t, 3).split('.')
        assert integer_part == '144176897509546973538'
        assert abs(int(fractional_part) / 1000 - expected) < 0.1

    for count in [0, MAX_SCAN_COUNT + 1]:
        with pytest.raises(ResourceLimitError):
            scan_zeros('1e21', count)


GOOGOL_INTEGER_PART = ('280690383842894069903195445838256400084548030162846'
                       '045192360059224930922349073043060335653109252473')


def _thousandths(result):
    return int(format_fixed(result.t, 3).split('.')[1])


@run_slow
def test_scan_zeros_five_million_primes():
    table = generate_primes(5_000_000, n_jobs=-1)
    config = SolveConfig(n_primes=5_000_000)
    # (first index, integer part, thousandths with 5e6 primes, published thousandths)
    cases = [('1e21-1', '144176897509546973538', [205, 301, 505], [225, 291, 498]),
             ('1e22-1', '1370919909931995308226', [498, 614, 692], [490, 627, 680])]
    for n_from, integer_digits, fractions, published in cases:
        results = scan_zeros(n_from, 3, config, table=table, n_jobs=-1)
        for result, expected, true_value in zip(results, fractions, published):
            integer_part = format_fixed(result.t, 3).split('.')[0]
            assert integer_part == integer_digits
            assert abs(_thousandths(result) - expected) <= 5
            assert abs(_thousandths(result) - true_value) <= 50


@run_slow
def test_googol_zero():
    table = generate_primes(5_000_000, n_jobs=-1)
    fractions = []
    for n_primes in [10 ** 6, 5_000_000]:
        results = scan_zeros('10^100', 2, SolveConfig(n_primes=n_primes), table=table, n_jobs=-1)
        for result in results:
            assert format_fixed(result.t, 3).split('.')[0] == GOOGOL_INTEGER_PART
        assert abs(_thousandths(results[0]) - 244) <= 1
        assert abs(_thousandths(results[1]) - 273) <= 5
        fractions.append(_thousandths(results[0]))
    # the digits do not move between 1e6 and 5e6 primes
    assert abs(fractions[0] - fractions[1]) <= 1


if __name__ == '__main__':
    test_parse_index()
    test_solve_zero_quick()
