import mpmath
import numpy as np
import pytest

from zetascope.eulerprod import zeta_n_product
from zetascope.primes import (PRIME_COUNT_LIMIT, PrimeTable, enumerate_smooth, generate_primes, prime_upper_bound,
                              smooth_membership)
from zetascope.tools import DomainError, ResourceLimitError


def test_generate_primes():
    table = generate_primes(10)
    assert table.primes.tolist() == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert generate_primes(1).primes.tolist() == [2]
    assert generate_primes(10000).p_max() == 104729
    assert generate_primes(100000).p_max() == 1299709

    with pytest.raises(DomainError):
        generate_primes(0)
    with pytest.raises(ResourceLimitError):
        generate_primes(PRIME_COUNT_LIMIT + 1)


def test_generate_primes_parallel():
    # several segments; the result does not depend on the number of workers
    serial = generate_primes(200000)
    parallel = generate_primes(200000, n_jobs=2)
    assert parallel == serial


def test_prime_upper_bound():
    table = generate_primes(5000)
    for count in [1, 5, 6, 100, 5000]:
        assert table.p_max(count) <= prime_upper_bound(count)


def test_prime_table():
    table = generate_primes(100, dps=50)
    assert table.count == len(table) == 100
    with pytest.raises(ValueError):
        table.primes[0] = 5

    with mpmath.workdps(50):
        assert abs(table.log(24) - mpmath.log(97)) < mpmath.mpf(10) ** -48
    np.testing.assert_allclose(table.log_array, np.log(table.primes.astype(float)), rtol=1e-15)
    assert len(table.logs) == 100
    assert table.log_slice(0, 3)[1] == table.log(1)

    prefix = table.prefix(5)
    assert prefix.primes.tolist() == [2, 3, 5, 7, 11]
    assert table.prefix(100) is table
    assert table.with_precision(60).dps == 60
    assert table.with_precision(60) != table
    assert table.with_precision(50) == table
    assert table.p_max(25) == 97

    with pytest.raises(DomainError):
        table.p_max(0)
    with pytest.raises(DomainError):
        table.prefix(101)


def test_prime_table_validation():
    with pytest.raises(DomainError):
        PrimeTable([3, 5])
    with pytest.raises(DomainError):
        PrimeTable([2, 2, 3])
    with pytest.raises(DomainError):
        PrimeTable([])


def test_smooth_membership():
    assert smooth_membership(12, 2)
    assert not smooth_membership(14, 2)
    assert smooth_membership(1, 0)
    assert not smooth_membership(2, 0)
    assert smooth_membership(7, 4)
    assert smooth_membership(49, 4)
    assert not smooth_membership(11, 4)
    with pytest.raises(DomainError):
        smooth_membership(0, 2)


def test_enumerate_smooth():
    smooth = enumerate_smooth(2, 20)
    assert smooth.members == (1, 2, 3, 4, 6, 8, 9, 12, 16, 18)
    assert 12 in smooth and 10 not in smooth
    assert len(smooth) == 10

    smooth = enumerate_smooth(3, 500)
    brute_force = [n for n in range(1, 501) if smooth_membership(n, 3)]
    assert list(smooth) == brute_force


def test_euler_product_against_smooth_subseries():
    # the product over the first N primes is the sum of n^-s over the N-smooth n
    table = generate_primes(10)
    ctx_digits = 40
    with mpmath.workdps(ctx_digits):
        assert abs(zeta_n_product(1, table, 1) - 2) < mpmath.mpf(10) ** -25
        assert abs(zeta_n_product(2, table, 2) - mpmath.mpf(3) / 2) < mpmath.mpf(10) ** -25

        for n_gens in [1, 2, 3]:
            product = zeta_n_product(2, table, n_gens).real
            for cutoff in [10 ** 4, 10 ** 5, 10 ** 6]:
                partial = mpmath.fsum(mpmath.mpf(m) ** -2 for m in enumerate_smooth(n_gens, cutoff))
                # sum_{n > X} n^-2 <= X^-1/2 sum n^-3/2
                tail_bound = mpmath.mpf(cutoff) ** -0.5 * zeta_n_product(1.5, table, n_gens).real
                assert 0 < product - partial <= tail_bound


if __name__ == '__main__':
    test_generate_primes()
    test_euler_product_against_smooth_subseries()
