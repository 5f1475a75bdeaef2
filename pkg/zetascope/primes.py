"""
First N primes by a segmented sieve, with their logarithms, and the smooth
numbers generated by them (the support of the character c(n)).
"""
import math
from dataclasses import dataclass, field
from functools import cached_property, lru_cache

import numpy as np
from joblib import Parallel, delayed

from .hpnum import DEFAULT_POLICY, make_context
from .tools import DomainError, ResourceLimitError

PRIME_COUNT_LIMIT = 10 ** 8
SEGMENT_SIZE = 2 ** 20


@dataclass(frozen=True, eq=False)
class PrimeTable:
    """
    The first `count` primes (exact int64) and their logarithms.

    `log_array` holds float64 logs for the vectorised sums; `logs` materialises
    all logs as HReal at `dps` digits, which is only reasonable for small tables:
    hot loops compute high precision logs chunk by chunk instead.
    """
    primes: np.ndarray
    dps: int = field(default_factory=DEFAULT_POLICY.working_digits)

    def __post_init__(self):
        primes = np.array(self.primes, dtype=np.int64)
        primes.setflags(write=False)
        object.__setattr__(self, 'primes', primes)
        if primes.ndim != 1 or len(primes) == 0:
            raise DomainError("a prime table needs at least one prime")
        if primes[0] != 2 or np.any(np.diff(primes) <= 0):
            raise DomainError("prime table must start at 2 and be strictly increasing")

    def __len__(self):
        return len(self.primes)

    def __eq__(self, other):
        if not isinstance(other, PrimeTable):
            return NotImplemented
        return self.dps == other.dps and np.array_equal(self.primes, other.primes)

    @property
    def count(self):
        return len(self.primes)

    @cached_property
    def log_array(self):
        logs = np.log(self.primes.astype(np.float64))
        logs.setflags(write=False)
        return logs

    @cached_property
    def logs(self):
        return self.log_slice(0, self.count)

    def log(self, k, dps=None):
        ctx = make_context(dps or self.dps)
        return ctx.log(int(self.primes[k]))

    def log_slice(self, start, stop, dps=None):
        ctx = make_context(dps or self.dps)
        return [ctx.log(p) for p in self.primes[start:stop].tolist()]

    def p_max(self, n=None):
        n = self.count if n is None else n
        if not 1 <= n <= self.count:
            raise DomainError(f"n={n} outside the table of {self.count} primes")
        return int(self.primes[n - 1])

    def prefix(self, n):
        if not 1 <= n <= self.count:
            raise DomainError(f"n={n} outside the table of {self.count} primes")
        if n == self.count:
            return self
        return PrimeTable(self.primes[:n], self.dps)

    def with_precision(self, dps):
        return PrimeTable(self.primes, dps)


@dataclass(frozen=True)
class SmoothSet:
    """Members of the semigroup generated by the first `generator_count` primes, up to `limit`."""
    generator_count: int
    limit: int
    members: tuple

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, n):
        return n in self._member_set

    @cached_property
    def _member_set(self):
        return frozenset(self.members)


def prime_upper_bound(count):
    """Upper bound for the count-th prime (Rosser: p_n < n (log n + log log n), n >= 6)."""
    if count < 6:
        return 13
    return int(count * (math.log(count) + math.log(math.log(count)))) + 1


def _simple_sieve(limit):
    is_prime = np.ones(limit + 1, dtype=bool)
    is_prime[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if is_prime[p]:
            is_prime[p * p::p] = False
    return np.nonzero(is_prime)[0].astype(np.int64)


def _sieve_segment(lo, hi, base_primes):
    is_prime = np.ones(hi - lo, dtype=bool)
    for p in base_primes.tolist():
        if p * p >= hi:
            break
        start = max(p * p, -(-lo // p) * p)
        is_prime[start - lo::p] = False
    if lo < 2:
        is_prime[:2 - lo] = False
    return np.nonzero(is_prime)[0].astype(np.int64) + lo


def generate_primes(count, dps=None, n_jobs=1, joblib_backend='loky'):
    """
    Exact first `count` primes by a segmented sieve.

    Parameters
    ----------
    count: int
        Number of primes, 1 <= count <= 1e8
    dps: int
        Precision of the table logarithms (default from the precision policy)
    n_jobs: int
        Number of joblib workers sieving segments (output does not depend on it)
    joblib_backend: str
        joblib backend when n_jobs != 1 (default='loky')

    Returns
    -------
    table: PrimeTable
    """
    count = int(count)
    if count < 1:
        raise DomainError("generate_primes needs count >= 1")
    if count > PRIME_COUNT_LIMIT:
        raise ResourceLimitError(f"{count} primes requested, the cap is {PRIME_COUNT_LIMIT}")
    dps = dps or DEFAULT_POLICY.working_digits()

    limit = prime_upper_bound(count)
    base_primes = _simple_sieve(math.isqrt(limit) + 1)
    bounds = [(lo, min(lo + SEGMENT_SIZE, limit + 1)) for lo in range(0, limit + 1, SEGMENT_SIZE)]

    if n_jobs == 1:
        segments = []
        found = 0
        for lo, hi in bounds:
            segment = _sieve_segment(lo, hi, base_primes)
            segments.append(segment)
            found += len(segment)
            if found >= count:
                break
    else:
        segments = Parallel(n_jobs=n_jobs, backend=joblib_backend)(
            delayed(_sieve_segment)(lo, hi, base_primes) for lo, hi in bounds)

    primes = np.concatenate(segments)[:count]
    return PrimeTable(primes, dps)


@lru_cache(maxsize=32)
def _generators(generator_count):
    if generator_count == 0:
        return ()
    return tuple(generate_primes(generator_count).primes.tolist())


def smooth_membership(n, generator_count):
    """
    True iff every prime factor of n is among the first `generator_count` primes
    (always true for n = 1).
    """
    n = int(n)
    if n < 1:
        raise DomainError("smooth_membership needs n >= 1")
    if generator_count < 0:
        raise DomainError("generator_count must be >= 0")
    generators = _generators(int(generator_count))
    for p in generators:
        if n == 1:
            return True
        if p * p > n:
            # what is left is 1 or a single prime
            return n <= generators[-1]
        while n % p == 0:
            n //= p
    return n == 1


def enumerate_smooth(generator_count, limit):
    """
    All integers <= limit whose prime factors lie among the first
    `generator_count` primes, ascending.
    """
    limit = int(limit)
    if limit < 1:
        raise DomainError("enumerate_smooth needs limit >= 1")
    members = [1]
    for p in _generators(int(generator_count)):
        if p > limit:
            break
        powers = []
        for m in members:
            x = m * p
            while x <= limit:
                powers.append(x)
                x *= p
        members.extend(powers)
    return SmoothSet(int(generator_count), limit, tuple(sorted(members)))
