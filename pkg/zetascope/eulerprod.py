"""
Prime sums of the truncated Euler product.

Every sum over primes goes through `reduce_phases` and `chunked_sum`:
phases t*log(p) are reduced modulo 2*pi in extended precision (the float64
product is meaningless once t*log(p) exceeds ~1e15), then the trigonometric
work is done in float64 and the terms are reduced in fixed chunks of
CHUNK_SIZE combined left to right, so the result never depends on n_jobs.
"""
import math
import warnings
from dataclasses import dataclass
from typing import Optional

import numpy as np
from joblib import Parallel, delayed

from .hpnum import (DEFAULT_POLICY, MIN_PRECISION_DIGITS, exp_integral_ei, integer_digits, make_context,
                    to_hcomplex, to_hreal)
from .tools import DomainError, PoleError

CHUNK_SIZE = 2 ** 16
PRACTICAL_PRIME_CAP = 10 ** 8
FLOAT_PHASE_LIMIT = 1e4
PHASE_GUARD_DIGITS = 15
SHIFT_BUDGET = 1e4
MP_TERM_LIMIT = 4096
POLE_DISTANCE = 1e-6
PNT_MIN_T = 10
PNT_MIN_N = 100
R_ESTIMATE_MIN_N = 16


class TruncationCapWarning(UserWarning):
    """The prime count [t^2] was clipped to the practical cap."""


def truncation_cap(t, limit=PRACTICAL_PRIME_CAP, warn=True):
    """
    Integer part of t^2, clipped to `limit` (with a TruncationCapWarning).
    The square is evaluated exactly enough to get the integer part right.
    """
    ctx = make_context(max(MIN_PRECISION_DIGITS, 2 * integer_digits(t) + 10))
    t = ctx.mpf(t)
    if t <= 1:
        raise DomainError("truncation_cap needs t > 1")
    cap = int(ctx.floor(t * t))
    if cap > limit:
        if warn:
            warnings.warn(f"[t^2] = {cap} exceeds the practical prime cap, using {limit}",
                          TruncationCapWarning, stacklevel=2)
        return int(limit)
    return cap


@dataclass(frozen=True)
class TruncationPolicy:
    """Effective prime count N = min(requested, [t^2], limit, table size)."""
    requested: Optional[int] = None
    limit: int = PRACTICAL_PRIME_CAP

    def __post_init__(self):
        if self.requested is not None and self.requested < 1:
            raise DomainError("requested prime count must be >= 1")

    def cap(self, t, warn=True):
        return truncation_cap(t, limit=self.limit, warn=warn)

    def effective(self, t, table=None, warn=True):
        n = self.cap(t, warn=warn)
        if self.requested is not None:
            n = min(n, self.requested)
        if table is not None:
            n = min(n, table.count)
        return n


@dataclass(frozen=True)
class ArgResult:
    """a(t) from primes, split into the prime number theorem part and the rest."""
    value: object
    n_used: int
    delta: object
    smooth_part: object
    fluctuating_part: object


def _check_n(table, n):
    n = table.count if n is None else int(n)
    if n < 0 or n > table.count:
        raise DomainError(f"n={n} outside the table of {table.count} primes")
    return n


def _reduce_chunk(t_mpf, primes, dps):
    ctx = make_context(dps)
    t = ctx.make_mpf(t_mpf)
    two_pi = 2 * ctx.pi
    out = np.empty(len(primes), dtype=np.float64)
    for i, p in enumerate(primes.tolist()):
        x = t * ctx.log(p)
        out[i] = float(x - two_pi * ctx.floor(x / two_pi))
    return out


def reduce_phases(t, table, n=None, n_jobs=1, joblib_backend='loky'):
    """
    (t * log p_k) mod 2*pi for k < n, as a float64 array.

    Below FLOAT_PHASE_LIMIT the float64 product is exact enough; above it
    each phase is reduced with digits(t) + 15 digits so that at least ten
    fractional digits of t*log(p) survive.
    """
    n = _check_n(table, n)
    t = to_hreal(t)
    if n == 0:
        return np.zeros(0)
    if abs(t) < FLOAT_PHASE_LIMIT:
        return np.mod(float(t) * table.log_array[:n], 2 * np.pi)

    dps = max(MIN_PRECISION_DIGITS, integer_digits(t) + PHASE_GUARD_DIGITS)
    t_mpf = make_context(dps).mpf(t)._mpf_
    starts = range(0, n, CHUNK_SIZE)
    primes = table.primes
    if n_jobs == 1 or n <= CHUNK_SIZE:
        chunks = [_reduce_chunk(t_mpf, primes[s:min(s + CHUNK_SIZE, n)], dps) for s in starts]
    else:
        chunks = Parallel(n_jobs=n_jobs, backend=joblib_backend)(
            delayed(_reduce_chunk)(t_mpf, primes[s:min(s + CHUNK_SIZE, n)], dps) for s in starts)
    return np.concatenate(chunks)


def chunked_sum(values):
    """Sum in fixed CHUNK_SIZE blocks, block results added left to right."""
    total = values.dtype.type(0)
    for start in range(0, len(values), CHUNK_SIZE):
        total = total + np.sum(values[start:start + CHUNK_SIZE])
    return total


def _resolve_method(method, n):
    if method == 'auto':
        return 'mp' if n <= MP_TERM_LIMIT else 'fast'
    if method not in ('mp', 'fast'):
        raise ValueError(f"method should be 'auto', 'mp' or 'fast', not {method!r}")
    return method


def _log_terms(s, table, n, n_jobs):
    # -log(1 - p^-s) = -1/2 log1p(r (r - 2 cos phi)) - i atan2(r sin phi, 1 - r cos phi)
    # with r = p^-sigma, phi = t log p
    sigma = float(s.real)
    logs = table.log_array[:n]
    r = np.exp(-sigma * logs)
    phi = reduce_phases(s.imag, table, n, n_jobs=n_jobs)
    cos, sin = np.cos(phi), np.sin(phi)
    re = -0.5 * np.log1p(r * (r - 2 * cos))
    im = -np.arctan2(r * sin, 1 - r * cos)
    return re, im


def _check_s(s):
    s = to_hcomplex(s)
    if s.real <= 0:
        raise DomainError("the finite Euler product is only used for Re(s) > 0")
    return s


def log_zeta_n(s, table, n=None, method='auto', n_jobs=1):
    """
    -sum_{k<=n} log(1 - p_k^-s), each term on the principal branch.

    Parameters
    ----------
    s: complex (HComplex, complex, str), Re(s) > 0
    table: PrimeTable
    n: int
        Number of primes (default: the whole table)
    method: 'auto', 'mp' or 'fast'
        'mp' evaluates every term at working precision, 'fast' in float64 after
        extended precision phase reduction; 'auto' picks 'mp' up to 4096 terms

    Returns
    -------
    value: HComplex
    """
    s = _check_s(s)
    n = _check_n(table, n)
    method = _resolve_method(method, n)
    ctx = DEFAULT_POLICY.context(s.imag)
    s = ctx.mpc(s)
    if method == 'mp':
        tiny = ctx.mpf(10) ** (-ctx.dps)
        total = ctx.mpc(0)
        for p in table.primes[:n].tolist():
            factor = 1 - ctx.power(p, -s)
            if abs(factor) < tiny:
                raise PoleError(f"|1 - p^-s| underflows at p={p}")
            total -= ctx.log(factor)
        return total
    re, im = _log_terms(s, table, n, n_jobs)
    return ctx.mpc(float(chunked_sum(re)), float(chunked_sum(im)))


def zeta_n_product(s, table, n=None, method='auto', n_jobs=1):
    """prod_{k<=n} (1 - p_k^-s)^-1, the finite Euler product zeta_N(s)."""
    s = _check_s(s)
    n = _check_n(table, n)
    method = _resolve_method(method, n)
    ctx = DEFAULT_POLICY.context(s.imag)
    s = ctx.mpc(s)
    if method == 'mp':
        tiny = ctx.mpf(10) ** (-ctx.dps)
        product = ctx.mpc(1)
        for p in table.primes[:n].tolist():
            factor = 1 - ctx.power(p, -s)
            if abs(factor) < tiny:
                raise PoleError(f"|1 - p^-s| underflows at p={p}")
            product /= factor
        return product
    return ctx.exp(log_zeta_n(s, table, n, method='fast', n_jobs=n_jobs))


def b_n_series(t, table, n=None, method='auto', n_jobs=1):
    """B_N(t) = sum_{k<=n} cos(t log p_k)."""
    n = _check_n(table, n)
    method = _resolve_method(method, n)
    ctx = DEFAULT_POLICY.context(t)
    t = ctx.mpf(t)
    if method == 'mp':
        return ctx.fsum(ctx.cos(t * ctx.log(p)) for p in table.primes[:n].tolist())
    return ctx.mpf(float(chunked_sum(np.cos(reduce_phases(t, table, n, n_jobs=n_jobs)))))


def b_n_pnt_estimate(t, table, n=None, method='sine'):
    """
    Prime number theorem estimate of B_N(t).

    method='ei' gives Re Ei((1 + it) log p_N); method='sine' its leading
    asymptotic form (p_N / log p_N) (t / (1 + t^2)) sin(t log p_N).
    """
    n = _check_n(table, n)
    if n < PNT_MIN_N:
        raise DomainError(f"b_n_pnt_estimate needs n >= {PNT_MIN_N}")
    ctx = DEFAULT_POLICY.context(t)
    t = ctx.mpf(t)
    if t < PNT_MIN_T:
        raise DomainError(f"b_n_pnt_estimate needs t >= {PNT_MIN_T}")
    p_n = table.p_max(n)
    log_p = ctx.log(p_n)
    if method == 'sine':
        return p_n / log_p * (t / (1 + t * t)) * ctx.sin(t * log_p)
    if method == 'ei':
        return exp_integral_ei(ctx.mpc(1, t) * log_p, dps=ctx.dps).real
    raise ValueError(f"method should be 'sine' or 'ei', not {method!r}")


def r_n_estimate(s, n):
    """
    Closed form estimate of the truncation error R_N(s) = N^(1-s) / ((s-1) log^s N),
    i.e. implied constant 1.
    """
    n = int(n)
    if n < R_ESTIMATE_MIN_N:
        raise DomainError(f"r_n_estimate needs n >= {R_ESTIMATE_MIN_N}")
    s = to_hcomplex(s)
    ctx = DEFAULT_POLICY.context(s.imag)
    s = ctx.mpc(s)
    if abs(s - 1) < POLE_DISTANCE:
        raise PoleError("r_n_estimate has a pole at s = 1")
    log_n = ctx.log(n)
    return ctx.exp((1 - s) * log_n - s * ctx.log(log_n)) / (s - 1)


def a_pnt(t, p_max):
    """
    Smooth part of a(t): (1/pi) Im(Ei((1/2 - it) log p_max) - Ei((1/2 - it) log 2)).
    """
    ctx = DEFAULT_POLICY.context(t)
    t = ctx.mpf(t)
    if t < PNT_MIN_T:
        raise DomainError(f"a_pnt needs t >= {PNT_MIN_T}")
    z = ctx.mpc(0.5, -t)
    upper = exp_integral_ei(z * ctx.log(int(p_max)), dps=ctx.dps)
    lower = exp_integral_ei(z * ctx.log(2), dps=ctx.dps)
    return (upper - lower).imag / ctx.pi


class PrimeArgumentSum:
    """
    sum_k Im log(1 - p_k^-(1/2 + delta + it)) near a base ordinate t0.

    Phases are reduced once at t0; the sum at t0 + dt only adds the float64
    shifts dt * log p_k, which stays accurate while |dt| log p_N <= SHIFT_BUDGET.
    """

    def __init__(self, t0, delta, table, n=None, n_jobs=1):
        n = _check_n(table, n)
        if n < 1:
            raise DomainError("PrimeArgumentSum needs at least one prime")
        delta = float(delta)
        if delta <= 0:
            raise DomainError("delta must be > 0")
        self.t0 = to_hreal(t0)
        self.delta = delta
        self.n = n
        self.logs = table.log_array[:n]
        self.radii = np.exp(-(0.5 + delta) * self.logs)
        self.base_phases = reduce_phases(self.t0, table, n, n_jobs=n_jobs)
        self.shift_limit = SHIFT_BUDGET / float(self.logs[-1])

    def covers(self, t, margin=0.):
        return abs(float(to_hreal(t) - self.t0)) + margin <= self.shift_limit

    def im_log_sum(self, t):
        dt = float(to_hreal(t) - self.t0)
        if abs(dt) > self.shift_limit:
            raise DomainError(f"t is {dt:.3g} away from the base ordinate, beyond the shift limit "
                              f"{self.shift_limit:.3g}")
        phases = self.base_phases + dt * self.logs
        r = self.radii
        return float(chunked_sum(np.arctan2(r * np.sin(phases), 1 - r * np.cos(phases))))

    def argument(self, t):
        """a(t) = -(1/pi) sum_k Im log(1 - p_k^-s) as a float."""
        return -self.im_log_sum(t) / math.pi


def a_euler(t, delta, table, n=None, respect_cap=True, n_jobs=1):
    """
    Argument a(t) of zeta at 1/2 + delta + it computed from the first n primes.

    Parameters
    ----------
    t: real
    delta: real, > 0
    table: PrimeTable
    n: int
        Number of primes (default: the whole table)
    respect_cap: bool
        If True the prime count is clipped to [t^2]
    n_jobs: int
        joblib workers for the phase reduction

    Returns
    -------
    result: ArgResult
    """
    ctx = DEFAULT_POLICY.context(t)
    t = ctx.mpf(t)
    if ctx.mpf(delta) <= 0:
        raise DomainError("a_euler needs delta > 0")
    n = _check_n(table, n)
    if respect_cap:
        n = TruncationPolicy(requested=n).effective(t, table, warn=False)
    prime_sum = PrimeArgumentSum(t, delta, table, n, n_jobs=n_jobs)
    value = ctx.mpf(prime_sum.argument(t))
    if t >= PNT_MIN_T:
        smooth = a_pnt(t, table.p_max(n))
    else:
        smooth = ctx.zero
    return ArgResult(value=value, n_used=n, delta=ctx.mpf(delta), smooth_part=smooth,
                     fluctuating_part=value - smooth)
