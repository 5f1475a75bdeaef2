"""
Reference zeta(s) in the critical strip at desk-scale heights, from the
alternating eta series with Chebyshev (Borwein) acceleration. Only used to
validate the prime side: nothing in the solver calls it.
"""
import math
from dataclasses import dataclass
from functools import lru_cache

from .eulerprod import POLE_DISTANCE, log_zeta_n
from .hpnum import DEFAULT_POLICY, make_context, to_hcomplex
from .tools import DomainError, PoleError

MAX_REFERENCE_HEIGHT = 1e4
ETA_FACTOR_MIN = 1e-10
_LOG_RATE = math.log(3 + math.sqrt(8))


@dataclass(frozen=True)
class ZetaRefValue:
    value: object
    terms_used: int
    error_bound: object


@lru_cache(maxsize=8)
def _chebyshev_weights(n):
    # d_k = n sum_{i<=k} (n+i-1)! 4^i / ((n-i)! (2i)!), exact integers
    weights = []
    term = 1
    total = 0
    for i in range(n + 1):
        if i > 0:
            term = term * 4 * (n + i - 1) * (n - i + 1) // ((2 * i) * (2 * i - 1))
        total += term
        weights.append(total)
    return tuple(weights)


def _check_reference_s(s):
    if s.real <= 0:
        raise DomainError("zeta_reference needs Re(s) > 0")
    if abs(s - 1) < POLE_DISTANCE:
        raise PoleError("zeta_reference: s is at the pole s = 1")
    if abs(s.imag) > MAX_REFERENCE_HEIGHT:
        raise DomainError(f"zeta_reference is limited to |Im s| <= {MAX_REFERENCE_HEIGHT:g}")


def zeta_reference(s, policy=DEFAULT_POLICY, terms=None):
    """
    Reference value of zeta(s) for 0 < Re(s), |Im(s)| <= 1e4, with a certified
    error bound below 10^-target_fractional_digits.

    zeta(s) = -1 / (d_n (1 - 2^(1-s))) sum_{k<n} (-1)^k (d_k - d_n) / (k+1)^s, with
    |error| <= 3 (1 + 2|t|) / ((3 + sqrt 8)^n |Gamma(s)| |1 - 2^(1-s)|).

    `terms` forces the number of series terms (the bound is then reported for
    that count). The lower half plane is served by conjugation, so
    zeta_reference(conj(s)) == conj(zeta_reference(s)) holds exactly.
    """
    s = to_hcomplex(s)
    _check_reference_s(s)
    if s.imag < 0:
        ref = zeta_reference(s.conjugate(), policy, terms)
        return ZetaRefValue(ref.value.conjugate(), ref.terms_used, ref.error_bound)

    t = float(abs(s.imag))
    # the alternating sum cancels about pi t / 2 nats
    extra_digits = int(math.ceil(math.pi * t / (2 * math.log(10)))) + 5
    ctx = make_context(policy.working_digits(t) + extra_digits)
    s = ctx.mpc(s)

    eta_factor = 1 - ctx.power(2, 1 - s)
    if abs(eta_factor) < ETA_FACTOR_MIN:
        raise DomainError("zeta_reference: 1 - 2^(1-s) vanishes numerically at this s")

    target = ctx.mpf(10) ** (-(policy.target_fractional_digits + 2))
    prefactor = 3 * (1 + 2 * ctx.mpf(t)) / (abs(ctx.gamma(s)) * abs(eta_factor))
    if terms is not None:
        n = int(terms)
    else:
        n = max(8, int(math.ceil(float(ctx.log(prefactor / target)) / _LOG_RATE)))
    bound = prefactor / ctx.power(3 + ctx.sqrt(8), n)
    while terms is None and bound > target:
        n += 8
        bound = prefactor / ctx.power(3 + ctx.sqrt(8), n)

    weights = _chebyshev_weights(n)
    d_n = weights[n]
    total = ctx.mpc(0)
    for k in range(n):
        term = (weights[k] - d_n) / ctx.power(k + 1, s)
        total += term if k % 2 == 0 else -term
    value = -total / (d_n * eta_factor)
    return ZetaRefValue(value, n, bound)


def arg_zeta_principal(s, policy=DEFAULT_POLICY):
    """Principal argument of zeta(s), in (-pi, pi]."""
    ref = zeta_reference(s, policy)
    return policy.context().arg(ref.value)


def a_exact(t, delta, policy=DEFAULT_POLICY):
    """(1/pi) arg zeta(1/2 + delta + it) on the principal branch."""
    ctx = policy.context(t)
    delta = ctx.mpf(delta)
    if delta <= 0:
        raise DomainError("a_exact needs delta > 0")
    s = ctx.mpc(ctx.mpf(0.5) + delta, t)
    return arg_zeta_principal(s, policy) / ctx.pi


def r_n_direct(s, table, n=None, policy=DEFAULT_POLICY):
    """
    Measured truncation error R_N(s) = log zeta(s) - log zeta_N(s), imaginary
    part folded into (-pi, pi].
    """
    s = to_hcomplex(s)
    if s.real <= 0.5:
        raise DomainError("r_n_direct needs Re(s) > 1/2")
    ref = zeta_reference(s, policy)
    ctx = policy.context(s.imag)
    diff = ctx.log(ref.value) - log_zeta_n(s, table, n)
    two_pi = 2 * ctx.pi
    im = diff.imag - two_pi * ctx.ceil((diff.imag - ctx.pi) / two_pi)
    return ctx.mpc(diff.real, im)
