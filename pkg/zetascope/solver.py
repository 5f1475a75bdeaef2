"""
Zeros from primes.

The n-th ordinate solves

    theta(t) + pi a_N(t) = (n - 3/2) pi,
    theta(t) = (t/2) log(t / 2 pi e) - pi/8 + 1/(48 t),
    pi a_N(t) = -Im sum_{k<=N} log(1 - p_k^-(1/2 + delta + it)),

which never refers to zeta itself. The smooth part alone is solved in closed
form by Lambert W (`tilde_t`), which seeds and brackets the root search.
"""
import re
import time
from dataclasses import dataclass, field
from decimal import Decimal, InvalidOperation

from .eulerprod import PrimeArgumentSum, TruncationPolicy
from .hpnum import (DEFAULT_POLICY, PrecisionPolicy, format_fixed, integer_digits, lambert_w0, make_context,
                    riemann_siegel_theta, theta_derivative)
from .primes import generate_primes
from .tools import (ConvergenceError, DomainError, NoRootInBracketError, PrecisionError, ResourceLimitError,
                    ZetaScopeError, echo)

MIN_SOLVER_INDEX = 10 ** 5
MIN_ERROR_PRIMES = 16
MAX_SCAN_COUNT = 10 ** 4
MAX_INDEX_EXPONENT = 10 ** 4

_index_re = re.compile(r'^\s*(?P<base>\d+(?:\.\d*)?(?:[eE]\+?\d+)?|\d+\s*(?:\^|\*\*)\s*\d+)'
                       r'\s*(?:(?P<sign>[+-])\s*(?P<offset>\d+))?\s*$')


def parse_index(text):
    """
    Zero index from its decimal notation: '144', '1e21', '10^100', '10**100',
    optionally followed by an offset ('1e21-1', '10^22+1').
    """
    if isinstance(text, int):
        n = text
    else:
        m = _index_re.match(str(text))
        if m is None:
            raise DomainError(f"cannot read a zero index from {text!r}")
        base = m.group('base')
        if '^' in base or '*' in base:
            mantissa, exponent = re.split(r'\^|\*\*', base)
            if int(exponent) > MAX_INDEX_EXPONENT:
                raise DomainError(f"exponent of {text!r} is too large")
            n = int(mantissa) ** int(exponent)
        else:
            try:
                value = Decimal(base)
            except InvalidOperation:
                raise DomainError(f"cannot read a zero index from {text!r}")
            if value.adjusted() > MAX_INDEX_EXPONENT:
                raise DomainError(f"exponent of {text!r} is too large")
            if value != value.to_integral_value():
                raise DomainError(f"zero index {text!r} is not an integer")
            n = int(value)
        if m.group('sign') == '+':
            n += int(m.group('offset'))
        elif m.group('sign') == '-':
            n -= int(m.group('offset'))
    if n < 1:
        raise DomainError(f"zero index must be >= 1, got {n}")
    return n


@dataclass(frozen=True)
class SolveConfig:
    delta: float = 1e-6
    n_primes: int = 5_000_000
    bracket_halfwidth: float = 5.
    precision: PrecisionPolicy = field(default_factory=PrecisionPolicy)
    max_iterations: int = 60
    step_tolerance: float = 1e-10
    residual_tolerance: float = 1e-8

    def __post_init__(self):
        if not self.delta > 0:
            raise DomainError("delta must be > 0")
        if self.n_primes < 1:
            raise DomainError("n_primes must be >= 1")
        if not self.bracket_halfwidth > 0:
            raise DomainError("bracket_halfwidth must be > 0")


@dataclass(frozen=True)
class ZeroResult:
    n: int
    t: object
    n_primes: int
    delta: float
    predicted_error: object
    residual: object
    iterations: int

    def as_row(self, fractional_digits=12):
        return [str(self.n), format_fixed(self.t, fractional_digits), str(self.n_primes),
                f'{float(self.delta):.6g}', f'{float(self.predicted_error):.6e}',
                f'{float(self.residual):.3e}', str(self.iterations)]


def _index_context(n, policy=DEFAULT_POLICY):
    # t_n has at most as many integer digits as n, plus one for small n
    return make_context(policy.working_digits(10 * int(n)))


def tilde_t(n, policy=DEFAULT_POLICY):
    """Smooth approximation 2 pi (n - 11/8) / W((n - 11/8) / e) of the n-th ordinate."""
    n = parse_index(n)
    ctx = _index_context(n, policy)
    m = n - ctx.mpf(11) / 8
    return 2 * ctx.pi * m / lambert_w0(m / ctx.e, dps=ctx.dps)


def mean_spacing(t):
    """Average gap 2 pi / log(t / 2 pi) between ordinates at height t."""
    ctx = DEFAULT_POLICY.context(t)
    t = ctx.mpf(t)
    return 2 * ctx.pi / ctx.log(t / (2 * ctx.pi))


def error_estimate(n, n_primes):
    """
    Envelope of the truncation error on t_n: (2 pi / log n) / (pi sqrt(log N)),
    i.e. the normalized error 1 / (pi sqrt(log N)) converted to t units.
    """
    n = parse_index(n)
    if n < MIN_SOLVER_INDEX:
        raise DomainError(f"error_estimate needs n >= {MIN_SOLVER_INDEX}")
    if n_primes < MIN_ERROR_PRIMES:
        raise DomainError(f"error_estimate needs n_primes >= {MIN_ERROR_PRIMES}")
    ctx = _index_context(n)
    return 2 / (ctx.log(n) * ctx.sqrt(ctx.log(int(n_primes))))


class _ZeroEquation:
    # F(t) = theta(t) - sum Im log(1 - p^-s) - (n - 3/2) pi
    def __init__(self, n, prime_sum, ctx):
        self.n = n
        self.prime_sum = prime_sum
        self.ctx = ctx
        self.rhs = (n - ctx.mpf(3) / 2) * ctx.pi

    def __call__(self, t):
        ctx = self.ctx
        theta = riemann_siegel_theta(t, dps=ctx.dps)
        return theta - ctx.mpf(self.prime_sum.im_log_sum(t)) - self.rhs


def _find_bracket(equation, seed, halfwidth):
    lo, hi = seed - halfwidth, seed + halfwidth
    f_lo, f_hi = equation(lo), equation(hi)
    if f_lo < 0 < f_hi:
        return lo, hi
    # widen once
    lo, hi = seed - 2 * halfwidth, seed + 2 * halfwidth
    f_lo, f_hi = equation(lo), equation(hi)
    if f_lo < 0 < f_hi:
        return lo, hi
    raise NoRootInBracketError(f"no sign change of the zero equation within {float(2 * halfwidth):.3g} "
                               f"of the seed")


def solve_zero(n, config=None, table=None, prime_sum=None, n_jobs=1, verbose=False):
    """
    Solve the prime-only equation for the n-th ordinate t_{n;N}.

    Parameters
    ----------
    n: int or str
        Zero index (n >= 1e5), any notation accepted by parse_index
    config: SolveConfig
    table: PrimeTable
        Primes to use (default: the first config.n_primes primes, sieved)
    prime_sum: PrimeArgumentSum
        Pre-anchored prime sum to reuse; it must cover the bracket
    n_jobs: int
        joblib workers for the phase reduction
    verbose: bool

    Returns
    -------
    result: ZeroResult
    """
    config = config or SolveConfig()
    n = parse_index(n)
    if n < MIN_SOLVER_INDEX:
        raise DomainError(f"solve_zero works at n >= {MIN_SOLVER_INDEX}: below it [t^2] starves the prime sum")

    seed = tilde_t(n, config.precision)
    ctx = make_context(config.precision.working_digits(seed))
    seed = ctx.mpf(seed)

    # theta(t) - (n - 3/2) pi cancels all integer digits of theta
    theta_digits = integer_digits(riemann_siegel_theta(seed, dps=ctx.dps))
    if theta_digits + config.precision.target_fractional_digits > ctx.dps:
        raise PrecisionError(f"{ctx.dps} working digits cannot resolve theta ({theta_digits} integer digits) "
                             f"to {config.precision.target_fractional_digits} fractional digits")

    spacing = mean_spacing(seed)
    halfwidth = config.bracket_halfwidth * spacing
    if prime_sum is None:
        if table is None:
            table = generate_primes(config.n_primes, n_jobs=n_jobs)
        n_primes = TruncationPolicy(requested=config.n_primes).effective(seed, table, warn=False)
        prime_sum = PrimeArgumentSum(seed, config.delta, table, n_primes, n_jobs=n_jobs)
    if not prime_sum.covers(seed, margin=float(2 * halfwidth)):
        raise DomainError("prime_sum is anchored too far from this zero")

    equation = _ZeroEquation(n, prime_sum, ctx)
    lo, hi = _find_bracket(equation, seed, halfwidth)

    t = seed
    f = equation(t)
    tol = config.residual_tolerance * ctx.pi
    iterations = 0
    converged = abs(f) < tol
    while not converged and iterations < config.max_iterations:
        if f < 0:
            lo = t
        else:
            hi = t
        # quasi-Newton on the smooth slope, damped to one mean spacing
        step = f / theta_derivative(t, dps=ctx.dps)
        if abs(step) > spacing:
            step = spacing if step > 0 else -spacing
        t_new = t - step
        if not lo < t_new < hi:
            t_new = (lo + hi) / 2
        step = t_new - t
        t = t_new
        f = equation(t)
        iterations += 1
        converged = abs(f) < tol or abs(step) < config.step_tolerance
    if abs(f) >= tol:
        raise ConvergenceError(f"zero n={n}: residual {float(abs(f) / ctx.pi):.3g} pi after "
                               f"{iterations} iterations")

    echo(f'n={n} t={format_fixed(t, 6)} iterations={iterations}', verbose=verbose)
    return ZeroResult(n=n, t=t, n_primes=prime_sum.n, delta=config.delta,
                      predicted_error=error_estimate(n, prime_sum.n), residual=abs(f) / ctx.pi,
                      iterations=iterations)


def scan_zeros(n_from, count, config=None, table=None, n_jobs=1, verbose=False):
    """
    Consecutive zeros n_from, ..., n_from + count - 1. One anchored prime sum
    serves every zero within its shift range; a new anchor is taken when the
    scan leaves it.
    """
    config = config or SolveConfig()
    n_from = parse_index(n_from)
    count = int(count)
    if not 1 <= count <= MAX_SCAN_COUNT:
        raise ResourceLimitError(f"scan_zeros count must be in [1, {MAX_SCAN_COUNT}]")
    if table is None:
        table = generate_primes(config.n_primes, n_jobs=n_jobs)

    results = []
    prime_sum = None
    for n in range(n_from, n_from + count):
        t0 = time.perf_counter()
        try:
            seed = tilde_t(n, config.precision)
            margin = 4 * config.bracket_halfwidth * float(mean_spacing(seed))
            if prime_sum is None or not prime_sum.covers(seed, margin=margin):
                n_primes = TruncationPolicy(requested=config.n_primes).effective(seed, table, warn=False)
                prime_sum = PrimeArgumentSum(seed, config.delta, table, n_primes, n_jobs=n_jobs)
            result = solve_zero(n, config, prime_sum=prime_sum)
        except ZetaScopeError as err:
            raise type(err)(f"zero n={n}: {err}") from err
        if results and not result.t > results[-1].t:
            raise ConvergenceError(f"zero n={n}: ordinate does not increase from zero n={n - 1}")
        echo(f'n={n} t={format_fixed(result.t, 6)} in {time.perf_counter() - t0:0.2f}s', verbose=verbose)
        results.append(result)
    return results
