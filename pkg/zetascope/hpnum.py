"""
Arbitrary precision kernel.

Scalars are mpmath numbers (HReal = mpf, HComplex = mpc). Every operation runs
inside a private mpmath context obtained from `make_context(dps)`, never on the
global `mpmath.mp`, so functions stay pure and thread safe: the contexts are
cached per thread and per precision.
"""
import threading
from dataclasses import dataclass

import mpmath

from .tools import ConvergenceError, DomainError

HReal = mpmath.mpf
HComplex = mpmath.mpc

MIN_PRECISION_DIGITS = 30
EI_MIN_MODULUS = 5
THETA_MIN_T = 10
LAMBERT_MAX_ITERATIONS = 100

_local = threading.local()


def make_context(dps):
    """
    Returns the calling thread's mpmath context working at `dps` decimal digits.
    """
    dps = int(dps)
    if dps < MIN_PRECISION_DIGITS:
        raise DomainError(f"precision of {dps} digits is below the minimum of {MIN_PRECISION_DIGITS}")
    contexts = getattr(_local, 'contexts', None)
    if contexts is None:
        contexts = _local.contexts = {}
    ctx = contexts.get(dps)
    if ctx is None:
        ctx = mpmath.MPContext()
        ctx.dps = dps
        contexts[dps] = ctx
    return ctx


def integer_digits(x):
    """Number of decimal digits of the integer part of |x| (1 for |x| < 1)."""
    if isinstance(x, str):
        x = mpmath.mpf(x)
    n = abs(int(x))
    return len(str(n)) if n else 1


@dataclass(frozen=True)
class PrecisionPolicy:
    """
    Working precision rule: a computation at height t runs with
    digits(int(t)) + target_fractional_digits + guard_digits decimal digits.
    """
    target_fractional_digits: int = 12
    guard_digits: int = 20

    def __post_init__(self):
        if self.target_fractional_digits < 0 or self.guard_digits < 0:
            raise DomainError("precision policy digits must be non-negative")

    def working_digits(self, t=0):
        digits = integer_digits(t) + self.target_fractional_digits + self.guard_digits
        return max(MIN_PRECISION_DIGITS, digits)

    def context(self, t=0):
        return make_context(self.working_digits(t))

    def widened(self, extra_digits=10):
        return PrecisionPolicy(self.target_fractional_digits, self.guard_digits + extra_digits)


DEFAULT_POLICY = PrecisionPolicy()


def _context(dps, *values):
    if dps is None:
        height = max([abs(_as_mpmath(v)) for v in values] + [mpmath.mpf(0)])
        dps = DEFAULT_POLICY.working_digits(height)
    return make_context(dps)


def _as_mpmath(v):
    if isinstance(v, str):
        return mpmath.mpmathify(v)
    if isinstance(v, complex) or hasattr(v, '_mpc_'):
        return mpmath.mpc(v)
    return mpmath.mpf(v)


def to_hreal(x, dps=None):
    ctx = _context(dps, x)
    return ctx.mpf(x)


def to_hcomplex(z, dps=None):
    ctx = _context(dps, z)
    return ctx.mpc(z)


def format_fixed(x, fractional_digits):
    """
    Exact fixed point rendering of a real with `fractional_digits` digits after
    the point (ties round to even), never in scientific notation.
    """
    ctx = make_context(max(MIN_PRECISION_DIGITS, integer_digits(x) + fractional_digits + 10))
    scaled = ctx.mpf(x) * ctx.mpf(10) ** fractional_digits
    q = int(ctx.nint(scaled))
    sign = '-' if q < 0 else ''
    q = abs(q)
    if fractional_digits == 0:
        return f'{sign}{q}'
    ip, fp = divmod(q, 10 ** fractional_digits)
    return f'{sign}{ip}.{fp:0{fractional_digits}d}'


def lambert_w0(x, dps=None):
    """
    Principal branch of the Lambert W function by Halley iteration.

    Parameters
    ----------
    x: real (HReal, int, float or decimal string), x >= -1/e
    dps: int
        Working precision in decimal digits (default from the precision policy)

    Returns
    -------
    w: HReal
        w * exp(w) = x with w >= -1
    """
    ctx = _context(dps, x)
    x = ctx.mpf(x)
    branch_point = -ctx.exp(-1)
    tol = ctx.mpf(10) ** (-ctx.dps)
    if x < branch_point:
        if branch_point - x > tol * 10:
            raise DomainError(f"lambert_w0 is defined for x >= -1/e, got {ctx.nstr(x, 15)}")
        return -ctx.one
    if abs(x - branch_point) <= tol * 10:
        return -ctx.one
    if x == 0:
        return ctx.zero

    if x > ctx.e:
        l1 = ctx.log(x)
        w = l1 - ctx.log(l1)
    elif x < -0.25:
        # series around the branch point
        p = ctx.sqrt(2 * (ctx.e * x + 1))
        w = -1 + p - p ** 2 / 3 + ctx.mpf(11) / 72 * p ** 3
    else:
        w = ctx.log1p(x)

    # near -1/e the step is dominated by rounding noise of size eps / (w + 1),
    # so a residual at rounding level or a stalled step also ends the iteration
    residual_tol = 8 * ctx.eps * max(ctx.one, abs(x))
    stall_tol = ctx.sqrt(ctx.eps)
    previous_step = None
    for _ in range(LAMBERT_MAX_ITERATIONS):
        ew = ctx.exp(w)
        f = w * ew - x
        if abs(f) <= residual_tol:
            return w
        wp1 = w + 1
        if wp1 == 0:
            return w
        step = f / (ew * wp1 - (w + 2) * f / (2 * wp1))
        w = w - step
        scale = max(ctx.one, abs(w))
        if abs(step) <= tol * scale:
            return w
        if previous_step is not None and abs(step) >= previous_step and abs(step) <= stall_tol * scale:
            return w
        previous_step = abs(step)
    raise ConvergenceError(f"lambert_w0 did not converge in {LAMBERT_MAX_ITERATIONS} iterations "
                           f"at {ctx.dps} digits; the precision is probably misconfigured")


def exp_integral_ei(z, dps=None, max_terms=None):
    """
    Exponential integral Ei(z) from its asymptotic series, truncated at the
    smallest term (or after `max_terms` terms).

    For non-real z the Stokes constant i*pi*sign(Im z) is added, which puts the
    branch cut on the negative real axis; in particular Im Ei(-iy) -> -pi.
    Only |z| >= 5 is accepted: the series is useless closer to the origin.
    """
    ctx = _context(dps, z)
    z = ctx.mpc(z)
    if abs(z) < EI_MIN_MODULUS:
        raise DomainError(f"exp_integral_ei needs |z| >= {EI_MIN_MODULUS}, got |z| = {ctx.nstr(abs(z), 8)}")

    term = ctx.mpc(1)
    total = ctx.mpc(1)
    k = 1
    while max_terms is None or k < max_terms:
        new_term = term * k / z
        if abs(new_term) >= abs(term):
            break
        term = new_term
        total += term
        if abs(term) < ctx.eps * abs(total):
            break
        k += 1

    value = ctx.exp(z) / z * total
    if z.imag > 0:
        value += ctx.mpc(0, ctx.pi)
    elif z.imag < 0:
        value -= ctx.mpc(0, ctx.pi)
    if z.imag == 0:
        return ctx.mpc(value.real, 0)
    return value


def riemann_siegel_theta(t, extra_term=False, dps=None):
    """
    Stirling asymptotics of the Riemann-Siegel theta function:
    (t/2) log(t/(2 pi e)) - pi/8 + 1/(48 t), error O(1/t^3).
    With `extra_term` the next correction 7/(5760 t^3) is included.
    """
    ctx = _context(dps, t)
    t = ctx.mpf(t)
    if t < THETA_MIN_T:
        raise DomainError(f"riemann_siegel_theta asymptotics need t >= {THETA_MIN_T}")
    theta = t / 2 * ctx.log(t / (2 * ctx.pi * ctx.e)) - ctx.pi / 8 + 1 / (48 * t)
    if extra_term:
        theta += ctx.mpf(7) / (5760 * t ** 3)
    return theta


def theta_derivative(t, dps=None):
    """Smooth derivative of theta: log(t / (2 pi e)) / 2, for t > 2 pi e."""
    ctx = _context(dps, t)
    t = ctx.mpf(t)
    if t <= 2 * ctx.pi * ctx.e:
        raise DomainError(f"theta_derivative needs t > 2 pi e, got {ctx.nstr(t, 15)}")
    return ctx.log(t / (2 * ctx.pi * ctx.e)) / 2
