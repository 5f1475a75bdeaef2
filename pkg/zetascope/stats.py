"""
Statistics of zero ordinates: the fluctuations delta_n around the smooth
approximation, the Gaussian zero model, pair correlation against GUE and the
central limit behaviour of B_N(u).

Desk-scale tables (a few 1e5 ordinates below ~1e5) are handled in float64.
"""
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np
from scipy import special, stats as sstats

from .hpnum import DEFAULT_POLICY
from .primes import generate_primes
from .solver import tilde_t
from .tools import DomainError, ZeroTableError

MIN_STATS_COUNT = 10 ** 3
DELTA_RANGE = (-1.5, 1.5)
DELTA_BIN_WIDTH = 0.05
KAC_RANGE = (-3., 3.)
KAC_BIN_WIDTH = 0.1
KAC_BLOCK = 256
CHI2_MIN_EXPECTED = 5.


@dataclass(frozen=True, eq=False)
class ZeroTable:
    """Ascending zero ordinates t_1, t_2, ... (float64) and where they came from."""
    ordinates: np.ndarray
    source: str = ''

    def __post_init__(self):
        ordinates = np.array(self.ordinates, dtype=np.float64)
        ordinates.setflags(write=False)
        object.__setattr__(self, 'ordinates', ordinates)
        if ordinates.ndim != 1 or len(ordinates) == 0:
            raise ZeroTableError("a zero table needs at least one ordinate")
        not_finite = np.nonzero(~np.isfinite(ordinates))[0]
        if len(not_finite) > 0:
            raise ZeroTableError("ordinates must be finite", line=int(not_finite[0]) + 1)
        bad = np.nonzero(np.diff(ordinates) <= 0)[0]
        if len(bad) > 0:
            raise ZeroTableError("ordinates are not ascending", line=int(bad[0]) + 2)

    def __len__(self):
        return len(self.ordinates)

    @property
    def count(self):
        return len(self.ordinates)


@dataclass(frozen=True, eq=False)
class DeltaStats:
    """
    A sample with its moments, fixed-width histogram (outliers clipped into
    the edge bins) and normality p-values.
    """
    deltas: np.ndarray
    mean: float
    stddev: float
    bin_edges: np.ndarray
    counts: np.ndarray
    fit_pvalue: float
    ks_pvalue: float

    @property
    def count(self):
        return len(self.deltas)

    @property
    def variance(self):
        return self.stddev ** 2

    @property
    def mean_abs(self):
        return float(np.mean(np.abs(self.deltas)))

    @property
    def bin_centers(self):
        return (self.bin_edges[:-1] + self.bin_edges[1:]) / 2

    def normal_pdf_counts(self):
        """Expected counts per bin of the fitted normal distribution."""
        width = np.diff(self.bin_edges)
        return self.count * width * sstats.norm.pdf(self.bin_centers, self.mean, self.stddev)


@dataclass(frozen=True, eq=False)
class PairCorrHistogram:
    alphas: np.ndarray
    width: float
    empirical: np.ndarray
    gue: np.ndarray
    normalization: str = 'window'
    height: Optional[float] = None

    @property
    def centers(self):
        return self.alphas + self.width / 2


def tilde_t_array(ns):
    """Vectorised float64 version of solver.tilde_t for desk-scale indices."""
    m = np.asarray(ns, dtype=np.float64) - 11. / 8.
    w = special.lambertw(m / np.e, 0).real
    return 2 * np.pi * m / w


def delta_n(t_true, n):
    """
    Normalized fluctuation ((t_n - t~_n) / 2 pi) log(t~_n / 2 pi e) of an ordinate
    around its smooth approximation.
    """
    tt = tilde_t(n)
    ctx = DEFAULT_POLICY.context(tt)
    tt = ctx.mpf(tt)
    return (ctx.mpf(t_true) - tt) / (2 * ctx.pi) * ctx.log(tt / (2 * ctx.pi * ctx.e))


def _histogram(values, lo, hi, width):
    n_bins = int(round((hi - lo) / width))
    edges = lo + width * np.arange(n_bins + 1)
    clipped = np.clip(values, edges[0], edges[-1])
    counts, _ = np.histogram(clipped, bins=edges)
    return edges, counts


def _chi2_pvalue(counts, edges, loc, scale):
    # outer bins hold the clipped tails
    cdf = sstats.norm.cdf(edges, loc, scale)
    cdf[0], cdf[-1] = 0., 1.
    expected = counts.sum() * np.diff(cdf)
    observed_merged, expected_merged = [], []
    obs_acc = exp_acc = 0.
    for obs, exp in zip(counts, expected):
        obs_acc += obs
        exp_acc += exp
        if exp_acc >= CHI2_MIN_EXPECTED:
            observed_merged.append(obs_acc)
            expected_merged.append(exp_acc)
            obs_acc = exp_acc = 0.
    if exp_acc > 0 and expected_merged:
        observed_merged[-1] += obs_acc
        expected_merged[-1] += exp_acc
    observed = np.array(observed_merged)
    expected = np.array(expected_merged)
    if len(observed) < 4:
        return float('nan')
    expected *= observed.sum() / expected.sum()
    return float(sstats.chisquare(observed, expected, ddof=2).pvalue)


def distribution_stats(values, lo, hi, width, reference=None):
    """
    DeltaStats of `values` on a histogram of `width` over [lo, hi].
    Pearson chi2 is taken against the fitted normal; KS against `reference`
    (loc, scale) when given, else against the fitted normal too.
    """
    values = np.asarray(values, dtype=np.float64)
    mean = float(np.mean(values))
    stddev = float(np.std(values, ddof=1))
    edges, counts = _histogram(values, lo, hi, width)
    loc, scale = reference if reference is not None else (mean, stddev)
    return DeltaStats(deltas=values, mean=mean, stddev=stddev, bin_edges=edges, counts=counts,
                      fit_pvalue=_chi2_pvalue(counts, edges, mean, stddev),
                      ks_pvalue=float(sstats.kstest(values, 'norm', args=(loc, scale)).pvalue))


def delta_stats(zeros, first_index=1):
    """
    Fluctuation set {delta_n} of a zero table whose first ordinate has index
    `first_index`, with histogram of width 0.05 on [-1.5, 1.5].
    """
    if zeros.count < MIN_STATS_COUNT:
        raise DomainError(f"delta_stats needs at least {MIN_STATS_COUNT} ordinates")
    ns = np.arange(first_index, first_index + zeros.count)
    tt = tilde_t_array(ns)
    deltas = (zeros.ordinates - tt) / (2 * np.pi) * np.log(tt / (2 * np.pi * np.e))
    return distribution_stats(deltas, DELTA_RANGE[0], DELTA_RANGE[1], DELTA_BIN_WIDTH)


def gaussian_samples(count, sigma, seed):
    """
    `count` N(0, sigma) samples by the Box-Muller transform over the uniform
    stream of numpy's seeded PCG64 generator.
    """
    if count < 0:
        raise DomainError("count must be >= 0")
    if sigma < 0:
        raise DomainError("sigma must be >= 0")
    rng = np.random.default_rng(seed)
    half = (count + 1) // 2
    u1 = rng.random(half)
    u2 = rng.random(half)
    radius = np.sqrt(-2. * np.log1p(-u1))
    angle = 2 * np.pi * u2
    pairs = np.column_stack((radius * np.cos(angle), radius * np.sin(angle)))
    return sigma * pairs.ravel()[:count]


def sample_model_zeros(count, sigma, seed, first_index=1):
    """
    Gaussian model of the zeros: t^_n = t~_n + 2 pi r_n / log(t~_n / 2 pi e) with
    r_n ~ N(0, sigma) independent, returned sorted as a ZeroTable.
    """
    if count < 1:
        raise DomainError("count must be >= 1")
    ns = np.arange(first_index, first_index + count)
    tt = tilde_t_array(ns)
    if sigma == 0:
        return ZeroTable(tt, source='model sigma=0')
    r = gaussian_samples(count, sigma, seed)
    t_hat = tt + 2 * np.pi * r / np.log(tt / (2 * np.pi * np.e))
    return ZeroTable(np.sort(t_hat), source=f'model sigma={sigma} seed={seed}')


def gue_pair_correlation(u):
    """1 - (sin(pi u) / (pi u))^2."""
    return 1 - np.sinc(np.asarray(u, dtype=np.float64)) ** 2


def _unfolding_density(t):
    # zeros per unit height at t
    return np.log(t / (2 * np.pi)) / (2 * np.pi)


def pair_correlation(zeros, alpha_max=3., width=0.05, normalization='window'):
    """
    Histogram of normalized differences d = (t - t') log(T / 2 pi e) / 2 pi over
    ordered pairs t > t', on bins [alpha, alpha + width) up to alpha_max,
    divided by N(T) width.

    normalization='window' uses T = the largest ordinate and
    N(T) = (T / 2 pi) log(T / 2 pi e). normalization='local' unfolds every
    pair at its own mean height and divides by the number of ordinates.
    """
    if zeros.count < MIN_STATS_COUNT:
        raise DomainError(f"pair_correlation needs at least {MIN_STATS_COUNT} ordinates")
    if not width > 0:
        raise DomainError("width must be > 0")
    if normalization not in ('window', 'local'):
        raise ValueError(f"normalization should be 'window' or 'local', not {normalization!r}")

    t = zeros.ordinates
    height = float(t[-1])
    n_bins = int(round(alpha_max / width))
    alphas = width * np.arange(n_bins)
    edges = width * np.arange(n_bins + 1)
    counts = np.zeros(n_bins, dtype=np.int64)
    window_scale = np.log(height / (2 * np.pi * np.e)) / (2 * np.pi)

    lag = 1
    while lag < len(t):
        if normalization == 'window':
            d = (t[lag:] - t[:-lag]) * window_scale
        else:
            # pairs around a negative mean height (model outliers at n = 1, 2) are dropped
            with np.errstate(invalid='ignore'):
                d = (t[lag:] - t[:-lag]) * _unfolding_density((t[lag:] + t[:-lag]) / 2)
            d = d[~np.isnan(d)]
        if d.min() >= edges[-1]:
            break
        counts += np.histogram(d, bins=edges)[0]
        lag += 1

    if normalization == 'window':
        n_total = height / (2 * np.pi) * np.log(height / (2 * np.pi * np.e))
    else:
        n_total = float(len(t))
    empirical = counts / (n_total * width)
    return PairCorrHistogram(alphas=alphas, width=width, empirical=empirical,
                             gue=gue_pair_correlation(alphas + width / 2),
                             normalization=normalization, height=height)


def kac_experiment(n_primes, t_range_start, samples, seed, table=None):
    """
    Distribution of B_N(u) / sqrt(N) for u uniform in [T, 2T]; tends to a
    centered normal of variance 1/2. KS is taken against N(0, sqrt(1/2)).
    """
    if samples < MIN_STATS_COUNT:
        raise DomainError(f"kac_experiment needs samples >= {MIN_STATS_COUNT}")
    if n_primes < MIN_STATS_COUNT:
        raise DomainError(f"kac_experiment needs n_primes >= {MIN_STATS_COUNT}")
    if table is None:
        table = generate_primes(n_primes)
    logs = table.log_array[:n_primes]
    T = float(t_range_start)
    rng = np.random.default_rng(seed)
    u = T + T * rng.random(samples)

    values = np.empty(samples)
    for start in range(0, samples, KAC_BLOCK):
        block = u[start:start + KAC_BLOCK]
        values[start:start + KAC_BLOCK] = np.cos(np.outer(block, logs)).sum(axis=1)
    values /= np.sqrt(n_primes)
    return distribution_stats(values, KAC_RANGE[0], KAC_RANGE[1], KAC_BIN_WIDTH,
                              reference=(0., np.sqrt(0.5)))


def load_zeros(path):
    """
    Read a zeros file: one decimal ordinate per line, ascending. Blank lines
    are skipped.
    """
    path = Path(path)
    ordinates = []
    previous = None
    with open(path, 'r', encoding='utf8') as f:
        for line_number, line in enumerate(f, start=1):
            text = line.strip()
            if not text:
                continue
            try:
                value = float(text)
            except ValueError:
                raise ZeroTableError(f"cannot parse {text[:40]!r} as an ordinate", line=line_number)
            if not np.isfinite(value):
                raise ZeroTableError(f"ordinate {text} is not finite", line=line_number)
            if previous is not None and not value > previous:
                raise ZeroTableError(f"ordinate {text} does not increase", line=line_number)
            ordinates.append(value)
            previous = value
    if not ordinates:
        raise ZeroTableError(f"{path}: no ordinates found")
    return ZeroTable(np.array(ordinates), source=str(path))
