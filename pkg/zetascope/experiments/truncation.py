import numpy as np

from ..baseexperiment import BaseExperiment
from ..eulerprod import PNT_MIN_T, PrimeArgumentSum, TruncationPolicy, a_pnt, r_n_estimate
from ..refzeta import a_exact, r_n_direct
from ..tools import format_float


class RnExperiment(BaseExperiment):
    """
    Truncation error of the Euler product at N = [t^2]: measured against the
    reference zeta and estimated by the closed form.
    """

    experiment_name = 'rn'
    output_columns = ['t', 'n_primes', 'abs_r_direct', 'abs_r_estimate']

    _default_params = {
        'sigma': 0.75,
        'tmin': 10.,
        'tmax': 100.,
        'points': 91,
        'max_primes': 10 ** 6,
        'factor': 5.,
    }

    _params_description = {
        'sigma': "Real part of s (> 1/2)",
        'tmin': "First ordinate",
        'tmax': "Last ordinate (at most 1e4)",
        'points': "Number of equally spaced ordinates",
        'max_primes': "Upper bound on N, whatever [t^2]",
        'factor': "Agreement factor reported in the summary",
    }

    experiment_description = """Compares |R_N(s)| = |log zeta(s) - log zeta_N(s)| with the estimate
    N^(1-s) / ((s-1) log^s N) along sigma + it, N = [t^2]."""

    def _run(self, output_folder):
        p = self.params
        ts = np.linspace(p['tmin'], p['tmax'], int(p['points']))
        policy = TruncationPolicy(limit=int(p['max_primes']))
        table = self.get_primes(policy.cap(ts[-1], warn=False))
        rows = []
        direct, estimate = [], []
        for t in ts:
            n = policy.effective(t, table, warn=False)
            s = complex(p['sigma'], t)
            r_direct = abs(r_n_direct(s, table, n, self.config.precision))
            r_estimate = abs(r_n_estimate(s, n))
            direct.append(float(r_direct))
            estimate.append(float(r_estimate))
            rows.append([format_float(t), str(n), format_float(r_direct), format_float(r_estimate)])

        direct, estimate = np.array(direct), np.array(estimate)
        ratio = direct / estimate
        log_n = np.log(np.floor(ts ** 2))
        self.summary = {
            'agreement_fraction': float(np.mean((ratio <= p['factor']) & (ratio >= 1 / p['factor']))),
            'decay_exponent': float(np.polyfit(np.log(ts), np.log(estimate), 1)[0]),
            'decay_exponent_log_corrected': float(np.polyfit(np.log(ts), np.log(estimate * log_n ** p['sigma']),
                                                             1)[0]),
        }
        return rows


class ArgScanExperiment(BaseExperiment):
    """
    a(t) along the line 1/2 + delta + it, exact and from primes.
    """

    experiment_name = 'argscan'
    output_columns = ['t', 'a_exact', 'a_euler', 'a_pnt', 'delta_a']

    _default_params = {
        'tmin': 10.,
        'tmax': 80.,
        'step': 0.05,
        'delta': 0.01,
        'n_primes': 10 ** 5,
        'respect_cap': True,
    }

    _params_description = {
        'tmin': "First ordinate (>= 10)",
        'tmax': "Last ordinate (at most 1e4)",
        'step': "Grid step",
        'delta': "Distance to the critical line",
        'n_primes': "Number of primes N",
        'respect_cap': "Clip N to [t^2] at every ordinate",
    }

    experiment_description = """Scans (1/pi) arg zeta(1/2 + delta + it) from the reference zeta against
    the same quantity from the first N primes, with its smooth part a_pnt and the rest."""

    def _run(self, output_folder):
        p = self.params
        n_points = int(round((p['tmax'] - p['tmin']) / p['step'])) + 1
        ts = p['tmin'] + p['step'] * np.arange(n_points)
        table = self.get_primes(int(p['n_primes']))
        rows = []
        differences, values = [], []
        prime_sum = None
        for t in ts:
            n = table.count
            if p['respect_cap']:
                n = TruncationPolicy(requested=n).effective(t, table, warn=False)
            if prime_sum is None or prime_sum.n != n or not prime_sum.covers(t):
                prime_sum = PrimeArgumentSum(t, p['delta'], table, n, n_jobs=self.config.n_jobs)
            exact = float(a_exact(t, p['delta'], self.config.precision))
            euler = prime_sum.argument(t)
            smooth = float(a_pnt(t, table.p_max(n))) if t >= PNT_MIN_T else 0.
            differences.append(abs(exact - euler))
            values.append(euler)
            rows.append([format_float(t), format_float(exact), format_float(euler), format_float(smooth),
                         format_float(euler - smooth)])

        self.summary = {
            'mean_abs_difference': float(np.mean(differences)),
            'max_abs_a_euler': float(np.max(np.abs(values))),
        }
        return rows
