from ..baseexperiment import BaseExperiment
from ..hpnum import format_fixed
from ..primes import enumerate_smooth


class PrimesExperiment(BaseExperiment):
    """
    The first primes with their logarithms.
    """

    experiment_name = 'primes'
    output_columns = ['k', 'p', 'log_p']

    _default_params = {
        'count': 1000,
        'log_digits': 20,
    }

    _params_description = {
        'count': "Number of primes (at most 1e8)",
        'log_digits': "Fractional digits of log p in the output",
    }

    experiment_description = """Sieves the first `count` primes (through the prime cache when one is
    configured) and lists them with log p at working precision."""

    def _run(self, output_folder):
        p = self.params
        table = self.get_primes(int(p['count']))
        dps = table.dps + p['log_digits']
        rows = []
        for k, (prime, log_p) in enumerate(zip(table.primes.tolist(), table.log_slice(0, table.count, dps)),
                                           start=1):
            rows.append([str(k), str(prime), format_fixed(log_p, p['log_digits'])])
        self.summary = {'count': table.count, 'p_max': table.p_max()}
        return rows


class SmoothExperiment(BaseExperiment):
    """
    Members of the smooth subseries support: integers whose prime factors are
    all among the first `gens` primes.
    """

    experiment_name = 'smooth'
    output_columns = ['n']

    _default_params = {
        'gens': 2,
        'limit': 100,
    }

    _params_description = {
        'gens': "Number of generating primes",
        'limit': "Largest member listed",
    }

    experiment_description = """Enumerates the integers up to `limit` that factor over the first
    `gens` primes (the terms of the finite Euler product as a Dirichlet series)."""

    def _run(self, output_folder):
        smooth = enumerate_smooth(int(self.params['gens']), int(self.params['limit']))
        self.summary = {'count': len(smooth)}
        return [[str(n)] for n in smooth]
