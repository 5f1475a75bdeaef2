from ..baseexperiment import BaseExperiment
from ..stats import delta_stats, kac_experiment, load_zeros, pair_correlation, sample_model_zeros
from ..tools import DomainError, format_float


def _distribution_rows(result):
    return [[format_float(center), str(int(count)), format_float(expected)]
            for center, count, expected in zip(result.bin_centers, result.counts, result.normal_pdf_counts())]


def _distribution_summary(result):
    return {
        'count': result.count,
        'mean': result.mean,
        'stddev': result.stddev,
        'variance': result.variance,
        'mean_abs': result.mean_abs,
        'fit_pvalue': result.fit_pvalue,
        'ks_pvalue': result.ks_pvalue,
    }


class DeltaStatsExperiment(BaseExperiment):
    """
    Distribution of the normalized fluctuations of published zero ordinates.
    """

    experiment_name = 'deltastats'
    output_columns = ['bin_center', 'count', 'normal_pdf_count']

    _default_params = {
        'zeros_file': None,
        'first_index': 1,
    }

    _params_description = {
        'zeros_file': "Zeros file, one ascending ordinate per line (required)",
        'first_index': "Index n of the first ordinate in the file",
    }

    experiment_description = """Histograms delta_n = ((t_n - t~_n) / 2 pi) log(t~_n / 2 pi e) with bins of
    0.05 on [-1.5, 1.5] and tests it against the fitted normal (Pearson chi2 and KS)."""

    def _run(self, output_folder):
        if self.params['zeros_file'] is None:
            raise DomainError("deltastats needs a zeros_file")
        zeros = load_zeros(self.params['zeros_file'])
        result = delta_stats(zeros, first_index=int(self.params['first_index']))
        self.summary = _distribution_summary(result)
        return _distribution_rows(result)


class PairCorrExperiment(BaseExperiment):
    """
    Pair correlation of zero ordinates (published or from the Gaussian model)
    against the GUE prediction.
    """

    experiment_name = 'paircorr'
    output_columns = ['u', 'empirical', 'gue']

    _default_params = {
        'zeros_file': None,
        'model': False,
        'count': 100000,
        'sigma': 0.274,
        'seed': None,
        'alpha_max': 3.,
        'width': 0.05,
        'normalization': 'window',
    }

    _params_description = {
        'zeros_file': "Zeros file, one ascending ordinate per line",
        'model': "Use model zeros t~_n + 2 pi r_n / log(t~_n / 2 pi e) instead of a file",
        'count': "Number of model zeros",
        'sigma': "Standard deviation of the model fluctuations r_n",
        'seed': "Seed of the model sample (default: run configuration)",
        'alpha_max': "Upper end of the u grid",
        'width': "Bin width",
        'normalization': "'window' (T = largest ordinate) or 'local' (each pair at its own height)",
    }

    experiment_description = """Counts normalized ordinate differences on bins [alpha, alpha + width) and
    compares them with 1 - (sin(pi u) / (pi u))^2."""

    def _run(self, output_folder):
        p = self.params
        if p['model']:
            seed = self.config.seed if p['seed'] is None else int(p['seed'])
            zeros = sample_model_zeros(int(p['count']), float(p['sigma']), seed)
        elif p['zeros_file'] is not None:
            zeros = load_zeros(p['zeros_file'])
        else:
            raise DomainError("paircorr needs either a zeros_file or model=True")
        result = pair_correlation(zeros, alpha_max=p['alpha_max'], width=p['width'],
                                  normalization=p['normalization'])
        self.summary = {'count': zeros.count, 'source': zeros.source, 'height': result.height,
                        'max_abs_deviation': float(abs(result.empirical - result.gue).max())}
        return [[format_float(u), format_float(e), format_float(g)]
                for u, e, g in zip(result.centers, result.empirical, result.gue)]


class KacExperiment(BaseExperiment):
    """
    Central limit behaviour of B_N(u) / sqrt(N) for random u in [T, 2T].
    """

    experiment_name = 'kac'
    output_columns = ['bin_center', 'count', 'normal_pdf_count']

    _default_params = {
        'n_primes': 10000,
        't': 1e6,
        'samples': 10000,
        'seed': None,
    }

    _params_description = {
        'n_primes': "Number of primes N",
        't': "Start T of the sampling range [T, 2T]",
        'samples': "Number of samples",
        'seed': "Seed (default: run configuration)",
    }

    experiment_description = """Samples B_N(u) / sqrt(N) = sum cos(u log p_k) / sqrt(N) over u uniform in
    [T, 2T]; the limit is a centered normal of variance 1/2."""

    def _run(self, output_folder):
        p = self.params
        seed = self.config.seed if p['seed'] is None else int(p['seed'])
        table = self.get_primes(int(p['n_primes']))
        result = kac_experiment(int(p['n_primes']), float(p['t']), int(p['samples']), seed, table=table)
        self.summary = _distribution_summary(result)
        return _distribution_rows(result)
