from .experiments import (PrimesExperiment, SmoothExperiment, ZeroExperiment, ScanExperiment, TildeExperiment,
                          RnExperiment, ArgScanExperiment, DeltaStatsExperiment, PairCorrExperiment, KacExperiment)

experiment_full_list = [
    PrimesExperiment,
    SmoothExperiment,
    ZeroExperiment,
    ScanExperiment,
    TildeExperiment,
    RnExperiment,
    ArgScanExperiment,
    DeltaStatsExperiment,
    PairCorrExperiment,
    KacExperiment,
]

experiment_dict = {e.experiment_name: e for e in experiment_full_list}


def _experiment_class(experiment_name_or_class):
    if isinstance(experiment_name_or_class, str):
        if experiment_name_or_class not in experiment_dict:
            raise ValueError(f'Unknown experiment: {experiment_name_or_class}')
        return experiment_dict[experiment_name_or_class]
    elif experiment_name_or_class in experiment_full_list:
        return experiment_name_or_class
    else:
        raise ValueError('Unknown experiment')


# generic launcher via function approach
def run_experiment(experiment_name_or_class, output_folder=None, config=None, verbose=False, raise_error=True,
                   delete_output_folder=False, **params):
    """
    Generic function to run an experiment via function approach.

    Two usages with name or class:

    by name:
       >>> rows = run_experiment('zero', n='1e21')

    by class:
       >>> rows = run_experiment(ZeroExperiment, n='1e21')

    Parameters
    ----------
    experiment_name_or_class: str or ExperimentClass
        The experiment to run
    output_folder: str or Path
        Path to output folder (default '<experiment_name>_output')
    config: RunConfig
        Precision, prime count, delta, seed, cache directory and n_jobs. Defaults to RunConfig.from_env()
    verbose: bool
        If True, output is verbose
    raise_error: bool
        If True, an ExperimentError is raised if the experiment fails (default). If False, the process continues
        and the error is logged in the log file.
    delete_output_folder: bool
        If True, output folder is deleted once the result is read back (default False)
    **params: keyword args
        Experiment specific arguments (they can be retrieved with 'get_default_params(experiment_name_or_class)')

    Returns
    -------
    rows: list of dict
        The CSV rows, keyed by column name. None if the run failed with raise_error=False.
    """
    ExperimentClass = _experiment_class(experiment_name_or_class)
    experiment = ExperimentClass(output_folder=output_folder, config=config, verbose=verbose,
                                 delete_output_folder=delete_output_folder)
    experiment.set_params(**params)
    run_time = experiment.run(raise_error=raise_error)
    if run_time is None:
        return None
    return experiment.get_result()


def available_experiments():
    '''
    Lists available experiments.
    '''
    return sorted(list(experiment_dict.keys()))


def get_default_params(experiment_name_or_class):
    '''
    Returns default parameters for the specified experiment.

    Parameters
    ----------
    experiment_name_or_class: str or ExperimentClass
        The experiment to retrieve default parameters from

    Returns
    -------
    default_params: dict
        Dictionary with default params for the specified experiment
    '''
    return _experiment_class(experiment_name_or_class).default_params()


def get_params_description(experiment_name_or_class):
    '''
    Returns a description of the parameters for the specified experiment.
    '''
    return _experiment_class(experiment_name_or_class).params_description()


def get_experiment_description(experiment_name_or_class):
    '''
    Returns a brief description of the specified experiment.
    '''
    return _experiment_class(experiment_name_or_class).experiment_description


def run_primes(*args, **kwargs):
    """
    Lists the first primes with their logarithms. See 'run_experiment' for the arguments and
    get_default_params('primes') for the experiment parameters.
    """
    return run_experiment('primes', *args, **kwargs)


def run_smooth(*args, **kwargs):
    """Lists the smooth numbers over the first primes."""
    return run_experiment('smooth', *args, **kwargs)


def run_zero(*args, **kwargs):
    """
    Solves one zero ordinate from the first N primes. See 'run_experiment' for the arguments and
    get_default_params('zero') for the experiment parameters.

    Returns
    -------
    rows: list of dict
        One row: n, t, n_primes, delta, predicted_error, residual, iterations
    """
    return run_experiment('zero', *args, **kwargs)


def run_scan(*args, **kwargs):
    """Solves consecutive zero ordinates."""
    return run_experiment('scan', *args, **kwargs)


def run_tilde(*args, **kwargs):
    return run_experiment('tilde', *args, **kwargs)


def run_rn(*args, **kwargs):
    """Truncation error of the Euler product, measured and estimated."""
    return run_experiment('rn', *args, **kwargs)


def run_argscan(*args, **kwargs):
    """Scan of a(t), exact and from primes."""
    return run_experiment('argscan', *args, **kwargs)


def run_deltastats(*args, **kwargs):
    """
    Fluctuation statistics of a table of zero ordinates. The 'zeros_file' parameter is required.
    """
    return run_experiment('deltastats', *args, **kwargs)


def run_paircorr(*args, **kwargs):
    """Pair correlation of zeros against the GUE curve."""
    return run_experiment('paircorr', *args, **kwargs)


def run_kac(*args, **kwargs):
    return run_experiment('kac', *args, **kwargs)
