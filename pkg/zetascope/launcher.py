"""
Utils functions to launch several experiments in one working folder, in parallel or not.
"""
import json
import os
import shutil
from pathlib import Path

from joblib import Parallel, delayed

from .baseexperiment import LOG_FILENAME
from .experimentlist import experiment_dict
from .tools import DomainError, ExperimentError


def _run_one(arg_list):
    # one tuple argument so that every engine can map over the task list
    experiment_name, output_folder, config, verbose, params = arg_list
    ExperimentClass = experiment_dict[experiment_name]
    experiment = ExperimentClass(output_folder=output_folder, config=config, verbose=verbose,
                                 delete_output_folder=False)
    experiment.set_params(**params)
    experiment.run(raise_error=False)


def run_experiments(experiment_list, working_folder, experiment_params={}, mode='raise', engine=None,
                    engine_kwargs={}, config=None, verbose=False, with_output=True):
    """
    This runs several experiments into one working folder.
    Simple implementation are a loop or joblib workers.

    Parameters
    ----------

    experiment_list: list of str or dict
        Experiment names. A dict maps a label (the subfolder name) to an experiment name,
        which allows the same experiment twice with different parameters.

    working_folder: str
        The working directory.
        With mode='raise' this must not exist before calling this function.

    experiment_params: dict of dict with label as key
        This allow to overwrite default params for experiments.

    mode: 'raise' or 'overwrite' or 'keep'
        The mode when the subfolder of an experiment already exists.
            * 'raise' : raise error if subfolder exists
            * 'overwrite' : force recompute
            * 'keep' : do not compute again if subfolder exists and log is OK

    engine: str
        'loop' or 'joblib'

    engine_kwargs: dict
        This contains kwargs specific to the launcher engine:
            * 'loop' : no kargs
            * 'joblib' : {'n_jobs': , 'backend': } forwarded to joblib.Parallel

    config: RunConfig
        Shared by every experiment.

    verbose: bool
        default False

    with_output: bool
        return the output.

    Returns
    ----------

    results : dict
        results[label] is the list of CSV rows of that experiment.
        Failed experiments are left out; their log keeps the trace.
    """
    if mode not in ('raise', 'overwrite', 'keep'):
        raise DomainError('mode not in raise, overwrite, keep')
    working_folder = Path(working_folder)
    if mode == 'raise' and working_folder.exists():
        raise ExperimentError(f'working_folder {working_folder} already exists, please remove it')

    if engine is None:
        engine = 'loop'

    if isinstance(experiment_list, dict):
        labelled = dict(experiment_list)
    else:
        labelled = {name: name for name in experiment_list}

    for label, experiment_name in labelled.items():
        if experiment_name not in experiment_dict:
            raise DomainError('{} is not in experiment list'.format(experiment_name))

    if engine == 'joblib':
        backend = engine_kwargs.get('backend', 'loky')
        for experiment_name in labelled.values():
            if not experiment_dict[experiment_name].compatible_with_parallel.get(backend, False):
                raise DomainError(f"{experiment_name} is not compatible with joblib {backend} backend")

    task_list = []
    for label, experiment_name in labelled.items():
        output_folder = working_folder / label

        if is_log_ok(output_folder):
            if mode == 'raise':
                raise ExperimentError('output folder already exists for {}'.format(label))
            elif mode == 'overwrite':
                shutil.rmtree(str(output_folder))
            elif mode == 'keep':
                continue
        params = experiment_params.get(label, {})
        task_list.append((experiment_name, output_folder, config, verbose, params))

    if engine == 'loop':
        # simple loop in main process
        for arg_list in task_list:
            _run_one(arg_list)

    elif engine == 'joblib':
        n_jobs = engine_kwargs.get('n_jobs', -1)
        Parallel(n_jobs=n_jobs, backend=backend)(delayed(_run_one)(arg_list) for arg_list in task_list)

    else:
        raise DomainError("engine must be 'loop' or 'joblib'")

    if with_output:
        return collect_experiment_outputs(working_folder)


def _read_log(output_folder):
    log_file = Path(output_folder) / LOG_FILENAME
    if not log_file.is_file():
        return None
    with open(log_file, mode='r', encoding='utf8') as logfile:
        return json.load(logfile)


def is_log_ok(output_folder):
    # log is OK when run_time is not None
    log = _read_log(output_folder)
    return log is not None and log.get('run_time', None) is not None


def iter_output_folders(working_folder):
    """
    Iterator over the finished experiments of a working folder: (label, experiment_name, output_folder).
    """
    working_folder = Path(working_folder)
    for label in sorted(os.listdir(working_folder)):
        output_folder = working_folder / label
        if not output_folder.is_dir() or not is_log_ok(output_folder):
            continue
        yield label, _read_log(output_folder)['experiment_name'], output_folder


def collect_experiment_outputs(working_folder):
    """
    Collect results in a working folder.

    The output is a dict results[label] of CSV rows.
    """
    results = {}
    for label, experiment_name, output_folder in iter_output_folders(working_folder):
        ExperimentClass = experiment_dict[experiment_name]
        results[label] = ExperimentClass.get_result_from_folder(output_folder)
    return results
