"""
Command line front end: one subcommand per experiment.

Each subcommand runs its experiment into `<output-folder>/<experiment>` (or
`<experiment>_output` in the current directory) and copies the resulting CSV
to standard output. Diagnostics go to standard error.
"""
import sys
from pathlib import Path

import click

from .cache import cache_roundtrip
from .config import RunConfig
from .experimentlist import available_experiments, experiment_dict, get_experiment_description, run_experiment
from .launcher import iter_output_folders, run_experiments
from .solver import parse_index
from .tools import CacheFormatError, DomainError, ZetaScopeError, echo

TABLE_ONE_SCANS = {'scan_1e21': '1e21-1', 'scan_1e22': '1e22-1'}


class ZeroIndex(click.ParamType):
    """Zero index in integer, scientific or power notation. Kept as text, validated here."""
    name = 'index'

    def convert(self, value, param, ctx):
        try:
            parse_index(value)
        except DomainError as err:
            self.fail(str(err), param, ctx)
        return str(value)


ZERO_INDEX = ZeroIndex()
POSITIVE_INT = click.IntRange(min=1)
ZEROS_FILE = click.Path(exists=True, dir_okay=False, path_type=Path)


@click.group(context_settings={'help_option_names': ['-h', '--help']})
@click.option('--output-folder', type=click.Path(file_okay=False, path_type=Path), default=None,
              help="Base folder; each experiment writes into <output-folder>/<experiment>.")
@click.option('--cache-dir', type=click.Path(file_okay=False, path_type=Path), default=None,
              help="Prime cache and zero ledger directory (default: $ZETASCOPE_CACHE or ~/.cache/zetascope).")
@click.option('--n-jobs', type=int, default=1, show_default=True, help="joblib workers for the prime sums.")
@click.option('--verbose', '-v', is_flag=True, help="Progress lines on standard error.")
@click.option('--target-digits', type=click.IntRange(min=0), default=None,
              help="Fractional digits the result must carry (default 12).")
@click.option('--guard-digits', type=click.IntRange(min=0), default=None, help="Guard digits (default 20).")
@click.pass_context
def main(ctx, output_folder, cache_dir, n_jobs, verbose, target_digits, guard_digits):
    """High-precision Riemann zeros from primes through the truncated Euler product."""
    config = RunConfig.from_env(output_folder=output_folder, cache_dir=cache_dir, n_jobs=n_jobs, verbose=verbose)
    ctx.obj = config.with_precision(target_digits, guard_digits)


def _experiment_folder(config, name):
    if config.output_folder is None:
        return None
    return config.output_folder / name


def _run_and_print(config, name, **params):
    experiment = experiment_dict[name](output_folder=_experiment_folder(config, name), config=config,
                                       verbose=config.verbose)
    experiment.set_params(**params)
    experiment.run(raise_error=True)
    click.echo(experiment.result_path.read_text(encoding='utf8'), nl=False)
    echo(f'{name}: {experiment.result_path}', verbose=config.verbose)


@main.command()
@click.option('--count', type=POSITIVE_INT, default=1000, show_default=True)
@click.option('--log-digits', type=click.IntRange(min=1), default=20, show_default=True)
@click.pass_obj
def primes(config, count, log_digits):
    """The first primes with log p."""
    _run_and_print(config, 'primes', count=count, log_digits=log_digits)


@main.command()
@click.option('--n', 'n', type=ZERO_INDEX, required=True, help="Zero index, e.g. 1e21, 10^100, 1e22+1.")
@click.option('--primes', 'n_primes', type=POSITIVE_INT, default=None, help="Number of primes N [5000000].")
@click.option('--delta', type=click.FloatRange(min=0, min_open=True), default=None,
              help="Distance to the critical line [1e-6].")
@click.option('--digits', 'fractional_digits', type=click.IntRange(min=0), default=12, show_default=True)
@click.option('--no-ledger', is_flag=True, help="Do not append to the zero ledger.")
@click.pass_obj
def zero(config, n, n_primes, delta, fractional_digits, no_ledger):
    """Solve the n-th zero ordinate from the first N primes."""
    _run_and_print(config, 'zero', n=n, n_primes=n_primes, delta=delta, fractional_digits=fractional_digits,
                   ledger=not no_ledger)


@main.command()
@click.option('--from', 'n_from', type=ZERO_INDEX, required=True)
@click.option('--count', type=click.IntRange(1, 10 ** 4), default=3, show_default=True)
@click.option('--primes', 'n_primes', type=POSITIVE_INT, default=None)
@click.option('--delta', type=click.FloatRange(min=0, min_open=True), default=None)
@click.option('--digits', 'fractional_digits', type=click.IntRange(min=0), default=12, show_default=True)
@click.option('--no-ledger', is_flag=True)
@click.pass_obj
def scan(config, n_from, count, n_primes, delta, fractional_digits, no_ledger):
    """Solve consecutive zeros."""
    _run_and_print(config, 'scan', n_from=n_from, count=count, n_primes=n_primes, delta=delta,
                   fractional_digits=fractional_digits, ledger=not no_ledger)


@main.command()
@click.option('--from', 'n_from', type=ZERO_INDEX, default='1', show_default=True)
@click.option('--count', type=POSITIVE_INT, default=30, show_default=True)
@click.option('--digits', 'fractional_digits', type=click.IntRange(min=0), default=12, show_default=True)
@click.pass_obj
def tilde(config, n_from, count, fractional_digits):
    """Lambert W approximation of consecutive ordinates."""
    _run_and_print(config, 'tilde', n_from=n_from, count=count, fractional_digits=fractional_digits)


@main.command()
@click.option('--sigma', type=click.FloatRange(min=0.5, min_open=True), default=0.75, show_default=True)
@click.option('--tmin', type=float, default=10., show_default=True)
@click.option('--tmax', type=float, default=100., show_default=True)
@click.option('--points', type=click.IntRange(min=2), default=91, show_default=True)
@click.option('--max-primes', type=POSITIVE_INT, default=10 ** 6, show_default=True)
@click.pass_obj
def rn(config, sigma, tmin, tmax, points, max_primes):
    """Truncation error of the Euler product, measured and estimated."""
    _run_and_print(config, 'rn', sigma=sigma, tmin=tmin, tmax=tmax, points=points, max_primes=max_primes)


@main.command()
@click.option('--tmin', type=float, default=10., show_default=True)
@click.option('--tmax', type=float, default=80., show_default=True)
@click.option('--step', type=click.FloatRange(min=0, min_open=True), default=0.05, show_default=True)
@click.option('--delta', type=click.FloatRange(min=0, min_open=True), default=0.01, show_default=True)
@click.option('--primes', 'n_primes', type=POSITIVE_INT, default=10 ** 5, show_default=True)
@click.option('--respect-cap/--no-respect-cap', default=True, show_default=True,
              help="Clip N to [t^2] at every ordinate.")
@click.pass_obj
def argscan(config, tmin, tmax, step, delta, n_primes, respect_cap):
    """a(t) exact and from primes along a grid."""
    _run_and_print(config, 'argscan', tmin=tmin, tmax=tmax, step=step, delta=delta, n_primes=n_primes,
                   respect_cap=respect_cap)


@main.command()
@click.option('--zeros-file', type=ZEROS_FILE, required=True)
@click.option('--first-index', type=POSITIVE_INT, default=1, show_default=True)
@click.pass_obj
def deltastats(config, zeros_file, first_index):
    """Fluctuation statistics of a table of zero ordinates."""
    _run_and_print(config, 'deltastats', zeros_file=str(zeros_file), first_index=first_index)


@main.command()
@click.option('--zeros-file', type=ZEROS_FILE, default=None)
@click.option('--model', is_flag=True, help="Sample model zeros instead of reading a file.")
@click.option('--count', type=POSITIVE_INT, default=100000, show_default=True)
@click.option('--sigma', type=click.FloatRange(min=0), default=0.274, show_default=True)
@click.option('--seed', type=int, default=None)
@click.option('--alpha-max', type=click.FloatRange(min=0, min_open=True), default=3., show_default=True)
@click.option('--width', type=click.FloatRange(min=0, min_open=True), default=0.05, show_default=True)
@click.option('--normalization', type=click.Choice(['window', 'local']), default='window', show_default=True)
@click.pass_obj
def paircorr(config, zeros_file, model, count, sigma, seed, alpha_max, width, normalization):
    """Pair correlation against the GUE curve."""
    if model == (zeros_file is not None):
        raise click.UsageError("give exactly one of --zeros-file and --model")
    _run_and_print(config, 'paircorr', zeros_file=None if zeros_file is None else str(zeros_file), model=model,
                   count=count, sigma=sigma, seed=seed, alpha_max=alpha_max, width=width,
                   normalization=normalization)


@main.command()
@click.option('--primes', 'n_primes', type=POSITIVE_INT, default=10000, show_default=True)
@click.option('--t', 't', type=click.FloatRange(min=0, min_open=True), default=1e6, show_default=True)
@click.option('--samples', type=POSITIVE_INT, default=10000, show_default=True)
@click.option('--seed', type=int, default=None)
@click.pass_obj
def kac(config, n_primes, t, samples, seed):
    """Central limit behaviour of the prime cosine sum."""
    _run_and_print(config, 'kac', n_primes=n_primes, t=t, samples=samples, seed=seed)


@main.command()
@click.option('--gens', type=POSITIVE_INT, default=2, show_default=True)
@click.option('--limit', type=POSITIVE_INT, default=100, show_default=True)
@click.pass_obj
def smooth(config, gens, limit):
    """Integers whose prime factors are among the first primes."""
    _run_and_print(config, 'smooth', gens=gens, limit=limit)


@main.command()
@click.option('--working-folder', type=click.Path(file_okay=False, path_type=Path), required=True)
@click.option('--zeros-file', type=ZEROS_FILE, default=None, help="Adds deltastats on this table.")
@click.option('--with-zeros', is_flag=True, help="Adds the zero scans around 1e21 and 1e22 (slow).")
@click.option('--mode', type=click.Choice(['raise', 'overwrite', 'keep']), default='raise', show_default=True)
@click.option('--engine', type=click.Choice(['loop', 'joblib']), default='loop', show_default=True)
@click.pass_obj
def reproduce(config, working_folder, zeros_file, with_zeros, mode, engine):
    """Run the whole experiment set into one working folder."""
    experiments = {name: name for name in ['tilde', 'rn', 'argscan', 'kac', 'paircorr']}
    params = {'paircorr': {'model': True}}
    if zeros_file is not None:
        experiments['deltastats'] = 'deltastats'
        params['deltastats'] = {'zeros_file': str(zeros_file)}
    if with_zeros:
        for label, n_from in TABLE_ONE_SCANS.items():
            experiments[label] = 'scan'
            params[label] = {'n_from': n_from, 'count': 3}
    run_experiments(experiments, working_folder, experiment_params=params, mode=mode, engine=engine,
                    config=config, verbose=config.verbose, with_output=False)

    finished = {label: (name, folder) for label, name, folder in iter_output_folders(working_folder)}
    click.echo('label,experiment,ok')
    for label, name in experiments.items():
        click.echo(f'{label},{name},{label in finished}')
    failed = [label for label in experiments if label not in finished]
    if failed:
        raise ZetaScopeError(f"failed experiments: {', '.join(failed)}; see their zetascope_log.json")


@main.command()
@click.option('--count', type=POSITIVE_INT, default=1000, show_default=True)
@click.pass_obj
def cachecheck(config, count):
    """Write then reload a prime table in the cache directory."""
    status = cache_roundtrip(config.cache_dir, count=count, verbose=config.verbose)
    click.echo('path,count,ok')
    click.echo(f"{status['path']},{status['count']},{status['ok']}")
    if not status['ok']:
        raise CacheFormatError(f"prime cache round-trip mismatch in {status['path']}")


@main.command('list')
def list_experiments():
    """Available experiments."""
    click.echo('experiment,description')
    for name in available_experiments():
        description = ' '.join(get_experiment_description(name).split())
        click.echo(f'{name},"{description}"')


def dispatch(argv):
    """
    Run the command line `argv` (without the program name).

    Returns
    -------
    exit_code: int
        0 on success, 2 on usage errors, 1 on computation errors
    """
    try:
        ret = main.main(args=list(argv), prog_name='zetascope', standalone_mode=False)
    except click.exceptions.Abort:
        echo('Aborted!')
        return 1
    except click.ClickException as err:
        err.show()
        return err.exit_code
    except ZetaScopeError as err:
        echo(f'Error: {err}')
        return 1
    except OSError as err:
        echo(f'Error: {err}')
        return 1
    return ret if isinstance(ret, int) else 0


def run():
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == '__main__':
    run()
