import json

from zetascope.baseexperiment import LOG_FILENAME, PARAMS_FILENAME
from zetascope.cli import dispatch


def _dispatch(tmp_path, *args):
    return dispatch(['--cache-dir', str(tmp_path / 'cache'), '--output-folder', str(tmp_path / 'out')] + list(args))


def test_primes(tmp_path, capsys):
    assert _dispatch(tmp_path, 'primes', '--count', '10') == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == 'k,p,log_p'
    assert len(lines) == 11
    assert lines[10].startswith('10,29,3.36729582998647402718')
    assert (tmp_path / 'out' / 'primes' / 'primes.csv').is_file()
    # the table went through the prime cache
    assert (tmp_path / 'cache' / 'primes_10.bin').is_file()


def test_tilde_with_precision_options(tmp_path, capsys):
    args = ['--target-digits', '30', 'tilde', '--from', '1e21', '--count', '2', '--digits', '3']
    assert _dispatch(tmp_path, *args) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == 'n,tilde_t'
    assert lines[1].startswith('1000000000000000000000,1441768975095469735')
    assert lines[2].startswith('1000000000000000000001,')
    params = json.loads((tmp_path / 'out' / 'tilde' / PARAMS_FILENAME).read_text())
    assert params['config']['target_fractional_digits'] == 30
    assert params['experiment_params']['n_from'] == '1e21'


def test_usage_errors(tmp_path, capsys):
    assert _dispatch(tmp_path, 'zero', '--n', '0') == 2
    assert _dispatch(tmp_path, 'zero', '--n', 'abc') == 2
    assert _dispatch(tmp_path, 'zero') == 2
    assert _dispatch(tmp_path, 'not_a_command') == 2
    assert _dispatch(tmp_path, 'deltastats', '--zeros-file', str(tmp_path / 'missing.txt')) == 2
    assert _dispatch(tmp_path, 'paircorr') == 2
    assert _dispatch(tmp_path, 'paircorr', '--model', '--zeros-file', __file__) == 2
    assert _dispatch(tmp_path, 'rn', '--sigma', '0.5') == 2
    assert _dispatch(tmp_path, 'scan', '--from', '1e21', '--count', '10001') == 2
    assert 'Error' in capsys.readouterr().err
    # nothing was run
    assert not (tmp_path / 'out').exists()


def test_computation_error(tmp_path, capsys):
    # below the solver range
    assert _dispatch(tmp_path, 'zero', '--n', '1000', '--primes', '100') == 1
    assert 'Error' in capsys.readouterr().err
    log = json.loads((tmp_path / 'out' / 'zero' / LOG_FILENAME).read_text())
    assert log['error'] is True


def test_help(capsys):
    assert dispatch(['--help']) == 0
    out = capsys.readouterr().out
    for command in ['zero', 'scan', 'tilde', 'rn', 'argscan', 'deltastats', 'paircorr', 'kac', 'reproduce']:
        assert command in out


def test_list(capsys):
    assert dispatch(['list']) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == 'experiment,description'
    assert len(lines) == 11
    assert lines[1].startswith('argscan,')


def test_cachecheck(tmp_path, capsys):
    assert _dispatch(tmp_path, 'cachecheck', '--count', '100') == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == 'path,count,ok'
    assert lines[1].endswith(',100,True')


def test_cache_dir_not_writable(tmp_path, capsys):
    blocker = tmp_path / 'blocker'
    blocker.write_text('')
    args = ['--cache-dir', str(blocker / 'cache'), 'cachecheck', '--count', '10']
    assert dispatch(args) == 1
    err = capsys.readouterr().err.strip().splitlines()
    assert len(err) == 1
    assert err[0].startswith('Error: cannot write prime cache')


def test_smooth_then_kac(tmp_path, capsys):
    assert _dispatch(tmp_path, 'smooth', '--gens', '2', '--limit', '10') == 0
    assert capsys.readouterr().out.splitlines() == ['n', '1', '2', '3', '4', '6', '8', '9']
    args = ['kac', '--primes', '1000', '--t', '10000', '--samples', '1000', '--seed', '3']
    assert _dispatch(tmp_path, *args) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == 'bin_center,count,normal_pdf_count'
    assert sum(int(line.split(',')[1]) for line in lines[1:]) == 1000
