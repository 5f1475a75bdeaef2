"""
Some utils functions shared by the library modules and the experiments.
"""
import csv
import json
import sys
from pathlib import Path
from subprocess import DEVNULL, check_output

import mpmath
import numpy as np


class ZetaScopeError(RuntimeError):
    """Base class of every error raised by zetascope"""


class DomainError(ZetaScopeError, ValueError):
    """Raised when an argument lies outside the domain of an operation"""


class PoleError(DomainError):
    """Raised when the argument is at (or numerically next to) a pole"""


class ConvergenceError(ZetaScopeError):
    """Raised when an iteration does not converge within its cap"""


class NoRootInBracketError(ConvergenceError):
    """Raised when the solver bracket holds no sign change, even after widening"""


class PrecisionError(ZetaScopeError):
    """Raised when the working precision cannot resolve the requested digits"""


class ResourceLimitError(ZetaScopeError):
    """Raised when a request exceeds a hard resource cap"""


class CacheFormatError(ZetaScopeError):
    """Raised when a cache file has a bad header or payload"""


class CacheIOError(ZetaScopeError):
    """Raised when the prime cache or the zero ledger cannot be read or written"""


class ZeroTableError(ZetaScopeError, ValueError):
    """Raised when a zeros file cannot be parsed or is not ascending"""

    def __init__(self, message, line=None):
        if line is not None:
            message = f'line {line}: {message}'
        super().__init__(message)
        self.line = line


class ExperimentError(ZetaScopeError):
    """Raised whenever an experiment run fails"""


def echo(*args, verbose=True):
    # diagnostics always go to stderr so that stdout stays clean
    if verbose:
        print(*args, file=sys.stderr)


def get_git_commit(git_folder, shorten=True):
    if git_folder is None:
        return None
    try:
        commit = check_output(['git', 'rev-parse', 'HEAD'], cwd=git_folder, stderr=DEVNULL)
        commit = commit.decode('utf8').strip()
        if shorten:
            commit = commit[:12]
    except Exception:
        commit = None
    return commit


def check_json(d):
    """
    Make a dict json serializable: numpy scalars/arrays, mpmath numbers and paths
    are converted to plain python types.
    """
    out = {}
    for k, v in d.items():
        out[k] = _to_json_value(v)
    return out


def _to_json_value(v):
    if isinstance(v, dict):
        return check_json(v)
    if isinstance(v, (list, tuple)):
        return [_to_json_value(x) for x in v]
    if isinstance(v, np.ndarray):
        return v.tolist()
    if isinstance(v, np.integer):
        return int(v)
    if isinstance(v, np.floating):
        return float(v)
    if isinstance(v, (bool, int, float, str)) or v is None:
        return v
    if isinstance(v, Path):
        return str(v)
    if hasattr(v, '_mpf_') or hasattr(v, '_mpc_'):
        return str(v)
    return str(v)


def format_float(x, digits=12):
    """
    CSV cell for a real: floats with `digits` significant digits, HReal values
    in fixed point with every digit their context carries.
    """
    if hasattr(x, '_mpf_'):
        from .hpnum import format_fixed, integer_digits
        dps = getattr(x, 'context', mpmath.mp).dps
        return format_fixed(x, max(0, dps - integer_digits(x)))
    return f'{float(x):.{digits}g}'


def write_csv(path, columns, rows):
    """
    Write rows (sequences of already formatted cells) with a header row.
    The '\\n' terminator keeps files byte-identical across platforms.
    """
    path = Path(path)
    with open(path, 'w', newline='', encoding='utf8') as f:
        writer = csv.writer(f, lineterminator='\n')
        writer.writerow(columns)
        for row in rows:
            writer.writerow(row)
    return path


def read_csv(path):
    with open(path, 'r', newline='', encoding='utf8') as f:
        return list(csv.DictReader(f))


def dump_json(path, d):
    with open(str(path), 'w', encoding='utf8') as f:
        json.dump(check_json(d), f, indent=4)
