"""
On-disk caches: prime tables (`primes_<count>.bin`) and the ledger of computed
zeros (`zeros_ledger.csv`).
"""
import csv
import os
import re
from pathlib import Path

import numpy as np

from .hpnum import DEFAULT_POLICY
from .primes import PrimeTable, generate_primes
from .tools import CacheFormatError, CacheIOError, echo, read_csv, write_csv

PRIME_CACHE_VERSION = 'v1'
PRIME_CACHE_MAGIC = 'ZPRIMES'
_prime_file_re = re.compile(r'^primes_(\d+)\.bin$')

LEDGER_COLUMNS = ['n', 't', 'n_primes', 'delta', 'precision_digits', 'predicted_error',
                  'residual', 'iterations', 'runtime_s']


def default_cache_dir():
    return Path(os.environ.get('ZETASCOPE_CACHE', Path.home() / '.cache' / 'zetascope'))


class PrimeCache:
    """
    Prime tables stored as a text header `ZPRIMES v1 <count>\\n` followed by
    `count` little-endian uint64. Logs are never stored: they are recomputed
    at whatever precision the caller asks for.
    """

    def __init__(self, cache_dir=None, verbose=False):
        self.cache_dir = Path(cache_dir) if cache_dir is not None else default_cache_dir()
        self.verbose = verbose

    def path_for(self, count):
        return self.cache_dir / f'primes_{int(count)}.bin'

    def store(self, table):
        path = self.path_for(table.count)
        tmp = path.with_suffix('.tmp')
        try:
            self.cache_dir.mkdir(parents=True, exist_ok=True)
            with open(tmp, 'wb') as f:
                f.write(f'{PRIME_CACHE_MAGIC} {PRIME_CACHE_VERSION} {table.count}\n'.encode('ascii'))
                f.write(table.primes.astype('<u8').tobytes())
            os.replace(tmp, path)
        except OSError as err:
            raise CacheIOError(f"cannot write prime cache {path}: {err}") from err
        echo(f'stored {table.count} primes in {path}', verbose=self.verbose)
        return path

    @staticmethod
    def load(path, dps=None):
        path = Path(path)
        try:
            with open(path, 'rb') as f:
                header = f.readline()
                payload = f.read()
        except OSError as err:
            raise CacheIOError(f"cannot read prime cache {path}: {err}") from err
        fields = header.decode('ascii', errors='replace').split()
        if len(fields) != 3 or fields[0] != PRIME_CACHE_MAGIC:
            raise CacheFormatError(f"{path}: not a prime cache file (header {header[:40]!r})")
        if fields[1] != PRIME_CACHE_VERSION:
            raise CacheFormatError(f"{path}: unsupported format version {fields[1]!r}, "
                                   f"expected {PRIME_CACHE_VERSION!r}")
        try:
            count = int(fields[2])
        except ValueError:
            raise CacheFormatError(f"{path}: bad prime count {fields[2]!r}")
        if len(payload) != 8 * count:
            raise CacheFormatError(f"{path}: expected {8 * count} payload bytes, found {len(payload)}")
        primes = np.frombuffer(payload, dtype='<u8').astype(np.int64)
        return PrimeTable(primes, dps or DEFAULT_POLICY.working_digits())

    def cached_counts(self):
        if not self.cache_dir.is_dir():
            return []
        counts = []
        for name in os.listdir(self.cache_dir):
            m = _prime_file_re.match(name)
            if m:
                counts.append(int(m.group(1)))
        return sorted(counts)

    def get(self, count, dps=None, n_jobs=1):
        """
        Table of the first `count` primes: the smallest cached table that is
        large enough is sliced, otherwise the primes are sieved and stored.
        """
        for cached in self.cached_counts():
            if cached >= count:
                try:
                    table = self.load(self.path_for(cached), dps)
                except CacheFormatError as err:
                    echo(f'ignoring bad cache file: {err}', verbose=self.verbose)
                    continue
                return table.prefix(count)
        table = generate_primes(count, dps=dps, n_jobs=n_jobs)
        self.store(table)
        return table


class ZeroLedger:
    """Append-only CSV record of every computed zero with its full configuration."""

    def __init__(self, path):
        self.path = Path(path)

    def append(self, results, precision_digits, runtime_s):
        # as_row: n, t, n_primes, delta, predicted_error, residual, iterations
        rows = [row[:4] + [str(precision_digits)] + row[4:] + [f'{runtime_s:.3f}']
                for row in (result.as_row() for result in results)]
        try:
            self.path.parent.mkdir(parents=True, exist_ok=True)
            if not self.path.is_file():
                write_csv(self.path, LEDGER_COLUMNS, rows)
            else:
                with open(self.path, 'a', newline='', encoding='utf8') as f:
                    writer = csv.writer(f, lineterminator='\n')
                    writer.writerows(rows)
        except OSError as err:
            raise CacheIOError(f"cannot append to zero ledger {self.path}: {err}") from err
        return self.path

    def read(self):
        if not self.path.is_file():
            return []
        return read_csv(self.path)


def cache_roundtrip(cache_dir, count=1000, verbose=False):
    """
    Write the first `count` primes to the cache in `cache_dir`, reload them and
    check the reload is bit-exact.

    Returns
    -------
    status: dict
        path, count, and ok (True iff the reloaded table equals the original)
    """
    cache = PrimeCache(cache_dir, verbose=verbose)
    table = generate_primes(count)
    path = cache.store(table)
    reloaded = cache.load(path, table.dps)
    ok = reloaded == table
    echo(f'prime cache round-trip {"ok" if ok else "FAILED"}: {path}', verbose=verbose)
    return {'path': path, 'count': count, 'ok': bool(ok)}
