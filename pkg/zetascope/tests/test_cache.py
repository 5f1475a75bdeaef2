import pytest

from zetascope.cache import LEDGER_COLUMNS, PrimeCache, ZeroLedger, cache_roundtrip, default_cache_dir
from zetascope.primes import generate_primes
from zetascope.solver import ZeroResult
from zetascope.tools import CacheFormatError, CacheIOError


def test_store_and_load(tmp_path):
    cache = PrimeCache(tmp_path / 'cache')
    table = generate_primes(5000)
    path = cache.store(table)
    assert path.name == 'primes_5000.bin'
    assert path.read_bytes().startswith(b'ZPRIMES v1 5000\n')
    assert len(path.read_bytes()) == len(b'ZPRIMES v1 5000\n') + 8 * 5000
    assert PrimeCache.load(path) == table
    assert cache.cached_counts() == [5000]


def test_get_slices_larger_table(tmp_path):
    cache = PrimeCache(tmp_path)
    cache.store(generate_primes(3000))
    table = cache.get(1000)
    assert table == generate_primes(1000)
    # served by slicing: nothing new written
    assert cache.cached_counts() == [3000]

    table = cache.get(4000)
    assert table.count == 4000
    assert cache.cached_counts() == [3000, 4000]


def test_bad_cache_files(tmp_path):
    path = tmp_path / 'primes_10.bin'
    path.write_bytes(b'NOTPRIMES v1 10\n' + bytes(80))
    with pytest.raises(CacheFormatError):
        PrimeCache.load(path)

    path.write_bytes(b'ZPRIMES v2 10\n' + bytes(80))
    with pytest.raises(CacheFormatError, match='version'):
        PrimeCache.load(path)

    table = generate_primes(10)
    path.write_bytes(b'ZPRIMES v1 10\n' + table.primes.astype('<u8').tobytes()[:-8])
    with pytest.raises(CacheFormatError, match='payload'):
        PrimeCache.load(path)

    # a corrupted file is skipped and regenerated by get()
    cache = PrimeCache(tmp_path)
    assert cache.get(10) == table


def test_cache_roundtrip(tmp_path):
    status = cache_roundtrip(tmp_path, count=2000)
    assert status['ok']
    assert status['count'] == 2000
    assert status['path'].is_file()


def test_default_cache_dir(monkeypatch, tmp_path):
    monkeypatch.setenv('ZETASCOPE_CACHE', str(tmp_path))
    assert default_cache_dir() == tmp_path
    monkeypatch.delenv('ZETASCOPE_CACHE')
    assert default_cache_dir().parts[-2:] == ('.cache', 'zetascope')


def test_zero_ledger(tmp_path):
    ledger = ZeroLedger(tmp_path / 'sub' / 'zeros_ledger.csv')
    assert ledger.read() == []
    result = ZeroResult(n=10 ** 21, t='144176897509546973538.301', n_primes=5000000, delta=1e-6,
                        predicted_error=0.0049, residual=1e-12, iterations=7)
    ledger.append([result], precision_digits=54, runtime_s=12.5)
    ledger.append([result], precision_digits=54, runtime_s=13.)
    rows = ledger.read()
    assert len(rows) == 2
    assert list(rows[0].keys()) == LEDGER_COLUMNS
    assert rows[0]['t'] == '144176897509546973538.301000000000'
    assert rows[0]['n_primes'] == '5000000'
    assert rows[0]['precision_digits'] == '54'
    assert rows[1]['runtime_s'] == '13.000'


def test_cache_io_errors(tmp_path):
    # a regular file where a directory is expected
    blocker = tmp_path / 'blocker'
    blocker.write_text('')
    with pytest.raises(CacheIOError, match='blocker'):
        PrimeCache(blocker / 'cache').store(generate_primes(10))
    with pytest.raises(CacheIOError, match='primes_77'):
        PrimeCache.load(tmp_path / 'primes_77.bin')

    result = ZeroResult(n=10 ** 21, t='144176897509546973538.301', n_primes=5000000, delta=1e-6,
                        predicted_error=0.0049, residual=1e-12, iterations=7)
    with pytest.raises(CacheIOError, match='zero ledger'):
        ZeroLedger(blocker / 'zeros_ledger.csv').append([result], precision_digits=54, runtime_s=1.)


if __name__ == '__main__':
    import tempfile
    from pathlib import Path
    test_cache_roundtrip(Path(tempfile.mkdtemp()))
