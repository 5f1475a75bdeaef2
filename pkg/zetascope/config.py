"""
Run-wide configuration shared by the command line and the experiments.
"""
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Optional

from .cache import default_cache_dir
from .hpnum import PrecisionPolicy
from .solver import SolveConfig
from .tools import DomainError

DEFAULT_N_PRIMES = 5_000_000
DEFAULT_DELTA = 1e-6
DEFAULT_SEED = 7


@dataclass(frozen=True)
class RunConfig:
    precision: PrecisionPolicy = field(default_factory=PrecisionPolicy)
    n_primes: int = DEFAULT_N_PRIMES
    delta: float = DEFAULT_DELTA
    seed: int = DEFAULT_SEED
    output_folder: Optional[Path] = None
    cache_dir: Optional[Path] = None
    n_jobs: int = 1
    verbose: bool = False

    def __post_init__(self):
        if self.n_primes < 1:
            raise DomainError("n_primes must be >= 1")
        if not self.delta > 0:
            raise DomainError("delta must be > 0")

    @classmethod
    def from_env(cls, **overrides):
        """Defaults, with the cache directory taken from ZETASCOPE_CACHE when set."""
        overrides = {k: v for k, v in overrides.items() if v is not None}
        if 'cache_dir' not in overrides:
            overrides['cache_dir'] = default_cache_dir()
        return cls(**overrides)

    def with_precision(self, target_fractional_digits=None, guard_digits=None):
        precision = PrecisionPolicy(
            self.precision.target_fractional_digits if target_fractional_digits is None else target_fractional_digits,
            self.precision.guard_digits if guard_digits is None else guard_digits)
        return replace(self, precision=precision)

    def solve_config(self, **kwargs):
        kwargs.setdefault('delta', self.delta)
        kwargs.setdefault('n_primes', self.n_primes)
        kwargs.setdefault('precision', self.precision)
        return SolveConfig(**kwargs)
