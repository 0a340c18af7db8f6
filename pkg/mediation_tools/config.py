import os
from dataclasses import dataclass
from typing import Optional

from .errors import InvalidConfig

SEED_ENV = "MEDIATION_SEED"
SAMPLES_ENV = "MEDIATION_SAMPLES"
WORKERS_ENV = "MEDIATION_WORKERS"

DEFAULT_DRAWS = 100_000
DEFAULT_CHUNK_SIZE = 8192


@dataclass(frozen=True)
class McConfig:
    """Monte Carlo settings for paired effect estimation.

    Args:
        n_draws: Number of shared noise draws per effect.
        seed: Root seed; every node and chunk derives its own sub-stream.
        workers: Threads used to evaluate chunks (None or 1 = sequential).
        chunk_size: Draws per chunk. Fixed so that results never depend on workers.
    """

    n_draws: int = DEFAULT_DRAWS
    seed: int = 0
    workers: Optional[int] = None
    chunk_size: int = DEFAULT_CHUNK_SIZE

    def __post_init__(self) -> None:
        if self.n_draws < 1:
            raise InvalidConfig(f"n_draws must be >= 1, got {self.n_draws}")
        if self.seed < 0:
            raise InvalidConfig(f"seed must be non-negative, got {self.seed}")
        if self.workers is not None and self.workers < 1:
            raise InvalidConfig(f"workers must be >= 1, got {self.workers}")
        if self.chunk_size < 1:
            raise InvalidConfig(f"chunk_size must be >= 1, got {self.chunk_size}")

    @classmethod
    def from_env(cls, **overrides) -> "McConfig":
        """Builds a config from MEDIATION_* environment variables, then applies overrides."""
        values = {}
        for env_name, field_name in ((SEED_ENV, "seed"), (SAMPLES_ENV, "n_draws"), (WORKERS_ENV, "workers")):
            raw = os.environ.get(env_name)
            if raw is None or raw == "":
                continue
            try:
                values[field_name] = int(raw)
            except ValueError:
                raise InvalidConfig(f"{env_name} must be an integer, got {raw!r}")
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)
