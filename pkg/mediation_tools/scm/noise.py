"""Exogenous noise models and deterministic seed streams."""

import zlib
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple, Union

import numpy as np

from ..errors import InvalidNoise

PMF_TOLERANCE = 1e-12


class SeedStream:
    """Derives an independent generator per (key, chunk) from one root seed.

    A key is a node name (or "treatment:<name>" for observed-baseline
    resampling). Adding a key never perturbs the draws of another key, and
    chunk c always yields the same numbers regardless of which worker asks.
    """

    def __init__(self, seed: int, chunk: int = 0):
        self.seed = int(seed)
        self.chunk = int(chunk)

    def generator(self, key: str) -> np.random.Generator:
        sequence = np.random.SeedSequence(self.seed, spawn_key=(zlib.crc32(key.encode("utf-8")), self.chunk))
        return np.random.default_rng(sequence)

    def for_chunk(self, chunk: int) -> "SeedStream":
        return SeedStream(self.seed, chunk)


@dataclass(frozen=True)
class Gaussian:
    mean: float = 0.0
    stddev: float = 1.0

    def __post_init__(self):
        if not self.stddev >= 0:
            raise InvalidNoise(f"Gaussian stddev must be non-negative, got {self.stddev}")

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        return rng.normal(self.mean, self.stddev, size=size)

    def to_dict(self) -> dict:
        return {"family": "gaussian", "mean": self.mean, "stddev": self.stddev}


@dataclass(frozen=True)
class DiscretePmf:
    values: Tuple[float, ...]
    probabilities: Tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        object.__setattr__(self, "probabilities", tuple(float(p) for p in self.probabilities))
        if not self.values or len(self.values) != len(self.probabilities):
            raise InvalidNoise("DiscretePmf needs one probability per value")
        if any(p < 0 for p in self.probabilities):
            raise InvalidNoise("DiscretePmf probabilities must be non-negative")
        if abs(sum(self.probabilities) - 1.0) > PMF_TOLERANCE:
            raise InvalidNoise(f"DiscretePmf probabilities sum to {sum(self.probabilities)!r}, not 1")

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        p = np.asarray(self.probabilities)
        return rng.choice(np.asarray(self.values), size=size, p=p / p.sum())

    def support(self) -> Tuple[Tuple[float, ...], Tuple[float, ...]]:
        return self.values, self.probabilities

    def to_dict(self) -> dict:
        return {"family": "discrete", "values": list(self.values), "probabilities": list(self.probabilities)}


@dataclass(frozen=True)
class Empirical:
    """Uniform resampling of fitted residuals."""

    residuals: Tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "residuals", tuple(float(r) for r in self.residuals))
        if not self.residuals:
            raise InvalidNoise("Empirical noise needs at least one residual")

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        pool = np.asarray(self.residuals)
        return pool[rng.integers(0, len(pool), size=size)]

    def support(self) -> Tuple[Tuple[float, ...], Tuple[float, ...]]:
        weight = 1.0 / len(self.residuals)
        return self.residuals, (weight,) * len(self.residuals)

    def to_dict(self) -> dict:
        return {"family": "empirical", "residuals": list(self.residuals)}


@dataclass(frozen=True)
class Degenerate:
    """Point mass at zero."""

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        return np.zeros(size)

    def support(self) -> Tuple[Tuple[float, ...], Tuple[float, ...]]:
        return (0.0,), (1.0,)

    def to_dict(self) -> dict:
        return {"family": "degenerate"}


NoiseModel = Union[Gaussian, DiscretePmf, Empirical, Degenerate]


def noise_from_dict(spec: dict) -> NoiseModel:
    family = str(spec.get("family", "")).lower()
    if family == "gaussian":
        return Gaussian(float(spec.get("mean", 0.0)), float(spec.get("stddev", 1.0)))
    if family in ("discrete", "pmf"):
        return DiscretePmf(tuple(spec["values"]), tuple(spec["probabilities"]))
    if family == "empirical":
        return Empirical(tuple(spec["residuals"]))
    if family == "degenerate":
        return Degenerate()
    raise InvalidNoise(f"Unknown noise family: {spec.get('family')!r}")


def sample_noise(model: NoiseModel, rng: np.random.Generator, size: Optional[int] = None):
    """Draws `size` values (or a single float when size is None)."""
    values = model.sample(rng, 1 if size is None else size)
    return float(values[0]) if size is None else np.asarray(values, dtype=float)


def finite_support(model: NoiseModel) -> Optional[Tuple[Sequence[float], Sequence[float]]]:
    support = getattr(model, "support", None)
    return support() if support is not None else None
