from .noise import (
    Degenerate,
    DiscretePmf,
    Empirical,
    Gaussian,
    NoiseModel,
    SeedStream,
    noise_from_dict,
)
from .mechanisms import DiscreteTable, LinearAdditive, Mechanism, Opaque, mechanism_from_dict
from .model import NoiseVector, Scm, Valuation, draw_noise, evaluate, simulate, simulate_frame

__all__ = [
    "Degenerate",
    "DiscretePmf",
    "Empirical",
    "Gaussian",
    "NoiseModel",
    "SeedStream",
    "noise_from_dict",
    "DiscreteTable",
    "LinearAdditive",
    "Mechanism",
    "Opaque",
    "mechanism_from_dict",
    "NoiseVector",
    "Scm",
    "Valuation",
    "draw_noise",
    "evaluate",
    "simulate",
    "simulate_frame",
]
