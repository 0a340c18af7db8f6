"""Structural mechanisms f_i(parents, u_i).

Mechanisms are evaluated on floats or on 1-D arrays of draws; every
implementation must be elementwise so that a batch of draws gives the same
numbers as evaluating each draw on its own.
"""

from dataclasses import dataclass, field
from typing import Callable, Dict, Mapping, Tuple, Union

import numpy as np

from ..errors import DomainError, MechanismMismatch

ArrayLike = Union[float, np.ndarray]

COMBINE_OPERATIONS: Dict[str, Callable[[np.ndarray, np.ndarray], np.ndarray]] = {
    "add": lambda value, u: value + u,
    "multiply": lambda value, u: value * u,
    "xor": lambda value, u: np.logical_xor(value != 0, u != 0).astype(float),
    "or": lambda value, u: np.logical_or(value != 0, u != 0).astype(float),
    "and": lambda value, u: np.logical_and(value != 0, u != 0).astype(float),
}


@dataclass(frozen=True)
class LinearAdditive:
    """f = intercept + sum(coef * parent) + u."""

    intercept: float
    coefficients: Mapping[str, float]

    def __post_init__(self):
        object.__setattr__(self, "coefficients", {str(k): float(v) for k, v in self.coefficients.items()})

    @property
    def parents(self) -> Tuple[str, ...]:
        return tuple(self.coefficients)

    def __call__(self, parents: Mapping[str, ArrayLike], u: ArrayLike) -> ArrayLike:
        value = self.intercept
        for name, coef in self.coefficients.items():
            value = value + coef * parents[name]
        return value + u

    def to_dict(self) -> dict:
        return {"family": "linear", "intercept": self.intercept, "coefficients": dict(self.coefficients)}


@dataclass(frozen=True)
class DiscreteTable:
    """Table lookup on parent values, combined with the noise by a binary operation."""

    parents: Tuple[str, ...]
    table: Mapping[Tuple[float, ...], float]
    combine: str = "add"

    def __post_init__(self):
        object.__setattr__(self, "parents", tuple(self.parents))
        normalized = {}
        for key, value in self.table.items():
            key = tuple(float(k) for k in (key if isinstance(key, tuple) else (key,)))
            if len(key) != len(self.parents):
                raise MechanismMismatch(f"Table key {key} does not match parents {self.parents}")
            normalized[key] = float(value)
        object.__setattr__(self, "table", normalized)
        if self.combine not in COMBINE_OPERATIONS:
            raise MechanismMismatch(f"Unknown combine operation {self.combine!r}; use one of {sorted(COMBINE_OPERATIONS)}")

    def __call__(self, parents: Mapping[str, ArrayLike], u: ArrayLike) -> ArrayLike:
        columns = [np.asarray(parents[name], dtype=float) for name in self.parents]
        noise = np.asarray(u, dtype=float)
        shape = np.broadcast_shapes(noise.shape, *(c.shape for c in columns))
        looked_up = np.zeros(shape)
        matched = np.zeros(shape, dtype=bool)
        for key, value in self.table.items():
            mask = np.ones(shape, dtype=bool)
            for column, expected in zip(columns, key):
                mask &= np.broadcast_to(column == expected, shape)
            looked_up[mask] = value
            matched |= mask
        if not matched.all():
            missing = tuple(float(np.broadcast_to(c, shape)[~matched].flat[0]) for c in columns)
            raise DomainError(f"No table entry for parent values {dict(zip(self.parents, missing))}")
        return COMBINE_OPERATIONS[self.combine](looked_up, noise)

    def to_dict(self) -> dict:
        return {
            "family": "discrete_table",
            "parents": list(self.parents),
            "table": [{"parents": list(key), "value": value} for key, value in self.table.items()],
            "combine": self.combine,
        }


@dataclass(frozen=True)
class Opaque:
    """Any deterministic, elementwise function of the parent values and one noise value."""

    parents: Tuple[str, ...]
    function: Callable[[Mapping[str, ArrayLike], ArrayLike], ArrayLike] = field(compare=False)
    name: str = "opaque"

    def __post_init__(self):
        object.__setattr__(self, "parents", tuple(self.parents))

    def __call__(self, parents: Mapping[str, ArrayLike], u: ArrayLike) -> ArrayLike:
        return self.function({name: parents[name] for name in self.parents}, u)

    def to_dict(self) -> dict:
        raise MechanismMismatch(f"Opaque mechanism {self.name!r} cannot be serialized")


Mechanism = Union[LinearAdditive, DiscreteTable, Opaque]


def mechanism_from_dict(spec: dict) -> Mechanism:
    family = str(spec.get("family", "")).lower()
    if family == "linear":
        return LinearAdditive(float(spec.get("intercept", 0.0)), dict(spec.get("coefficients", {})))
    if family == "discrete_table":
        table = {tuple(entry["parents"]): entry["value"] for entry in spec["table"]}
        return DiscreteTable(tuple(spec.get("parents", ())), table, spec.get("combine", "add"))
    raise MechanismMismatch(f"Unknown mechanism family: {spec.get('family')!r}")
