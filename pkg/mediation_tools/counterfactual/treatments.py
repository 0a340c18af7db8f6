from dataclasses import dataclass, field
from typing import Dict, Optional, Sequence, Tuple, Union

import numpy as np

from ..errors import EmptyColumn, MalformedTreatmentSpec, MissingObservation
from ..scm.noise import SeedStream

Value = Union[float, np.ndarray]


@dataclass(frozen=True)
class EmpiricalBaseline:
    """Resampling handle over one observed data column."""

    column: str
    values: Tuple[float, ...] = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        if not self.values:
            raise EmptyColumn(f"Observed column {self.column} is empty")

    def resample(self, rng: np.random.Generator, size: Optional[int] = None) -> Value:
        pool = np.asarray(self.values)
        picked = pool[rng.integers(0, len(pool), size=1 if size is None else size)]
        return float(picked[0]) if size is None else picked

    @property
    def mean(self) -> float:
        return float(np.mean(self.values))


@dataclass(frozen=True)
class TreatmentSpec:
    """Untreated and treated values of one treatment node.

    The untreated value is either explicit or an observed data column; the
    treated value is either explicit or a multiplier applied to the untreated
    value (e.g. 1.5 for a 50% increase).
    """

    node: str
    untreated: Optional[float] = None
    treated: Optional[float] = None
    multiplier: Optional[float] = None
    observed: Optional[EmpiricalBaseline] = None

    def __post_init__(self):
        if (self.treated is None) == (self.multiplier is None):
            raise MalformedTreatmentSpec(f"Treatment {self.node}: give exactly one of treated value or multiplier")
        if self.untreated is not None and self.observed is not None:
            raise MalformedTreatmentSpec(f"Treatment {self.node}: untreated value is either explicit or observed, not both")
        if self.untreated is None and self.multiplier is None and self.observed is None:
            raise MalformedTreatmentSpec(f"Treatment {self.node}: absolute spec needs an untreated value")

    @classmethod
    def absolute(cls, node: str, untreated: float, treated: float) -> "TreatmentSpec":
        return cls(node, untreated=float(untreated), treated=float(treated))

    @classmethod
    def relative(cls, node: str, multiplier: float, untreated: Optional[float] = None,
                 observed: Optional[EmpiricalBaseline] = None) -> "TreatmentSpec":
        return cls(node, untreated=None if untreated is None else float(untreated),
                   multiplier=float(multiplier), observed=observed)

    @property
    def needs_observation(self) -> bool:
        return self.untreated is None

    @property
    def is_identity(self) -> bool:
        if self.multiplier is not None:
            return self.multiplier == 1.0
        return self.treated == self.untreated

    def with_observed(self, observed: EmpiricalBaseline) -> "TreatmentSpec":
        return TreatmentSpec(self.node, None, self.treated, self.multiplier, observed)

    def to_dict(self) -> dict:
        spec: Dict[str, object] = {}
        if self.untreated is not None:
            spec["untreated"] = self.untreated
        else:
            spec["untreated"] = {"column": self.observed.column if self.observed else self.node}
        if self.multiplier is not None:
            spec["multiplier"] = self.multiplier
        else:
            spec["treated"] = self.treated
        return spec


def resolve_treatment_values(spec: TreatmentSpec, observed: Optional[Value] = None) -> Tuple[Value, Value]:
    """Returns (untreated, treated) for one draw (or a batch when observed is an array)."""
    if spec.untreated is not None:
        untreated = spec.untreated
    elif observed is None:
        raise MissingObservation(f"Treatment {spec.node} takes its untreated value from data but no observation was given")
    else:
        untreated = observed
    treated = untreated * spec.multiplier if spec.multiplier is not None else spec.treated
    return untreated, treated


@dataclass(frozen=True)
class TreatmentDraw:
    """Per-draw untreated and treated values for every specified treatment."""

    untreated: Dict[str, Value]
    treated: Dict[str, Value]


def observation_key(node: str) -> str:
    return f"treatment:{node}"


def draw_treatment_values(specs: Sequence[TreatmentSpec], stream: Optional[SeedStream] = None,
                          size: Optional[int] = None) -> TreatmentDraw:
    """Resolves every spec, resampling observed baselines from the stream when needed.

    Each draw pairs one resampled observation with its scaled counterpart.
    """
    untreated, treated = {}, {}
    for spec in specs:
        observed = None
        if spec.needs_observation:
            if spec.observed is None or stream is None:
                raise MissingObservation(f"Treatment {spec.node} needs observed data to resample its untreated value")
            observed = spec.observed.resample(stream.generator(observation_key(spec.node)), size)
        untreated[spec.node], treated[spec.node] = resolve_treatment_values(spec, observed)
    return TreatmentDraw(untreated, treated)
