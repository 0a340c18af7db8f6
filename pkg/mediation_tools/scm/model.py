import logging
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Tuple, Union

import numpy as np
import pandas as pd

from ..causal_graph import CausalDag, NodeRole, topological_order
from ..errors import MechanismMismatch, MissingNoise, MissingTreatmentValue, ModelError
from .mechanisms import LinearAdditive, Mechanism
from .noise import NoiseModel, SeedStream, sample_noise

logger = logging.getLogger(__name__)

Value = Union[float, np.ndarray]
NoiseVector = Dict[str, Value]
Valuation = Dict[str, Value]


@dataclass(frozen=True)
class Scm:
    """A CausalDag plus one mechanism and one noise model per non-treatment node.

    Treatments have neither: they are set points, optionally with a default
    untreated value used when an evaluation does not mention them.
    """

    dag: CausalDag
    mechanisms: Mapping[str, Mechanism]
    noise: Mapping[str, NoiseModel]
    treatment_defaults: Mapping[str, float] = field(default_factory=dict)
    order: Tuple[str, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "mechanisms", dict(self.mechanisms))
        object.__setattr__(self, "noise", dict(self.noise))
        object.__setattr__(self, "treatment_defaults", {k: float(v) for k, v in self.treatment_defaults.items()})
        object.__setattr__(self, "order", topological_order(self.dag))

        treatments = set(self.dag.treatments)
        required = set(self.dag.non_treatment_nodes())
        for label, mapping in (("mechanism", self.mechanisms), ("noise model", self.noise)):
            stray = sorted(set(mapping) & treatments)
            if stray:
                raise MechanismMismatch(f"Treatment node(s) {', '.join(stray)} cannot have a {label}")
            missing = sorted(required - set(mapping))
            if missing:
                raise MechanismMismatch(f"Missing {label} for node(s): {', '.join(missing)}")
            unknown = sorted(set(mapping) - required)
            if unknown:
                raise MechanismMismatch(f"{label} given for unknown node(s): {', '.join(unknown)}")

        unknown_defaults = sorted(set(self.treatment_defaults) - treatments)
        if unknown_defaults:
            raise MechanismMismatch(f"Defaults given for non-treatment node(s): {', '.join(unknown_defaults)}")

        for node, mechanism in self.mechanisms.items():
            expected = set(self.dag.parents(node))
            declared = set(mechanism.parents)
            if declared != expected:
                kind = "coefficients" if isinstance(mechanism, LinearAdditive) else "parents"
                raise MechanismMismatch(
                    f"Mechanism for {node} has {kind} {sorted(declared)} but the DAG parents are {sorted(expected)}")


def draw_noise(scm: Scm, stream: SeedStream, size: Optional[int] = None) -> NoiseVector:
    """One independent draw per non-treatment node (or `size` draws each)."""
    return {node: sample_noise(scm.noise[node], stream.generator(node), size)
            for node in scm.dag.non_treatment_nodes()}


def _freeze(value) -> Value:
    array = np.asarray(value, dtype=float)
    return float(array) if array.ndim == 0 else array


def evaluate(scm: Scm, interventions: Mapping[str, Value], noise: Mapping[str, Value]) -> Valuation:
    """Computes every node value under do(interventions) and a fixed noise vector.

    Intervened nodes keep their forced value verbatim; the remaining nodes are
    computed in topological order as f_i(parents, u_i). Values may be floats or
    equally long arrays of draws.
    """
    valuation: Valuation = {}
    for node in scm.order:
        if node in interventions:
            valuation[node] = _freeze(interventions[node])
            continue
        role = scm.dag.role(node)
        if role is NodeRole.TREATMENT:
            if node not in scm.treatment_defaults:
                raise MissingTreatmentValue(f"No value given for treatment {node} and no default configured")
            valuation[node] = scm.treatment_defaults[node]
            continue
        if node not in noise:
            raise MissingNoise(f"Noise vector has no entry for {node}")
        mechanism = scm.mechanisms[node]
        valuation[node] = _freeze(mechanism(valuation, noise[node]))
    return valuation


def _chunks(n: int, chunk_size: int) -> List[Tuple[int, int]]:
    return [(index, min(chunk_size, n - start)) for index, start in enumerate(range(0, n, chunk_size))]


def simulate_frame(scm: Scm, treatment_values: Mapping[str, Value], n: int, seed: int,
                   chunk_size: int = 8192) -> pd.DataFrame:
    """n independent evaluations under fresh noise, one column per node.

    Treatment values may be scalars or length-n arrays (one value per draw).
    """
    if n < 1:
        raise ModelError(f"n must be >= 1, got {n}")
    stream = SeedStream(seed)
    frames = []
    start = 0
    for chunk, size in _chunks(n, chunk_size):
        noise = draw_noise(scm, stream.for_chunk(chunk), size)
        interventions = {}
        for node, value in treatment_values.items():
            array = np.asarray(value, dtype=float)
            interventions[node] = array[start:start + size] if array.ndim else np.full(size, float(array))
        valuation = evaluate(scm, interventions, noise)
        frames.append(pd.DataFrame({node: np.broadcast_to(valuation[node], (size,)) for node in scm.dag.names}))
        start += size
    return pd.concat(frames, ignore_index=True)


def simulate(scm: Scm, treatment_values: Mapping[str, Value], n: int, seed: int) -> List[Valuation]:
    """n independent Valuations; reproducible given the seed."""
    return simulate_frame(scm, treatment_values, n, seed).to_dict("records")
