"""Paired Monte Carlo estimators for NIE, NDE and total effects.

Every effect is the mean of per-draw differences between two arms evaluated
on the same noise draw. Draws are generated in fixed-size chunks, each with
its own seed sub-stream, and reduced in chunk order, so the result is
bit-identical for any worker count.
"""

import logging
import math
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from ..causal_graph import NodeRole, mediation_relevant
from ..config import McConfig
from ..counterfactual import (
    AlephSpec,
    TreatmentDraw,
    TreatmentSpec,
    check_treatment_specs,
    draw_treatment_values,
    evaluate_aleph,
    evaluate_baseline,
    treatment_arm,
)
from ..errors import (
    EstimationError,
    IrrelevantPairWarning,
    MultiTreatmentNdeUnsupported,
    RoleMismatch,
    UnknownTreatment,
)
from ..scm import Scm, SeedStream, draw_noise, evaluate

logger = logging.getLogger(__name__)

Contrast = Callable[[Mapping[str, np.ndarray], TreatmentDraw], np.ndarray]


class EffectKind(str, Enum):
    NIE = "NIE"
    NDE = "NDE"
    TE = "TE"


@dataclass(frozen=True)
class EffectEstimate:
    point: float
    std_error: float
    n_draws: int
    kind: EffectKind

    @classmethod
    def from_differences(cls, differences: np.ndarray, kind: EffectKind) -> "EffectEstimate":
        n = len(differences)
        point = float(np.mean(differences))
        std_error = float(np.std(differences, ddof=1) / math.sqrt(n)) if n > 1 else 0.0
        return cls(point + 0.0, std_error, n, kind)

    @classmethod
    def zero(cls, n_draws: int, kind: EffectKind) -> "EffectEstimate":
        return cls(0.0, 0.0, n_draws, kind)

    def to_dict(self) -> dict:
        return {"kind": self.kind.value, "point": self.point, "std_error": self.std_error, "n_draws": self.n_draws}


@dataclass(frozen=True)
class NieMatrix:
    """One NIE per (treatment, mediator) pair."""

    treatments: Tuple[str, ...]
    mediators: Tuple[str, ...]
    estimates: Mapping[Tuple[str, str], EffectEstimate]
    irrelevant: Tuple[Tuple[str, str], ...] = field(default=())

    def __getitem__(self, pair: Tuple[str, str]) -> EffectEstimate:
        return self.estimates[pair]

    def pairs(self) -> List[Tuple[str, str]]:
        return [(t, m) for t in self.treatments for m in self.mediators]

    def row(self, treatment: str) -> Dict[str, EffectEstimate]:
        return {m: self.estimates[(treatment, m)] for m in self.mediators}


@dataclass(frozen=True)
class InterventionPoint:
    mediator: str
    estimate: EffectEstimate
    share_of_total: Optional[float]


def _chunk_plan(cfg: McConfig) -> List[Tuple[int, int]]:
    return [(index, min(cfg.chunk_size, cfg.n_draws - start))
            for index, start in enumerate(range(0, cfg.n_draws, cfg.chunk_size))]


def paired_differences(scm: Scm, specs: Sequence[TreatmentSpec], cfg: McConfig, contrast: Contrast) -> np.ndarray:
    """Evaluates `contrast` on every chunk of shared draws and concatenates in chunk order."""
    root = SeedStream(cfg.seed)

    def run(chunk: Tuple[int, int]) -> np.ndarray:
        index, size = chunk
        stream = root.for_chunk(index)
        noise = draw_noise(scm, stream, size)
        draw = draw_treatment_values(specs, stream, size)
        return np.broadcast_to(np.asarray(contrast(noise, draw), dtype=float), (size,))

    plan = _chunk_plan(cfg)
    if cfg.workers and cfg.workers > 1 and len(plan) > 1:
        with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
            parts = list(pool.map(run, plan))
    else:
        parts = [run(chunk) for chunk in plan]
    return np.concatenate(parts)


def _config(cfg: Optional[McConfig]) -> McConfig:
    return cfg if cfg is not None else McConfig()


def _check_treatment(scm: Scm, treatment: str, specs: Sequence[TreatmentSpec]) -> None:
    if treatment not in scm.dag.treatments:
        raise UnknownTreatment(f"{treatment} is not a treatment node")
    if treatment not in {spec.node for spec in specs}:
        raise UnknownTreatment(f"{treatment} has no treatment spec")


def estimate_nie(scm: Scm, treatment: str, mediator: str, specs: Sequence[TreatmentSpec],
                 cfg: Optional[McConfig] = None) -> EffectEstimate:
    """NIE of `treatment` through `mediator`: E[O under aleph] - E[O under baseline]."""
    cfg = _config(cfg)
    check_treatment_specs(scm, specs)
    _check_treatment(scm, treatment, specs)
    if scm.dag.role(mediator) is not NodeRole.MEDIATOR:
        raise RoleMismatch(f"{mediator} is not a mediator node")
    aleph = AlephSpec(treatment, mediator, tuple(specs))

    if not mediation_relevant(scm.dag, treatment, mediator):
        logger.warning("Pair (%s, %s) is not mediation-relevant; NIE set to 0", treatment, mediator)
        warnings.warn(f"{mediator} is not on a path from {treatment} to {scm.dag.outcome}; its NIE is zero",
                      IrrelevantPairWarning, stacklevel=2)
        return EffectEstimate.zero(cfg.n_draws, EffectKind.NIE)

    def contrast(noise, draw):
        return evaluate_aleph(scm, aleph, noise, draw, warn=False) - evaluate_baseline(scm, specs, noise, draw)

    return EffectEstimate.from_differences(paired_differences(scm, specs, cfg, contrast), EffectKind.NIE)


def estimate_all_nies(scm: Scm, specs: Sequence[TreatmentSpec], cfg: Optional[McConfig] = None) -> NieMatrix:
    """The full treatments x mediators NIE matrix."""
    cfg = _config(cfg)
    dag = scm.dag
    if not dag.treatments or not dag.mediators:
        raise EstimationError("NIE matrix needs at least one treatment and one mediator")
    check_treatment_specs(scm, specs)
    estimates = {}
    irrelevant = []
    for treatment in dag.treatments:
        for mediator in dag.mediators:
            if not mediation_relevant(dag, treatment, mediator):
                irrelevant.append((treatment, mediator))
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", IrrelevantPairWarning)
                estimates[(treatment, mediator)] = estimate_nie(scm, treatment, mediator, specs, cfg)
    if irrelevant:
        warnings.warn("Pairs without a mediated path: " + ", ".join(f"({t}, {m})" for t, m in irrelevant),
                      IrrelevantPairWarning, stacklevel=2)
    return NieMatrix(dag.treatments, dag.mediators, estimates, tuple(irrelevant))


def estimate_total_effect(scm: Scm, treatment: str, specs: Sequence[TreatmentSpec],
                          cfg: Optional[McConfig] = None) -> EffectEstimate:
    """E[O with `treatment` treated, others untreated] - E[O all untreated], mediators free."""
    cfg = _config(cfg)
    check_treatment_specs(scm, specs)
    _check_treatment(scm, treatment, specs)
    outcome = scm.dag.outcome

    def contrast(noise, draw):
        treated = evaluate(scm, treatment_arm(draw, treatment), noise)[outcome]
        return treated - evaluate_baseline(scm, specs, noise, draw)

    return EffectEstimate.from_differences(paired_differences(scm, specs, cfg, contrast), EffectKind.TE)


def estimate_nde(scm: Scm, treatment: str, specs: Sequence[TreatmentSpec],
                 cfg: Optional[McConfig] = None) -> EffectEstimate:
    """Natural direct effect: treated, with every mediator frozen at its baseline natural value.

    Only defined for graphs with a single treatment.
    """
    cfg = _config(cfg)
    if len(scm.dag.treatments) > 1:
        raise MultiTreatmentNdeUnsupported(
            f"NDE is defined for single-treatment graphs; this graph has {len(scm.dag.treatments)}")
    check_treatment_specs(scm, specs)
    _check_treatment(scm, treatment, specs)
    dag = scm.dag

    def contrast(noise, draw):
        baseline = evaluate(scm, treatment_arm(draw), noise)
        interventions = treatment_arm(draw, treatment)
        interventions.update({m: baseline[m] for m in dag.mediators})
        return evaluate(scm, interventions, noise)[dag.outcome] - baseline[dag.outcome]

    return EffectEstimate.from_differences(paired_differences(scm, specs, cfg, contrast), EffectKind.NDE)


def rank_intervention_points(matrix: NieMatrix, treatment: str,
                             total: Optional[EffectEstimate] = None) -> List[InterventionPoint]:
    """Mediators of one treatment ordered by |NIE|, largest first.

    share_of_total is NIE / TE when a non-zero total effect is given.
    """
    if treatment not in matrix.treatments:
        raise UnknownTreatment(f"{treatment} is not in the NIE matrix")
    position = {m: i for i, m in enumerate(matrix.mediators)}
    ranked = sorted(matrix.row(treatment).items(), key=lambda item: (-abs(item[1].point), position[item[0]]))
    points = []
    for mediator, estimate in ranked:
        share = estimate.point / total.point if total is not None and total.point != 0 else None
        points.append(InterventionPoint(mediator, estimate, share))
    return points
