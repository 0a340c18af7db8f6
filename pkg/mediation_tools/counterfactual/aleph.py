"""The nested counterfactual assignment aleph(T_i, M_j).

Both passes of an aleph evaluation, and the paired baseline, consume the
same noise vector.
"""

import logging
import warnings
from dataclasses import dataclass
from typing import Dict, Mapping, Optional, Sequence, Tuple

from ..causal_graph import NodeRole, mediation_relevant
from ..errors import IrrelevantPairWarning, MissingTreatmentValue, RoleMismatch, UnknownTreatment
from ..scm import Scm, evaluate
from ..scm.model import Value
from .treatments import TreatmentDraw, TreatmentSpec, draw_treatment_values

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AlephSpec:
    treatment_of_interest: str
    mediator_of_interest: str
    all_treatments: Tuple[TreatmentSpec, ...]

    def __post_init__(self):
        object.__setattr__(self, "all_treatments", tuple(self.all_treatments))
        if self.treatment_of_interest not in {s.node for s in self.all_treatments}:
            raise UnknownTreatment(f"{self.treatment_of_interest} has no treatment spec")


def check_treatment_specs(scm: Scm, specs: Sequence[TreatmentSpec]) -> None:
    """Every spec names a treatment; every treatment has a spec or a default."""
    treatments = set(scm.dag.treatments)
    seen = set()
    for spec in specs:
        if spec.node not in treatments:
            raise UnknownTreatment(f"{spec.node} is not a treatment node")
        if spec.node in seen:
            raise UnknownTreatment(f"Treatment {spec.node} specified twice")
        seen.add(spec.node)
    uncovered = sorted(treatments - seen - set(scm.treatment_defaults))
    if uncovered:
        raise MissingTreatmentValue(f"No treatment spec or default for: {', '.join(uncovered)}")


def treatment_arm(draw: TreatmentDraw, treated_node: Optional[str] = None) -> Dict[str, Value]:
    """All treatments untreated, except `treated_node` at its treated value."""
    arm = dict(draw.untreated)
    if treated_node is not None:
        arm[treated_node] = draw.treated[treated_node]
    return arm


def evaluate_baseline(scm: Scm, all_treatments: Sequence[TreatmentSpec], noise: Mapping[str, Value],
                      draw: Optional[TreatmentDraw] = None) -> Value:
    """Outcome with every treatment untreated and every mediator natural."""
    if draw is None:
        draw = draw_treatment_values(all_treatments)
    return evaluate(scm, treatment_arm(draw), noise)[scm.dag.outcome]


def evaluate_aleph(scm: Scm, spec: AlephSpec, noise: Mapping[str, Value],
                   draw: Optional[TreatmentDraw] = None, warn: bool = True) -> Value:
    """Outcome under aleph(T_i, M_j) for one noise vector (or a batch of draws).

    Pass 1 sets T_i treated, other treatments untreated, and records the
    natural value m* of M_j. Pass 2 sets every treatment untreated and forces
    do(M_j = m*); the other mediators respond freely.
    """
    dag = scm.dag
    treatment, mediator = spec.treatment_of_interest, spec.mediator_of_interest
    if dag.role(mediator) is not NodeRole.MEDIATOR:
        raise RoleMismatch(f"{mediator} is not a mediator node")
    if warn and not mediation_relevant(dag, treatment, mediator):
        warnings.warn(f"{mediator} is not on a path from {treatment} to {dag.outcome}; its NIE is zero",
                      IrrelevantPairWarning, stacklevel=2)
    if draw is None:
        draw = draw_treatment_values(spec.all_treatments)

    natural = evaluate(scm, treatment_arm(draw, treatment), noise)[mediator]
    interventions = treatment_arm(draw)
    interventions[mediator] = natural
    return evaluate(scm, interventions, noise)[dag.outcome]
