"""Closed-form effects for SCMs whose mechanisms are all LinearAdditive."""

from typing import Dict

from ..causal_graph import NodeRole
from ..errors import NotLinear, RoleMismatch, UnknownTreatment
from ..scm import LinearAdditive, Scm


def _require_linear(scm: Scm) -> None:
    offenders = sorted(node for node, m in scm.mechanisms.items() if not isinstance(m, LinearAdditive))
    if offenders:
        raise NotLinear(f"Closed form needs LinearAdditive mechanisms; not linear: {', '.join(offenders)}")


def path_effects(scm: Scm, source: str) -> Dict[str, float]:
    """d(node)/d(source) under do(source), summed over every directed path.

    The source's own parents are cut; treatments other than the source stay fixed.
    """
    _require_linear(scm)
    effects = {source: 1.0}
    for node in scm.order:
        if node == source:
            continue
        if scm.dag.role(node) is NodeRole.TREATMENT:
            effects[node] = 0.0
            continue
        mechanism = scm.mechanisms[node]
        effects[node] = sum(coef * effects.get(parent, 0.0) for parent, coef in mechanism.coefficients.items())
    return effects


def closed_form_linear_nie(scm: Scm, treatment: str, mediator: str, delta: float = 1.0) -> float:
    """(effect of T_i on M_j) x (effect of do(M_j) on O) x delta."""
    if treatment not in scm.dag.treatments:
        raise UnknownTreatment(f"{treatment} is not a treatment node")
    if scm.dag.role(mediator) is not NodeRole.MEDIATOR:
        raise RoleMismatch(f"{mediator} is not a mediator node")
    to_mediator = path_effects(scm, treatment)[mediator]
    to_outcome = path_effects(scm, mediator)[scm.dag.outcome]
    return to_mediator * to_outcome * delta


def closed_form_linear_total_effect(scm: Scm, treatment: str, delta: float = 1.0) -> float:
    if treatment not in scm.dag.treatments:
        raise UnknownTreatment(f"{treatment} is not a treatment node")
    return path_effects(scm, treatment)[scm.dag.outcome] * delta
