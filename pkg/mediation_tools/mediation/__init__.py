from ..config import McConfig
from .estimators import (
    EffectEstimate,
    EffectKind,
    InterventionPoint,
    NieMatrix,
    estimate_all_nies,
    estimate_nde,
    estimate_nie,
    estimate_total_effect,
    paired_differences,
    rank_intervention_points,
)
from .linear_oracle import closed_form_linear_nie, closed_form_linear_total_effect, path_effects

__all__ = [
    "McConfig",
    "EffectEstimate",
    "EffectKind",
    "InterventionPoint",
    "NieMatrix",
    "estimate_all_nies",
    "estimate_nde",
    "estimate_nie",
    "estimate_total_effect",
    "paired_differences",
    "rank_intervention_points",
    "closed_form_linear_nie",
    "closed_form_linear_total_effect",
    "path_effects",
]
