from .treatments import (
    EmpiricalBaseline,
    TreatmentDraw,
    TreatmentSpec,
    draw_treatment_values,
    resolve_treatment_values,
)
from .aleph import AlephSpec, check_treatment_specs, evaluate_aleph, evaluate_baseline, treatment_arm

__all__ = [
    "EmpiricalBaseline",
    "TreatmentDraw",
    "TreatmentSpec",
    "draw_treatment_values",
    "resolve_treatment_values",
    "AlephSpec",
    "check_treatment_specs",
    "evaluate_aleph",
    "evaluate_baseline",
    "treatment_arm",
]
