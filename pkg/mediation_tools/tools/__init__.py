from .graph_tools import validate_causal_graph, count_dag_structures
from .fitting_tools import fit_model_from_data
from .analysis_tools import analyze_mediation, exact_discrete_effects

__all__ = [
    "validate_causal_graph",
    "count_dag_structures",
    "fit_model_from_data",
    "analyze_mediation",
    "exact_discrete_effects",
]
