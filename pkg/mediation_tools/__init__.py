from .tools.graph_tools import validate_causal_graph, count_dag_structures
from .tools.fitting_tools import fit_model_from_data
from .tools.analysis_tools import analyze_mediation, exact_discrete_effects

ALL_TOOLS = [
    validate_causal_graph,
    count_dag_structures,
    fit_model_from_data,
    analyze_mediation,
    exact_discrete_effects,
]
