from .dag import (
    CausalDag,
    EdgeCatalog,
    NodeRole,
    build_dag,
    classify_edges,
    find_graph_problems,
    mediation_relevant,
    topological_order,
)
from .configurations import (
    count_dag_configurations,
    enumerate_dag_configurations,
    permitted_edges,
)

__all__ = [
    "CausalDag",
    "EdgeCatalog",
    "NodeRole",
    "build_dag",
    "classify_edges",
    "find_graph_problems",
    "mediation_relevant",
    "topological_order",
    "count_dag_configurations",
    "enumerate_dag_configurations",
    "permitted_edges",
]
