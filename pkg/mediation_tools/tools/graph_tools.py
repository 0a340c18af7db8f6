import json
from typing import Optional

from ..errors import MediationError
from ..pipeline import run_count, run_validate


def validate_causal_graph(graph_path: str) -> str:
    """Validates a causal graph spec file (JSON with `nodes` and `edges`).

    Args:
        graph_path: Path to the graph or model spec file.
    Returns:
        A JSON validation report: the edge catalog when valid, every problem found otherwise.
    """
    try:
        report = run_validate(graph_path)
        status = "Graph is valid" if report["valid"] else "Graph is invalid"
        return f"{status}:\n{json.dumps(report, indent=2)}"
    except MediationError as e:
        return f"Error: {type(e).__name__}: {str(e)}"
    except Exception as e:
        return f"An unexpected error occurred: {str(e)}"


def count_dag_structures(num_treatments: int, num_mediators: int, list_edge_sets: bool = False,
                         limit: Optional[int] = None) -> str:
    """Counts the valid DAG configurations over I treatments and J mediators.

    Args:
        num_treatments: Number of treatment nodes (at least 1).
        num_mediators: Number of mediator nodes (0 or more).
        list_edge_sets: Also list every configuration's edge set.
        limit: Maximum number of edge sets to list.
    Returns:
        The count, optionally followed by one edge set per line.
    """
    try:
        result = run_count(num_treatments, num_mediators, list_edge_sets, limit)
        lines = [f"{result['count']} DAG configurations for I={num_treatments}, J={num_mediators}"]
        for edges in result.get("configurations", []):
            lines.append(" ".join(f"{s}->{t}" for s, t in edges) or "(none)")
        return "\n".join(lines)
    except MediationError as e:
        return f"Error: {type(e).__name__}: {str(e)}"
    except Exception as e:
        return f"An unexpected error occurred: {str(e)}"
