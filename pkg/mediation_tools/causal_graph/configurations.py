"""Counting and enumerating the optional-edge DAG structures over I treatments and J mediators."""

from typing import Iterator, List, Optional, Tuple

from ..errors import InvalidCount, TooLarge
from .dag import CausalDag, Edge, NodeRole, build_dag

MAX_ENUMERATION_EXPONENT = 24


def _edge_exponent(num_treatments: int, num_mediators: int) -> int:
    i, j = num_treatments, num_mediators
    return i * j + j * (j - 1) // 2 + j + i


def _check_counts(num_treatments: int, num_mediators: int) -> None:
    if num_treatments < 1:
        raise InvalidCount(f"At least one treatment is required, got {num_treatments}")
    if num_mediators < 0:
        raise InvalidCount(f"Mediator count must be non-negative, got {num_mediators}")


def count_dag_configurations(num_treatments: int, num_mediators: int) -> int:
    """Number of valid DAGs: 2 ** (I*J + J*(J-1)/2 + J + I)."""
    _check_counts(num_treatments, num_mediators)
    return 2 ** _edge_exponent(num_treatments, num_mediators)


def configuration_nodes(num_treatments: int, num_mediators: int) -> List[Tuple[str, NodeRole]]:
    nodes = [(f"T{i}", NodeRole.TREATMENT) for i in range(1, num_treatments + 1)]
    nodes += [(f"M{j}", NodeRole.MEDIATOR) for j in range(1, num_mediators + 1)]
    nodes.append(("O", NodeRole.OUTCOME))
    return nodes


def permitted_edges(num_treatments: int, num_mediators: int) -> List[Edge]:
    """Every optional edge, grouped root->mediator, mediator->mediator, mediator->outcome, root->outcome."""
    _check_counts(num_treatments, num_mediators)
    treatments = [f"T{i}" for i in range(1, num_treatments + 1)]
    mediators = [f"M{j}" for j in range(1, num_mediators + 1)]
    edges = [(t, m) for t in treatments for m in mediators]
    edges += [(mediators[a], mediators[b]) for a in range(len(mediators)) for b in range(a + 1, len(mediators))]
    edges += [(m, "O") for m in mediators]
    edges += [(t, "O") for t in treatments]
    return edges


def enumerate_dag_configurations(num_treatments: int, num_mediators: int,
                                 limit: Optional[int] = None) -> Iterator[CausalDag]:
    """Yields every subset of the permitted edges as a validated CausalDag.

    Subsets are visited in increasing bitmask order over permitted_edges().
    Without a limit the exponent must not exceed MAX_ENUMERATION_EXPONENT.
    """
    _check_counts(num_treatments, num_mediators)
    exponent = _edge_exponent(num_treatments, num_mediators)
    if limit is None and exponent > MAX_ENUMERATION_EXPONENT:
        raise TooLarge(f"2^{exponent} configurations exceed the enumeration guard of 2^{MAX_ENUMERATION_EXPONENT}; pass a limit")
    if limit is not None and limit < 0:
        raise InvalidCount(f"limit must be non-negative, got {limit}")

    nodes = configuration_nodes(num_treatments, num_mediators)
    edges = permitted_edges(num_treatments, num_mediators)
    total = 2 ** exponent if limit is None else min(limit, 2 ** exponent)
    for mask in range(total):
        chosen = [edge for bit, edge in enumerate(edges) if mask >> bit & 1]
        yield build_dag(nodes, chosen)
