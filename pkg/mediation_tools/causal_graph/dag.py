import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import networkx as nx

from ..errors import (
    CycleDetected,
    DanglingEdge,
    DuplicateNode,
    ForbiddenEdge,
    GraphError,
    MissingOutcome,
    MultipleOutcomes,
    RoleMismatch,
    UnclassifiableEdge,
    UnknownNode,
)

logger = logging.getLogger(__name__)

Edge = Tuple[str, str]


class NodeRole(str, Enum):
    TREATMENT = "treatment"
    MEDIATOR = "mediator"
    OUTCOME = "outcome"
    COVARIATE = "covariate"

    @classmethod
    def parse(cls, value) -> "NodeRole":
        if isinstance(value, NodeRole):
            return value
        try:
            return cls(str(value).strip().lower())
        except ValueError:
            raise GraphError(f"Unknown node role: {value!r}")


@dataclass(frozen=True)
class CausalDag:
    """Validated treatment/mediator/outcome DAG. Build it with build_dag()."""

    nodes: Tuple[Tuple[str, NodeRole], ...]
    edges: FrozenSet[Edge]
    mediator_order: Tuple[str, ...]
    graph: nx.DiGraph = field(repr=False, compare=False, hash=False)

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(name for name, _ in self.nodes)

    @property
    def roles(self) -> Dict[str, NodeRole]:
        return dict(self.nodes)

    def role(self, name: str) -> NodeRole:
        for node, role in self.nodes:
            if node == name:
                return role
        raise UnknownNode(f"Unknown node: {name}")

    def _with_role(self, role: NodeRole) -> Tuple[str, ...]:
        return tuple(name for name, r in self.nodes if r is role)

    @property
    def treatments(self) -> Tuple[str, ...]:
        return self._with_role(NodeRole.TREATMENT)

    @property
    def mediators(self) -> Tuple[str, ...]:
        return self.mediator_order

    @property
    def outcome(self) -> str:
        return self._with_role(NodeRole.OUTCOME)[0]

    def parents(self, name: str) -> Tuple[str, ...]:
        """Parents of a node in declaration order."""
        if name not in self.graph:
            raise UnknownNode(f"Unknown node: {name}")
        preds = set(self.graph.predecessors(name))
        return tuple(n for n in self.names if n in preds)

    def descendants(self, name: str) -> FrozenSet[str]:
        if name not in self.graph:
            raise UnknownNode(f"Unknown node: {name}")
        return frozenset(nx.descendants(self.graph, name))

    def non_treatment_nodes(self) -> Tuple[str, ...]:
        return tuple(name for name, role in self.nodes if role is not NodeRole.TREATMENT)


@dataclass(frozen=True)
class EdgeCatalog:
    root_to_mediator: FrozenSet[Edge]
    root_to_outcome: FrozenSet[Edge]
    mediator_to_mediator: FrozenSet[Edge]
    mediator_to_outcome: FrozenSet[Edge]

    def as_dict(self) -> Dict[str, List[List[str]]]:
        return {
            "root_to_mediator": [list(e) for e in sorted(self.root_to_mediator)],
            "root_to_outcome": [list(e) for e in sorted(self.root_to_outcome)],
            "mediator_to_mediator": [list(e) for e in sorted(self.mediator_to_mediator)],
            "mediator_to_outcome": [list(e) for e in sorted(self.mediator_to_outcome)],
        }


def find_graph_problems(nodes: Sequence[Tuple[str, object]], edges: Iterable[Edge],
                        mediator_order: Optional[Sequence[str]] = None) -> List[GraphError]:
    """Checks a node/edge declaration and returns every problem found, in a stable order."""
    problems: List[GraphError] = []
    roles: Dict[str, NodeRole] = {}
    for name, role in nodes:
        try:
            parsed = NodeRole.parse(role)
        except GraphError as e:
            problems.append(e)
            continue
        if name in roles:
            problems.append(DuplicateNode(f"Duplicate node name: {name}"))
            continue
        roles[name] = parsed

    outcomes = [n for n, r in roles.items() if r is NodeRole.OUTCOME]
    if len(outcomes) > 1:
        problems.append(MultipleOutcomes(f"Exactly one outcome node allowed, found {len(outcomes)}: {', '.join(outcomes)}"))
    elif not outcomes:
        problems.append(MissingOutcome("Graph has no outcome node"))

    mediators = [n for n, r in roles.items() if r is NodeRole.MEDIATOR]
    order = list(mediator_order) if mediator_order is not None else mediators
    if sorted(order) != sorted(mediators):
        problems.append(GraphError(f"mediator_order {order} must list exactly the mediators {mediators}"))
        order = mediators
    position = {name: i for i, name in enumerate(order)}

    edge_list = sorted(set((str(s), str(t)) for s, t in edges))
    valid_edges = []
    for source, target in edge_list:
        missing = [n for n in (source, target) if n not in roles]
        if missing:
            problems.append(DanglingEdge(f"Edge {source}->{target} references unknown node(s): {', '.join(missing)}",
                                         edge=(source, target)))
            continue
        if source == target:
            problems.append(CycleDetected(f"Self-loop on {source}"))
            continue
        if roles[target] is NodeRole.TREATMENT:
            problems.append(ForbiddenEdge(f"Edge {source}->{target}: treatment nodes are roots", edge=(source, target)))
            continue
        if roles[source] is NodeRole.OUTCOME:
            problems.append(ForbiddenEdge(f"Edge {source}->{target}: the outcome is a sink", edge=(source, target)))
            continue
        if roles[source] is NodeRole.MEDIATOR and roles[target] is NodeRole.MEDIATOR \
                and position[source] >= position[target]:
            problems.append(ForbiddenEdge(f"Edge {source}->{target} violates mediator order", edge=(source, target)))
            continue
        valid_edges.append((source, target))

    graph = nx.DiGraph()
    graph.add_nodes_from(roles)
    graph.add_edges_from(valid_edges)
    if not nx.is_directed_acyclic_graph(graph):
        cycle = nx.find_cycle(graph)
        path = " -> ".join([u for u, _ in cycle] + [cycle[0][0]])
        problems.append(CycleDetected(f"Cycle detected: {path}"))
    return problems


def build_dag(nodes: Sequence[Tuple[str, object]], edges: Iterable[Edge],
              mediator_order: Optional[Sequence[str]] = None) -> CausalDag:
    """Validates a node/edge declaration and returns an immutable CausalDag.

    Args:
        nodes: (name, role) pairs in declaration order. Roles may be NodeRole or strings.
        edges: (source, target) pairs.
        mediator_order: Total order over mediators; defaults to declaration order.

    Raises:
        The first GraphError reported by find_graph_problems().
    """
    nodes = [(str(name), role) for name, role in nodes]
    edges = [(str(s), str(t)) for s, t in edges]
    problems = find_graph_problems(nodes, edges, mediator_order)
    if problems:
        raise problems[0]

    declared = tuple((name, NodeRole.parse(role)) for name, role in nodes)
    mediators = tuple(n for n, r in declared if r is NodeRole.MEDIATOR)
    graph = nx.DiGraph()
    graph.add_nodes_from(n for n, _ in declared)
    graph.add_edges_from(edges)
    return CausalDag(
        nodes=declared,
        edges=frozenset(edges),
        mediator_order=tuple(mediator_order) if mediator_order is not None else mediators,
        graph=graph,
    )


def topological_order(dag: CausalDag) -> Tuple[str, ...]:
    """Topological order with ties broken by declaration order."""
    index = {name: i for i, name in enumerate(dag.names)}
    return tuple(nx.lexicographical_topological_sort(dag.graph, key=lambda n: index[n]))


def classify_edges(dag: CausalDag) -> EdgeCatalog:
    roles = dag.roles
    buckets = {
        (NodeRole.TREATMENT, NodeRole.MEDIATOR): set(),
        (NodeRole.TREATMENT, NodeRole.OUTCOME): set(),
        (NodeRole.MEDIATOR, NodeRole.MEDIATOR): set(),
        (NodeRole.MEDIATOR, NodeRole.OUTCOME): set(),
    }
    for source, target in sorted(dag.edges):
        key = (roles[source], roles[target])
        if key not in buckets:
            raise UnclassifiableEdge(f"Edge {source}->{target} ({key[0].value}->{key[1].value}) is outside the T/M/O taxonomy")
        buckets[key].add((source, target))
    return EdgeCatalog(
        root_to_mediator=frozenset(buckets[(NodeRole.TREATMENT, NodeRole.MEDIATOR)]),
        root_to_outcome=frozenset(buckets[(NodeRole.TREATMENT, NodeRole.OUTCOME)]),
        mediator_to_mediator=frozenset(buckets[(NodeRole.MEDIATOR, NodeRole.MEDIATOR)]),
        mediator_to_outcome=frozenset(buckets[(NodeRole.MEDIATOR, NodeRole.OUTCOME)]),
    )


def mediation_relevant(dag: CausalDag, treatment: str, mediator: str) -> bool:
    """True iff there is a directed path treatment -> mediator -> outcome."""
    if dag.role(treatment) is not NodeRole.TREATMENT:
        raise RoleMismatch(f"{treatment} is not a treatment node")
    if dag.role(mediator) is not NodeRole.MEDIATOR:
        raise RoleMismatch(f"{mediator} is not a mediator node")
    return nx.has_path(dag.graph, treatment, mediator) and nx.has_path(dag.graph, mediator, dag.outcome)
