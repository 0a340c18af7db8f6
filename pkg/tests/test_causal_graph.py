import os
import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

# Add the parent directory to sys.path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from mediation_tools.causal_graph import (
    NodeRole,
    build_dag,
    classify_edges,
    count_dag_configurations,
    enumerate_dag_configurations,
    find_graph_problems,
    mediation_relevant,
    permitted_edges,
    topological_order,
)
from mediation_tools.causal_graph.configurations import MAX_ENUMERATION_EXPONENT, configuration_nodes
from mediation_tools.errors import (
    CycleDetected,
    DanglingEdge,
    DuplicateNode,
    ForbiddenEdge,
    InvalidCount,
    MissingOutcome,
    MultipleOutcomes,
    RoleMismatch,
    TooLarge,
    UnclassifiableEdge,
    UnknownNode,
)

THREE_NODE = [("T", "treatment"), ("M", "mediator"), ("O", "outcome")]
TWO_MEDIATORS = [("T", "treatment"), ("M1", "mediator"), ("M2", "mediator"), ("O", "outcome")]


def test_build_three_node_dag():
    dag = build_dag(THREE_NODE, [("T", "M"), ("M", "O"), ("T", "O")])
    assert dag.treatments == ("T",)
    assert dag.mediators == ("M",)
    assert dag.outcome == "O"
    assert dag.role("M") is NodeRole.MEDIATOR
    assert dag.parents("O") == ("T", "M")
    assert dag.descendants("T") == frozenset({"M", "O"})


def test_outcome_is_a_sink():
    with pytest.raises(ForbiddenEdge) as excinfo:
        build_dag([("T", "treatment"), ("O", "outcome")], [("O", "T")])
    assert excinfo.value.edge == ("O", "T")


def test_treatments_are_roots():
    with pytest.raises(ForbiddenEdge):
        build_dag(THREE_NODE, [("M", "T"), ("M", "O")])


def test_mediator_order_violation():
    with pytest.raises(ForbiddenEdge):
        build_dag(TWO_MEDIATORS, [("T", "M1"), ("M2", "M1")], mediator_order=["M1", "M2"])


def test_explicit_mediator_order_allows_reverse_declaration():
    dag = build_dag(TWO_MEDIATORS, [("T", "M2"), ("M2", "M1"), ("M1", "O")], mediator_order=["M2", "M1"])
    assert dag.mediators == ("M2", "M1")
    assert topological_order(dag) == ("T", "M2", "M1", "O")


def test_structural_errors():
    with pytest.raises(MultipleOutcomes):
        build_dag([("T", "treatment"), ("O1", "outcome"), ("O2", "outcome")], [])
    with pytest.raises(MissingOutcome):
        build_dag([("T", "treatment"), ("M", "mediator")], [("T", "M")])
    with pytest.raises(DanglingEdge):
        build_dag(THREE_NODE, [("T", "X")])
    with pytest.raises(DuplicateNode):
        build_dag(THREE_NODE + [("M", "mediator")], [])
    with pytest.raises(CycleDetected):
        build_dag(THREE_NODE, [("M", "M")])


def test_covariate_cycle_detected():
    nodes = [("T", "treatment"), ("C1", "covariate"), ("C2", "covariate"), ("O", "outcome")]
    with pytest.raises(CycleDetected):
        build_dag(nodes, [("C1", "C2"), ("C2", "C1"), ("C2", "O")])


def test_find_graph_problems_reports_everything():
    problems = find_graph_problems(THREE_NODE, [("O", "M"), ("M", "T"), ("T", "X")])
    kinds = sorted(type(p).__name__ for p in problems)
    assert kinds == ["DanglingEdge", "ForbiddenEdge", "ForbiddenEdge"]
    assert find_graph_problems(THREE_NODE, [("T", "M"), ("M", "O")]) == []


def test_topological_order_examples():
    chain = build_dag(TWO_MEDIATORS, [("T", "M1"), ("M1", "M2"), ("M2", "O")])
    assert topological_order(chain) == ("T", "M1", "M2", "O")
    parallel = build_dag(TWO_MEDIATORS, [("T", "M1"), ("T", "M2"), ("M1", "O"), ("M2", "O")])
    assert topological_order(parallel) == ("T", "M1", "M2", "O")
    assert topological_order(build_dag([("O", "outcome")], [])) == ("O",)


def test_classify_three_node_dag():
    catalog = classify_edges(build_dag(THREE_NODE, [("T", "M"), ("M", "O"), ("T", "O")]))
    assert catalog.root_to_mediator == {("T", "M")}
    assert catalog.mediator_to_outcome == {("M", "O")}
    assert catalog.root_to_outcome == {("T", "O")}
    assert catalog.mediator_to_mediator == frozenset()


def test_classify_confounder_dag():
    dag = build_dag(TWO_MEDIATORS, [("T", "M1"), ("T", "M2"), ("M1", "M2"), ("M2", "O")])
    catalog = classify_edges(dag)
    assert catalog.root_to_mediator == {("T", "M1"), ("T", "M2")}
    assert catalog.mediator_to_mediator == {("M1", "M2")}
    assert catalog.mediator_to_outcome == {("M2", "O")}
    assert catalog.root_to_outcome == frozenset()
    assert catalog.as_dict()["root_to_mediator"] == [["T", "M1"], ["T", "M2"]]


def test_classify_edgeless_and_covariate():
    catalog = classify_edges(build_dag(THREE_NODE, []))
    assert not (catalog.root_to_mediator or catalog.root_to_outcome
                or catalog.mediator_to_mediator or catalog.mediator_to_outcome)
    with_covariate = build_dag(THREE_NODE + [("C", "covariate")], [("C", "O"), ("T", "M")])
    with pytest.raises(UnclassifiableEdge):
        classify_edges(with_covariate)


@pytest.mark.parametrize("i, j, expected", [(1, 1, 8), (2, 1, 32), (1, 2, 64), (1, 0, 2)])
def test_count_dag_configurations(i, j, expected):
    assert count_dag_configurations(i, j) == expected


def test_count_is_exact_for_large_graphs():
    assert count_dag_configurations(5, 15) == 2 ** (5 * 15 + 15 * 14 // 2 + 15 + 5)
    with pytest.raises(InvalidCount):
        count_dag_configurations(0, 2)


@pytest.mark.parametrize("i", [1, 2])
@pytest.mark.parametrize("j", [0, 1, 2, 3])
def test_enumeration_matches_count(i, j):
    graphs = list(enumerate_dag_configurations(i, j))
    assert len(graphs) == count_dag_configurations(i, j)
    assert len({g.edges for g in graphs}) == len(graphs)


def test_enumerate_examples():
    assert [g.edges for g in enumerate_dag_configurations(1, 0)] == [frozenset(), frozenset({("T1", "O")})]
    assert len(list(enumerate_dag_configurations(1, 3, limit=5))) == 5
    with pytest.raises(TooLarge):
        next(enumerate_dag_configurations(4, 4))
    assert count_dag_configurations(4, 4) > 2 ** MAX_ENUMERATION_EXPONENT


def test_mediation_relevant():
    dag = build_dag(THREE_NODE, [("T", "M"), ("M", "O"), ("T", "O")])
    assert mediation_relevant(dag, "T", "M")
    parallel = build_dag(TWO_MEDIATORS, [("T", "M2"), ("M1", "O"), ("M2", "O")])
    assert not mediation_relevant(parallel, "T", "M1")
    assert mediation_relevant(parallel, "T", "M2")
    with pytest.raises(UnknownNode):
        mediation_relevant(dag, "T", "Z")
    with pytest.raises(RoleMismatch):
        mediation_relevant(dag, "M", "M")


def test_mediation_relevant_through_series():
    nodes = [("T", "treatment")] + [(f"M{k}", "mediator") for k in range(1, 5)] + [("O", "outcome")]
    edges = [("T", "M1"), ("M1", "M2"), ("M2", "M3"), ("M3", "M4"), ("M4", "O")]
    assert mediation_relevant(build_dag(nodes, edges), "T", "M4")


@settings(max_examples=60, deadline=None)
@given(i=st.integers(1, 2), j=st.integers(0, 3), data=st.data())
def test_random_configurations_are_valid(i, j, data):
    edges = permitted_edges(i, j)
    mask = data.draw(st.integers(0, 2 ** len(edges) - 1))
    chosen = [e for bit, e in enumerate(edges) if mask >> bit & 1]
    dag = build_dag(configuration_nodes(i, j), chosen)

    order = topological_order(dag)
    assert sorted(order) == sorted(dag.names)
    position = {n: k for k, n in enumerate(order)}
    assert all(position[s] < position[t] for s, t in dag.edges)

    catalog = classify_edges(dag)
    parts = [catalog.root_to_mediator, catalog.root_to_outcome, catalog.mediator_to_mediator,
             catalog.mediator_to_outcome]
    assert sum(len(p) for p in parts) == len(dag.edges)
    assert frozenset().union(*parts) == dag.edges
