"""Small structural models shared by the test modules."""

import json
import os
import sys
from typing import Dict, Mapping, Optional, Sequence, Tuple

import numpy as np

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from mediation_tools.causal_graph import build_dag, permitted_edges
from mediation_tools.causal_graph.configurations import configuration_nodes
from mediation_tools.counterfactual import TreatmentSpec
from mediation_tools.modelspec import model_document
from mediation_tools.scm import Degenerate, DiscretePmf, DiscreteTable, Gaussian, LinearAdditive, Opaque, Scm

BINARY = [TreatmentSpec.absolute("T", 0.0, 1.0)]

# Tolerance for effects whose paired differences are (numerically) deterministic.
EXACT = 1e-9


def within(estimate, expected: float, sigmas: float = 3.0) -> bool:
    return abs(estimate.point - expected) <= sigmas * estimate.std_error + EXACT


def linear_scm(nodes: Sequence[Tuple[str, str]], coefficients: Mapping[Tuple[str, str], float],
               noise=None, intercepts: Optional[Mapping[str, float]] = None) -> Scm:
    """Linear-additive SCM; edges are the keys of `coefficients`.

    `noise` is one NoiseModel for every node or a per-node mapping; defaults to N(0, 1).
    """
    dag = build_dag(nodes, list(coefficients))
    intercepts = intercepts or {}
    mechanisms, noises = {}, {}
    for node in dag.non_treatment_nodes():
        coefs = {s: c for (s, t), c in coefficients.items() if t == node}
        mechanisms[node] = LinearAdditive(intercepts.get(node, 0.0), coefs)
        if isinstance(noise, Mapping):
            noises[node] = noise[node]
        else:
            noises[node] = noise if noise is not None else Gaussian(0.0, 1.0)
    return Scm(dag, mechanisms, noises)


def pearl_scm(noise=None) -> Scm:
    """M = 2T + u_M, O = 3M + T + u_O."""
    return linear_scm([("T", "treatment"), ("M", "mediator"), ("O", "outcome")],
                      {("T", "M"): 2.0, ("M", "O"): 3.0, ("T", "O"): 1.0}, noise)


def series_scm(a: float = 2.0, b: float = 0.5, c: float = 4.0, direct: float = 1.0, noise=None) -> Scm:
    """M1 = a T, M2 = b M1, O = c M2 + direct T."""
    coefficients = {("T", "M1"): a, ("M1", "M2"): b, ("M2", "O"): c}
    if direct:
        coefficients[("T", "O")] = direct
    return linear_scm([("T", "treatment"), ("M1", "mediator"), ("M2", "mediator"), ("O", "outcome")],
                      coefficients, noise)


def parallel_scm(noise=None) -> Scm:
    """M1 = T, M2 = 3T, O = 2 M1 - M2."""
    return linear_scm([("T", "treatment"), ("M1", "mediator"), ("M2", "mediator"), ("O", "outcome")],
                      {("T", "M1"): 1.0, ("T", "M2"): 3.0, ("M1", "O"): 2.0, ("M2", "O"): -1.0}, noise)


def confounder_scm(a: float = 2.0, b: float = 1.0, c: float = 3.0, d: float = 0.5, noise=None) -> Scm:
    """M1 = a T, M2 = b M1 + c T, O = d M2."""
    return linear_scm([("T", "treatment"), ("M1", "mediator"), ("M2", "mediator"), ("O", "outcome")],
                      {("T", "M1"): a, ("M1", "M2"): b, ("T", "M2"): c, ("M2", "O"): d}, noise)


def xor_or_scm() -> Scm:
    """M = T xor u_M with P(u_M=1)=0.25; O = M or u_O with P(u_O=1)=0.5; no T->O edge."""
    dag = build_dag([("T", "treatment"), ("M", "mediator"), ("O", "outcome")], [("T", "M"), ("M", "O")])
    identity = {(0.0,): 0.0, (1.0,): 1.0}
    mechanisms = {
        "M": DiscreteTable(("T",), identity, "xor"),
        "O": DiscreteTable(("M",), identity, "or"),
    }
    noise = {
        "M": DiscretePmf((0.0, 1.0), (0.75, 0.25)),
        "O": DiscretePmf((0.0, 1.0), (0.5, 0.5)),
    }
    return Scm(dag, mechanisms, noise)


def degenerate(scm: Scm) -> Scm:
    return Scm(scm.dag, scm.mechanisms, {node: Degenerate() for node in scm.noise}, scm.treatment_defaults)


# --- logistics fixture shaped like a delivery-delay graph ------------------

LOGISTICS_NODES = [
    ("DriverExperience", "treatment"),
    ("RouteAffinity", "mediator"),
    ("ArrivalTime", "mediator"),
    ("LoadingTime", "mediator"),
    ("LateDeliveries", "outcome"),
]

LOGISTICS_COEFFICIENTS = {
    ("DriverExperience", "RouteAffinity"): 0.8,
    ("RouteAffinity", "LateDeliveries"): -1.5,
    ("DriverExperience", "ArrivalTime"): -0.6,
    ("ArrivalTime", "LateDeliveries"): 2.0,
    ("ArrivalTime", "LoadingTime"): 0.7,
    ("DriverExperience", "LoadingTime"): -0.5,
    ("LoadingTime", "LateDeliveries"): 1.2,
    ("DriverExperience", "LateDeliveries"): -0.3,
}

LOGISTICS_NOISE = {
    "RouteAffinity": Gaussian(0.0, 5.0),
    "ArrivalTime": Gaussian(0.0, 5.0),
    "LoadingTime": Gaussian(0.0, 2.0),
    "LateDeliveries": Gaussian(0.0, 1.0),
}


def logistics_scm() -> Scm:
    return linear_scm(LOGISTICS_NODES, LOGISTICS_COEFFICIENTS, LOGISTICS_NOISE,
                      intercepts={"RouteAffinity": 10.0, "ArrivalTime": 50.0, "LoadingTime": 20.0,
                                  "LateDeliveries": 5.0})


def logistics_graph_document() -> dict:
    return model_document(logistics_scm().dag)


# --- randomized families ---------------------------------------------------

def chain_nodes(length: int):
    nodes = [("T", "treatment")] + [(f"M{k}", "mediator") for k in range(1, length + 1)] + [("O", "outcome")]
    names = [n for n, _ in nodes]
    return nodes, list(zip(names[:-1], names[1:]))


def _monotone(kind: int, parent: str, scale: float):
    if kind == 0:
        return lambda p, u: scale * np.tanh(p[parent]) + u
    if kind == 1:
        return lambda p, u: scale * np.arctan(p[parent]) + u
    return lambda p, u: scale * np.sign(p[parent]) * np.log1p(np.abs(p[parent])) + u


def random_chain_scm(rng: np.random.Generator, length: int, direct: bool = False) -> Scm:
    """Pure chain T -> M1 -> ... -> Mn -> O with mixed linear and monotone nonlinear mechanisms."""
    nodes, edges = chain_nodes(length)
    if direct:
        edges = edges + [("T", "O")]
    dag = build_dag(nodes, edges)
    mechanisms, noise = {}, {}
    for node in dag.non_treatment_nodes():
        parents = dag.parents(node)
        scale = float(rng.uniform(0.5, 2.0))
        if len(parents) == 1 and rng.random() < 0.5:
            mechanisms[node] = Opaque(parents, _monotone(int(rng.integers(0, 3)), parents[0], scale), "monotone")
        else:
            mechanisms[node] = LinearAdditive(float(rng.normal()), {p: float(rng.uniform(-2.0, 2.0)) for p in parents})
        noise[node] = Gaussian(0.0, float(rng.uniform(0.5, 1.5)))
    return Scm(dag, mechanisms, noise)


def random_parallel_scm(rng: np.random.Generator, num_mediators: int) -> Scm:
    nodes = [("T", "treatment")] + [(f"M{k}", "mediator") for k in range(1, num_mediators + 1)] + [("O", "outcome")]
    coefficients = {}
    for k in range(1, num_mediators + 1):
        coefficients[("T", f"M{k}")] = float(rng.uniform(-3.0, 3.0))
        coefficients[(f"M{k}", "O")] = float(rng.uniform(-3.0, 3.0))
    return linear_scm(nodes, coefficients)


def random_linear_scm(rng: np.random.Generator, edges) -> Scm:
    nodes = configuration_nodes(1, 3)
    return linear_scm([(n, r.value) for n, r in nodes], {e: float(rng.uniform(-3.0, 3.0)) for e in edges})


PMF_CHOICES = (0.25, 0.5, 0.75)


def random_binary_scm(rng: np.random.Generator, num_mediators: int) -> Scm:
    """Binary-valued SCM: random T/M/O edges, random truth tables xor-ed with Bernoulli noise."""
    nodes = configuration_nodes(1, num_mediators)
    candidates = permitted_edges(1, num_mediators)
    edges = [e for e in candidates if rng.random() < 0.5]
    dag = build_dag(nodes, edges)
    mechanisms, noise = {}, {}
    for node in dag.non_treatment_nodes():
        parents = dag.parents(node)
        keys = [tuple(float(b) for b in np.binary_repr(i, width=len(parents))) if parents else ()
                for i in range(2 ** len(parents))]
        table = {key: float(rng.integers(0, 2)) for key in keys}
        mechanisms[node] = DiscreteTable(parents, table, "xor")
        p = float(rng.choice(PMF_CHOICES))
        noise[node] = DiscretePmf((0.0, 1.0), (1.0 - p, p))
    return Scm(dag, mechanisms, noise)


def write_json(path, document: Dict) -> str:
    with open(path, "w", encoding="utf-8") as f:
        json.dump(document, f, indent=2)
    return str(path)
