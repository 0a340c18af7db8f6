"""Exact expectations over a finite joint noise support.

Used as ground truth for the Monte Carlo estimators on small discrete SCMs.
"""

import math
from typing import Dict, Mapping, Sequence, Tuple, Union

import numpy as np

from ..counterfactual import AlephSpec, TreatmentSpec, check_treatment_specs, draw_treatment_values
from ..counterfactual import evaluate_aleph, evaluate_baseline
from ..errors import OracleError, SupportTooLarge
from ..scm import Scm, evaluate
from ..scm.noise import finite_support

MAX_SUPPORT = 10 ** 6

Query = Union[Mapping[str, float], Sequence[TreatmentSpec], AlephSpec]


def joint_noise_support(scm: Scm, max_support: int = MAX_SUPPORT) -> Tuple[Dict[str, np.ndarray], np.ndarray]:
    """Every joint noise configuration as aligned arrays, plus its probability."""
    nodes = scm.dag.non_treatment_nodes()
    values, probabilities = [], []
    size = 1
    for node in nodes:
        support = finite_support(scm.noise[node])
        if support is None:
            raise OracleError(f"Noise of {node} ({type(scm.noise[node]).__name__}) has no finite support")
        values.append(np.asarray(support[0], dtype=float))
        probabilities.append(np.asarray(support[1], dtype=float))
        size *= len(support[0])
        if size > max_support:
            raise SupportTooLarge(f"Joint noise support exceeds {max_support} configurations")
    value_grid = np.meshgrid(*values, indexing="ij")
    prob_grid = np.meshgrid(*probabilities, indexing="ij")
    noise = {node: grid.ravel() for node, grid in zip(nodes, value_grid)}
    weight = np.prod(np.stack([grid.ravel() for grid in prob_grid]), axis=0)
    return noise, weight


def _outcomes(scm: Scm, query: Query, noise: Mapping[str, np.ndarray]):
    if isinstance(query, AlephSpec):
        check_treatment_specs(scm, query.all_treatments)
        draw = draw_treatment_values(query.all_treatments)
        return evaluate_aleph(scm, query, noise, draw)
    if isinstance(query, Mapping):
        return evaluate(scm, query, noise)[scm.dag.outcome]
    specs = tuple(query)
    check_treatment_specs(scm, specs)
    return evaluate_baseline(scm, specs, noise)


def exact_expected_outcome(scm: Scm, query: Query, max_support: int = MAX_SUPPORT) -> float:
    """E[O] summed exactly over the joint noise support.

    `query` is an interventions map, the treatment specs of a baseline arm, or
    an AlephSpec. Summation is correctly rounded, so the result does not
    depend on enumeration order.
    """
    noise, weight = joint_noise_support(scm, max_support)
    outcome = np.broadcast_to(np.asarray(_outcomes(scm, query, noise), dtype=float), weight.shape)
    return math.fsum((weight * outcome).tolist())


def exact_nie(scm: Scm, treatment: str, mediator: str, specs: Sequence[TreatmentSpec],
              max_support: int = MAX_SUPPORT) -> float:
    """E[O under aleph(treatment, mediator)] - E[O under baseline]."""
    specs = tuple(specs)
    aleph = AlephSpec(treatment, mediator, specs)
    return exact_expected_outcome(scm, aleph, max_support) - exact_expected_outcome(scm, specs, max_support)
