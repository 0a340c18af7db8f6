import os
import sys
import warnings

import numpy as np
import pytest

# Add the parent directory to sys.path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from mediation_tools.causal_graph import build_dag
from mediation_tools.config import McConfig
from mediation_tools.counterfactual import TreatmentSpec
from mediation_tools.discrete_oracle import exact_expected_outcome, exact_nie, joint_noise_support
from mediation_tools.errors import IrrelevantPairWarning, OracleError, SupportTooLarge
from mediation_tools.mediation import estimate_nie
from mediation_tools.scm import DiscretePmf, DiscreteTable, Scm, evaluate
from scm_fixtures import BINARY, degenerate, pearl_scm, random_binary_scm, xor_or_scm

ZERO = {"M": 0.0, "O": 0.0}
CONFIGURATION_TREATMENT = [TreatmentSpec.absolute("T1", 0.0, 1.0)]


def test_xor_or_expectations():
    scm = xor_or_scm()
    assert exact_expected_outcome(scm, {"T": 0.0}) == pytest.approx(0.625, abs=1e-12)
    assert exact_expected_outcome(scm, {"T": 1.0}) == pytest.approx(0.875, abs=1e-12)
    assert exact_nie(scm, "T", "M", BINARY) == pytest.approx(0.25, abs=1e-12)


def test_baseline_query_matches_intervention_query():
    scm = xor_or_scm()
    assert exact_expected_outcome(scm, BINARY) == exact_expected_outcome(scm, {"T": 0.0})


def test_degenerate_noise_reduces_to_evaluation():
    scm = degenerate(pearl_scm())
    assert exact_expected_outcome(scm, {"T": 1.0}) == evaluate(scm, {"T": 1.0}, ZERO)["O"]
    assert exact_nie(scm, "T", "M", BINARY) == 6.0


def test_support_limits():
    noise, weight = joint_noise_support(xor_or_scm())
    assert len(weight) == 4 and len(noise["M"]) == 4
    assert sum(weight) == pytest.approx(1.0)
    with pytest.raises(SupportTooLarge):
        exact_expected_outcome(xor_or_scm(), {"T": 1.0}, max_support=3)
    with pytest.raises(OracleError):
        exact_expected_outcome(pearl_scm(), {"T": 1.0})


def _parallel_binary(mediators):
    nodes = [("T", "treatment")] + [(m, "mediator") for m in mediators] + [("O", "outcome")]
    edges = [("T", "M1"), ("T", "M2"), ("M1", "O"), ("M2", "O")]
    dag = build_dag(nodes, edges)
    identity = {(0.0,): 0.0, (1.0,): 1.0}
    either = {(a, b): float(a or b) for a in (0.0, 1.0) for b in (0.0, 1.0)}
    mechanisms = {
        "M1": DiscreteTable(("T",), identity, "xor"),
        "M2": DiscreteTable(("T",), identity, "and"),
        "O": DiscreteTable(("M1", "M2"), either, "xor"),
    }
    noise = {
        "M1": DiscretePmf((0.0, 1.0), (0.7, 0.3)),
        "M2": DiscretePmf((0.0, 1.0), (0.4, 0.6)),
        "O": DiscretePmf((0.0, 1.0), (0.9, 0.1)),
    }
    return Scm(dag, mechanisms, noise)


def test_enumeration_order_does_not_change_the_sum():
    forward = _parallel_binary(["M1", "M2"])
    backward = _parallel_binary(["M2", "M1"])
    for mediator in ("M1", "M2"):
        assert exact_nie(forward, "T", mediator, BINARY) == exact_nie(backward, "T", mediator, BINARY)


def test_random_binary_models_agree_with_monte_carlo():
    rng = np.random.default_rng(2024)
    cfg = McConfig(n_draws=20_000, seed=17)
    agreements = 0
    for _ in range(100):
        scm = random_binary_scm(rng, int(rng.integers(1, 4)))
        mediator = str(rng.choice(scm.dag.mediators))
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", IrrelevantPairWarning)
            truth = exact_nie(scm, "T1", mediator, CONFIGURATION_TREATMENT)
            estimate = estimate_nie(scm, "T1", mediator, CONFIGURATION_TREATMENT, cfg)
        if abs(estimate.point - truth) <= 3 * estimate.std_error + 1e-12:
            agreements += 1
    assert agreements >= 97
