"""End-to-end operations shared by the command line and the MCP tools."""

import logging
import os
import warnings
from typing import Dict, List, Optional, Sequence, Union

from .causal_graph import (
    classify_edges,
    count_dag_configurations,
    enumerate_dag_configurations,
    find_graph_problems,
    topological_order,
)
from .config import McConfig
from .counterfactual import TreatmentSpec, draw_treatment_values, treatment_arm
from .discrete_oracle import MAX_SUPPORT, exact_expected_outcome, exact_nie
from .errors import (
    GraphError,
    IrrelevantPairWarning,
    MediationError,
    MissingObservation,
    ModelError,
    UnclassifiableEdge,
    UnknownTreatment,
)
from .fitting import fit_scm, load_table, observed_baseline
from .mediation import (
    EffectEstimate,
    EffectKind,
    NieMatrix,
    estimate_all_nies,
    estimate_nde,
    estimate_total_effect,
    rank_intervention_points,
)
from .modelspec import (
    ModelSpec,
    graph_declaration,
    load_model_spec,
    model_document,
    model_spec_from_document,
    read_document,
    write_model_spec,
)
from .reporting import AnalysisReport
from .scm import Scm
from .utils import describe_treatment_spec, file_sha256, parse_treatment_specs

logger = logging.getLogger(__name__)

PathLike = Union[str, os.PathLike]


def _problem_entry(problem: MediationError) -> dict:
    entry = {"error": type(problem).__name__, "message": str(problem)}
    edge = getattr(problem, "edge", None)
    if edge is not None:
        entry["edge"] = list(edge)
    return entry


def run_validate(path: PathLike) -> dict:
    """Validates a graph (or full model) file.

    Returns {"valid": True, "nodes", "topological_order", "edge_catalog"} or
    {"valid": False, "errors": [...]} listing every graph problem found.
    Unreadable or malformed files raise ModelFileError.
    """
    document, digest = read_document(path)
    nodes, edges, order = graph_declaration(document)
    problems = find_graph_problems(nodes, edges, order)
    if problems:
        return {"valid": False, "errors": [_problem_entry(p) for p in problems]}

    try:
        spec = model_spec_from_document(document, str(path), digest)
    except (GraphError, ModelError) as e:
        return {"valid": False, "errors": [_problem_entry(e)]}

    dag = spec.dag
    report = {
        "valid": True,
        "nodes": {name: role.value for name, role in dag.nodes},
        "topological_order": list(topological_order(dag)),
        "complete_model": spec.scm is not None,
        "model_sha256": digest,
    }
    try:
        report["edge_catalog"] = classify_edges(dag).as_dict()
    except UnclassifiableEdge as e:
        report["edge_catalog"] = None
        report["note"] = str(e)
    return report


def run_count(num_treatments: int, num_mediators: int, enumerate_configurations: bool = False,
              limit: Optional[int] = None) -> dict:
    """Closed-form DAG count, optionally with the enumerated edge sets."""
    result = {
        "treatments": num_treatments,
        "mediators": num_mediators,
        "count": count_dag_configurations(num_treatments, num_mediators),
    }
    if enumerate_configurations:
        result["configurations"] = [
            [[s, t] for s, t in sorted(dag.edges)]
            for dag in enumerate_dag_configurations(num_treatments, num_mediators, limit)
        ]
    return result


def run_fit(graph_path: PathLike, data_path: PathLike, out_path: PathLike, noise_mode: str = "empirical") -> dict:
    """Fits every non-treatment node from data and writes a complete model file.

    Treatment columns are embedded under `observed` so relative treatment
    specs can resample them at analysis time.
    """
    graph = load_model_spec(graph_path)
    dataset = load_table(data_path)
    scm, report = fit_scm(graph.dag, dataset, noise_mode)

    observed = {node: dataset.column(node) for node in graph.dag.treatments}
    write_model_spec(out_path, model_document(scm, graph.treatments, observed))
    logger.info("Wrote fitted model for %d node(s) to %s", len(report.nodes), out_path)

    result = report.to_dict()
    result["model"] = os.fspath(out_path)
    result["model_sha256"] = file_sha256(out_path)
    return result


def resolve_treatment_specs(spec: ModelSpec, overrides: Sequence[TreatmentSpec] = (),
                            data_path: Optional[PathLike] = None) -> List[TreatmentSpec]:
    """Merges file and command-line specs and attaches observed columns to relative specs.

    Command-line specs replace file specs for the same node. Observed
    baselines come from the model's `observed` section, else from `data_path`.
    """
    merged: Dict[str, TreatmentSpec] = {s.node: s for s in spec.treatments}
    merged.update({s.node: s for s in overrides})

    dataset = None
    resolved = []
    for node in [n for n in spec.dag.treatments if n in merged] + [n for n in merged if n not in spec.dag.treatments]:
        treatment = merged[node]
        if treatment.needs_observation and treatment.observed is None:
            if node in spec.observed:
                treatment = treatment.with_observed(spec.observed[node])
            elif data_path is not None:
                if dataset is None:
                    dataset = load_table(data_path)
                treatment = treatment.with_observed(observed_baseline(dataset, node))
            else:
                raise MissingObservation(
                    f"Treatment {node} takes its untreated value from data; the model has no observed column "
                    f"for it and no data file was given")
        resolved.append(treatment)
    return resolved


def _nie_matrix(scm: Scm, specs: Sequence[TreatmentSpec], cfg: McConfig) -> NieMatrix:
    if not scm.dag.mediators:
        return NieMatrix(scm.dag.treatments, (), {})
    return estimate_all_nies(scm, specs, cfg)


def run_analyze(model_path: PathLike, treatment_texts: Sequence[str] = (), cfg: Optional[McConfig] = None,
                data_path: Optional[PathLike] = None) -> AnalysisReport:
    """NIE matrix, TE per treatment, NDE for single-treatment graphs, and intervention rankings."""
    cfg = cfg if cfg is not None else McConfig.from_env()
    overrides = parse_treatment_specs(treatment_texts)
    spec = load_model_spec(model_path)
    scm = spec.require_scm()
    specs = resolve_treatment_specs(spec, overrides, data_path)

    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", IrrelevantPairWarning)
        matrix = _nie_matrix(scm, specs, cfg)
    messages = tuple(str(w.message) for w in caught if issubclass(w.category, IrrelevantPairWarning))

    totals = {t: estimate_total_effect(scm, t, specs, cfg) for t in scm.dag.treatments}
    directs = {}
    if len(scm.dag.treatments) == 1:
        treatment = scm.dag.treatments[0]
        directs[treatment] = estimate_nde(scm, treatment, specs, cfg)
    rankings = {t: rank_intervention_points(matrix, t, totals[t]) for t in matrix.treatments} if matrix.mediators else {}

    return AnalysisReport(
        nies=matrix,
        totals=totals,
        directs=directs,
        rankings=rankings,
        seed=cfg.seed,
        n_draws=cfg.n_draws,
        model_sha256=spec.sha256,
        treatments=tuple(describe_treatment_spec(s) for s in specs),
        warnings=messages,
    )


def run_exact(model_path: PathLike, treatment_texts: Sequence[str] = (), max_support: int = MAX_SUPPORT) -> AnalysisReport:
    """Exact NIE and TE by enumeration of a finite noise support.

    Treatment specs must give explicit untreated values. Estimates carry
    std_error 0 and n_draws 0.
    """
    spec = load_model_spec(model_path)
    scm = spec.require_scm()
    specs = resolve_treatment_specs(spec, parse_treatment_specs(treatment_texts))
    dag = scm.dag
    missing = [t for t in dag.treatments if t not in {s.node for s in specs}]
    if missing:
        raise UnknownTreatment(f"No treatment spec for: {', '.join(missing)}")

    estimates = {}
    for treatment in dag.treatments:
        for mediator in dag.mediators:
            point = exact_nie(scm, treatment, mediator, specs, max_support)
            estimates[(treatment, mediator)] = EffectEstimate(point + 0.0, 0.0, 0, EffectKind.NIE)
    matrix = NieMatrix(dag.treatments, dag.mediators, estimates)

    draw = draw_treatment_values(specs)
    baseline = exact_expected_outcome(scm, specs, max_support)
    totals = {}
    for treatment in dag.treatments:
        treated = exact_expected_outcome(scm, treatment_arm(draw, treatment), max_support)
        totals[treatment] = EffectEstimate(treated - baseline + 0.0, 0.0, 0, EffectKind.TE)
    rankings = {t: rank_intervention_points(matrix, t, totals[t]) for t in dag.treatments} if dag.mediators else {}

    return AnalysisReport(
        nies=matrix,
        totals=totals,
        directs={},
        rankings=rankings,
        seed=0,
        n_draws=0,
        model_sha256=spec.sha256,
        treatments=tuple(describe_treatment_spec(s) for s in specs),
    )
