"""Model spec files: a JSON document with `nodes`, `edges` and, for a complete
model, `mechanisms` and `noise`. Optional keys: `mediator_order`,
`treatments`, `observed`.

    {
      "nodes": [{"name": "T", "role": "treatment"}, {"name": "M", "role": "mediator"},
                {"name": "O", "role": "outcome"}],
      "edges": [["T", "M"], ["M", "O"], ["T", "O"]],
      "mechanisms": {"M": {"family": "linear", "intercept": 0, "coefficients": {"T": 2}}, ...},
      "noise": {"M": {"family": "gaussian", "mean": 0, "stddev": 1}, ...},
      "treatments": {"T": {"untreated": 0, "treated": 1}},
      "observed": {"T": [12.0, 40.0, 33.0]}
    }
"""

import hashlib
import json
import os
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .causal_graph import CausalDag, build_dag
from .counterfactual import EmpiricalBaseline, TreatmentSpec
from .errors import IncompleteModel, MediationError, ModelFileError
from .scm import Scm, mechanism_from_dict, noise_from_dict

PathLike = Union[str, os.PathLike]


@dataclass(frozen=True)
class ModelSpec:
    dag: CausalDag
    scm: Optional[Scm]
    treatments: Tuple[TreatmentSpec, ...] = ()
    observed: Dict[str, EmpiricalBaseline] = field(default_factory=dict)
    sha256: str = ""
    source: str = "<string>"

    def require_scm(self) -> Scm:
        if self.scm is None:
            raise IncompleteModel(f"{self.source} has no mechanisms/noise; fit or complete the model first")
        return self.scm


def _parse_nodes(raw) -> List[Tuple[str, str]]:
    if not isinstance(raw, list) or not raw:
        raise ModelFileError("'nodes' must be a non-empty list")
    nodes = []
    for entry in raw:
        if isinstance(entry, Mapping) and "name" in entry and "role" in entry:
            nodes.append((str(entry["name"]), str(entry["role"])))
        elif isinstance(entry, (list, tuple)) and len(entry) == 2:
            nodes.append((str(entry[0]), str(entry[1])))
        else:
            raise ModelFileError(f"Invalid node entry {entry!r}; expected {{'name': ..., 'role': ...}}")
    return nodes


def _parse_edges(raw) -> List[Tuple[str, str]]:
    if raw is None:
        return []
    if not isinstance(raw, list):
        raise ModelFileError("'edges' must be a list")
    edges = []
    for entry in raw:
        if isinstance(entry, Mapping) and "source" in entry and "target" in entry:
            edges.append((str(entry["source"]), str(entry["target"])))
        elif isinstance(entry, (list, tuple)) and len(entry) == 2:
            edges.append((str(entry[0]), str(entry[1])))
        else:
            raise ModelFileError(f"Invalid edge entry {entry!r}; expected [source, target]")
    return edges


def _parse_section(raw, name: str, factory) -> Dict[str, object]:
    if not isinstance(raw, Mapping):
        raise ModelFileError(f"'{name}' must be an object keyed by node name")
    parsed = {}
    for node, spec in raw.items():
        if not isinstance(spec, Mapping):
            raise ModelFileError(f"'{name}.{node}' must be an object")
        try:
            parsed[str(node)] = factory(spec)
        except MediationError:
            raise
        except (KeyError, TypeError, ValueError) as e:
            raise ModelFileError(f"'{name}.{node}' is missing or has an invalid field: {e}")
    return parsed


def _parse_observed(raw) -> Dict[str, EmpiricalBaseline]:
    if raw is None:
        return {}
    if not isinstance(raw, Mapping):
        raise ModelFileError("'observed' must map column names to value lists")
    observed = {}
    for column, values in raw.items():
        if not isinstance(values, list):
            raise ModelFileError(f"'observed.{column}' must be a list of numbers")
        try:
            observed[str(column)] = EmpiricalBaseline(str(column), tuple(float(v) for v in values))
        except (TypeError, ValueError) as e:
            if isinstance(e, MediationError):
                raise
            raise ModelFileError(f"'observed.{column}' must be a list of numbers")
    return observed


def _optional_float(spec: Mapping, key: str, node) -> Optional[float]:
    value = spec.get(key)
    if value is None:
        return None
    try:
        return float(value)
    except (TypeError, ValueError):
        raise ModelFileError(f"'treatments.{node}.{key}' must be a number, got {value!r}")


def _parse_treatments(raw, observed: Mapping[str, EmpiricalBaseline]) -> Tuple[TreatmentSpec, ...]:
    if raw is None:
        return ()
    if not isinstance(raw, Mapping):
        raise ModelFileError("'treatments' must be an object keyed by treatment name")
    specs = []
    for node, spec in raw.items():
        if not isinstance(spec, Mapping) or "untreated" not in spec:
            raise ModelFileError(f"'treatments.{node}' needs an 'untreated' value")
        treated = _optional_float(spec, "treated", node)
        multiplier = _optional_float(spec, "multiplier", node)
        untreated = spec["untreated"]
        if isinstance(untreated, Mapping):
            column = str(untreated.get("column", node))
            specs.append(TreatmentSpec(str(node), treated=treated, multiplier=multiplier,
                                       observed=observed.get(column)))
        else:
            specs.append(TreatmentSpec(str(node), untreated=_optional_float(spec, "untreated", node),
                                       treated=treated, multiplier=multiplier))
    return tuple(specs)


def parse_document(text: str, source: str = "<string>") -> Mapping:
    """Decodes the JSON text of a model spec; syntax errors carry their line number."""
    try:
        document = json.loads(text)
    except json.JSONDecodeError as e:
        raise ModelFileError(f"{source}: {e.msg} (column {e.colno})", line=e.lineno)
    if not isinstance(document, Mapping):
        raise ModelFileError(f"{source}: top level must be an object")
    if "nodes" not in document:
        raise ModelFileError(f"{source}: missing required key 'nodes'")
    return document


def read_document(path: PathLike) -> Tuple[Mapping, str]:
    """Reads and decodes a model spec file. Returns the document and the file's sha256."""
    try:
        with open(path, "rb") as f:
            raw = f.read()
    except OSError as e:
        raise ModelFileError(f"Cannot read model file {path}: {e.strerror}")
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError:
        raise ModelFileError(f"{path} is not UTF-8 text")
    return parse_document(text, str(path)), hashlib.sha256(raw).hexdigest()


def graph_declaration(document: Mapping) -> Tuple[List[Tuple[str, str]], List[Tuple[str, str]], Optional[List[str]]]:
    """(nodes, edges, mediator_order) as declared, before any graph validation."""
    order = document.get("mediator_order")
    if order is not None and not isinstance(order, list):
        raise ModelFileError("'mediator_order' must be a list of mediator names")
    return (_parse_nodes(document["nodes"]), _parse_edges(document.get("edges")),
            None if order is None else [str(name) for name in order])


def model_spec_from_document(document: Mapping, source: str = "<string>", sha256: str = "") -> ModelSpec:
    """Builds the DAG and, when mechanisms or noise are present, the Scm.

    Raises:
        ModelFileError: a section is malformed.
        GraphError / ModelError: the document describes an invalid graph or model.
    """
    dag = build_dag(*graph_declaration(document))

    scm = None
    if "mechanisms" in document or "noise" in document:
        mechanisms = _parse_section(document.get("mechanisms", {}), "mechanisms", mechanism_from_dict)
        noise = _parse_section(document.get("noise", {}), "noise", noise_from_dict)
        scm = Scm(dag, mechanisms, noise)

    observed = _parse_observed(document.get("observed"))
    treatments = _parse_treatments(document.get("treatments"), observed)
    return ModelSpec(dag, scm, treatments, observed, sha256, source)


def load_model_spec(path: PathLike) -> ModelSpec:
    document, digest = read_document(path)
    return model_spec_from_document(document, str(path), digest)


def model_document(model: Union[Scm, CausalDag], treatments: Sequence[TreatmentSpec] = (),
                   observed: Optional[Mapping[str, Iterable[float]]] = None) -> dict:
    """Serializable document for a graph or a fully parameterized SCM."""
    dag = model.dag if isinstance(model, Scm) else model
    document = {
        "nodes": [{"name": name, "role": role.value} for name, role in dag.nodes],
        "edges": [[s, t] for s, t in sorted(dag.edges)],
    }
    if list(dag.mediator_order) != [n for n, r in dag.nodes if r.value == "mediator"]:
        document["mediator_order"] = list(dag.mediator_order)
    if isinstance(model, Scm):
        try:
            document["mechanisms"] = {node: model.mechanisms[node].to_dict() for node in dag.non_treatment_nodes()}
        except MediationError as e:
            raise ModelFileError(str(e))
        document["noise"] = {node: model.noise[node].to_dict() for node in dag.non_treatment_nodes()}
    if treatments:
        document["treatments"] = {spec.node: spec.to_dict() for spec in treatments}
    if observed:
        document["observed"] = {column: [float(v) for v in values] for column, values in observed.items()}
    return document


def write_model_spec(path: PathLike, document: Mapping) -> None:
    directory = os.path.dirname(os.fspath(path))
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        json.dump(document, f, indent=2)
        f.write("\n")
