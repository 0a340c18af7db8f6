import hashlib
import math
import os
import re
from typing import Iterable, List, Union

from .counterfactual import TreatmentSpec
from .errors import MalformedTreatmentSpec

_NUMBER = r"[-+]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][-+]?\d+)?"
_ABSOLUTE = re.compile(rf"^\s*([^=\s]+)\s*=\s*({_NUMBER})\s*:\s*({_NUMBER})\s*$")
_RELATIVE = re.compile(rf"^\s*([^=\s]+)\s*=\s*\*\s*({_NUMBER})\s*$")


def parse_treatment_spec(text: str) -> TreatmentSpec:
    """Parses 'NAME=U:T' (absolute values) or 'NAME=*K' (untreated from data, treated = K x untreated)."""
    match = _ABSOLUTE.match(text)
    if match:
        name, untreated, treated = match.groups()
        return TreatmentSpec.absolute(name, float(untreated), float(treated))
    match = _RELATIVE.match(text)
    if match:
        name, multiplier = match.groups()
        return TreatmentSpec.relative(name, float(multiplier))
    raise MalformedTreatmentSpec(f"Invalid treatment spec {text!r}; expected NAME=U:T or NAME=*K")


def parse_treatment_specs(texts: Iterable[str]) -> List[TreatmentSpec]:
    return [parse_treatment_spec(text) for text in texts]


def file_sha256(path: Union[str, os.PathLike]) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as f:
        for block in iter(lambda: f.read(65536), b""):
            digest.update(block)
    return digest.hexdigest()


def format_significant(value: float, digits: int = 6) -> str:
    """Fixed significant-digit rendering; -0 prints as 0."""
    if math.isnan(value):
        return "nan"
    return f"{value + 0.0:.{digits}g}"


def describe_treatment_spec(spec: TreatmentSpec) -> str:
    """Inverse of parse_treatment_spec; observed baselines print as 'NAME=*K' or 'NAME=observed:T'."""
    if spec.multiplier is not None:
        if spec.untreated is None:
            return f"{spec.node}=*{spec.multiplier:g}"
        return f"{spec.node}={spec.untreated:g}:*{spec.multiplier:g}"
    if spec.untreated is None:
        return f"{spec.node}=observed:{spec.treated:g}"
    return f"{spec.node}={spec.untreated:g}:{spec.treated:g}"
