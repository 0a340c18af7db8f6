"""Exception hierarchy shared by every module.

Domain errors exit the CLI with status 1, parse and usage errors with 2.
"""

from typing import Optional


class MediationError(Exception):
    """Base class for every error raised by mediation_tools."""

    exit_code = 1


class InvalidConfig(MediationError, ValueError):
    exit_code = 2


# --- causal graph ---------------------------------------------------------

class GraphError(MediationError, ValueError):
    pass


class CycleDetected(GraphError):
    pass


class ForbiddenEdge(GraphError):
    def __init__(self, message: str, edge: Optional[tuple] = None):
        super().__init__(message)
        self.edge = edge


class MultipleOutcomes(GraphError):
    pass


class MissingOutcome(GraphError):
    pass


class DanglingEdge(GraphError):
    def __init__(self, message: str, edge: Optional[tuple] = None):
        super().__init__(message)
        self.edge = edge


class DuplicateNode(GraphError):
    pass


class UnknownNode(GraphError):
    pass


class RoleMismatch(GraphError):
    pass


class UnclassifiableEdge(GraphError):
    pass


class InvalidCount(GraphError):
    pass


class TooLarge(GraphError):
    pass


# --- structural causal model ----------------------------------------------

class ModelError(MediationError, ValueError):
    pass


class MissingTreatmentValue(ModelError):
    pass


class MissingNoise(ModelError):
    pass


class DomainError(ModelError):
    pass


class MechanismMismatch(ModelError):
    pass


class InvalidNoise(ModelError):
    pass


class IncompleteModel(ModelError):
    pass


# --- counterfactuals ------------------------------------------------------

class CounterfactualError(MediationError, ValueError):
    pass


class MissingObservation(CounterfactualError):
    pass


class UnknownTreatment(CounterfactualError):
    pass


class MalformedTreatmentSpec(CounterfactualError):
    exit_code = 2


class IrrelevantPairWarning(UserWarning):
    """The mediator is not on a directed path from the treatment to the outcome."""


# --- estimation -----------------------------------------------------------

class EstimationError(MediationError, ValueError):
    pass


class NotLinear(EstimationError):
    pass


class MultiTreatmentNdeUnsupported(EstimationError):
    pass


# --- fitting --------------------------------------------------------------

class FitError(MediationError, ValueError):
    pass


class EmptyTable(FitError):
    pass


class HeaderMismatch(FitError):
    pass


class RankDeficient(FitError):
    def __init__(self, message: str, node: Optional[str] = None):
        super().__init__(message)
        self.node = node


class InsufficientRows(FitError):
    pass


class UnknownColumn(FitError):
    pass


class EmptyColumn(FitError):
    pass


# --- exact oracle ---------------------------------------------------------

class OracleError(MediationError, ValueError):
    pass


class SupportTooLarge(OracleError):
    pass


# --- model files ----------------------------------------------------------

class ModelFileError(MediationError, ValueError):
    """A model spec file could not be parsed."""

    exit_code = 2

    def __init__(self, message: str, line: Optional[int] = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
