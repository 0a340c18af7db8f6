import logging
from dataclasses import dataclass, field
from typing import Dict, Tuple

import numpy as np
import statsmodels.api as sm

from ..causal_graph import CausalDag
from ..errors import FitError, HeaderMismatch, InsufficientRows, RankDeficient
from ..scm import Empirical, Gaussian, LinearAdditive, Scm
from .dataset import Dataset

logger = logging.getLogger(__name__)

NOISE_MODES = ("empirical", "gaussian")


@dataclass(frozen=True)
class NodeFit:
    node: str
    intercept: float
    coefficients: Dict[str, float]
    residual_std: float
    r_squared: float
    n_rows: int

    def to_dict(self) -> dict:
        return {
            "intercept": self.intercept,
            "coefficients": dict(self.coefficients),
            "residual_std": self.residual_std,
            "r_squared": self.r_squared,
            "n_rows": self.n_rows,
        }


@dataclass(frozen=True)
class FitReport:
    nodes: Dict[str, NodeFit] = field(default_factory=dict)
    dropped_rows: int = 0
    n_rows: int = 0
    noise_mode: str = "empirical"

    def to_dict(self) -> dict:
        return {
            "n_rows": self.n_rows,
            "dropped_rows": self.dropped_rows,
            "noise_mode": self.noise_mode,
            "nodes": {name: fit.to_dict() for name, fit in self.nodes.items()},
        }


def _r_squared(result) -> float:
    # statsmodels gives NaN when the outcome column is constant
    if result.centered_tss == 0.0:
        return 1.0 if result.ssr == 0.0 else 0.0
    return float(result.rsquared)


def fit_scm(dag: CausalDag, dataset: Dataset, noise_mode: str = "empirical") -> Tuple[Scm, FitReport]:
    """Fits a LinearAdditive mechanism per non-treatment node by OLS on its DAG parents.

    Args:
        dag: The causal graph; every node needs a matching data column.
        dataset: Observations.
        noise_mode: 'empirical' resamples residuals, 'gaussian' uses N(0, residual std).

    Returns:
        The fitted Scm and a FitReport with one entry per non-treatment node.
    """
    if noise_mode not in NOISE_MODES:
        raise FitError(f"noise_mode must be one of {NOISE_MODES}, got {noise_mode!r}")
    missing = [node for node in dag.names if node not in dataset.columns]
    if missing:
        raise HeaderMismatch(f"Data has no column for node(s): {', '.join(missing)}")

    frame = dataset.frame
    mechanisms, noise, fits = {}, {}, {}
    for node in dag.non_treatment_nodes():
        parents = list(dag.parents(node))
        if dataset.n_rows <= len(parents):
            raise InsufficientRows(f"Node {node}: {dataset.n_rows} row(s) for {len(parents)} parent(s)")
        design = sm.add_constant(frame[parents].to_numpy(dtype=float), has_constant="add")
        if np.linalg.matrix_rank(design) < design.shape[1]:
            raise RankDeficient(f"Node {node}: parents {parents} are collinear (or constant) in the data", node=node)
        y = frame[node].to_numpy(dtype=float)
        result = sm.OLS(y, design).fit()
        params = np.asarray(result.params, dtype=float)
        residuals = np.asarray(result.resid, dtype=float)
        residual_std = float(np.sqrt(result.scale)) if result.df_resid > 0 else 0.0

        coefficients = {parent: float(params[i + 1]) for i, parent in enumerate(parents)}
        mechanisms[node] = LinearAdditive(float(params[0]), coefficients)
        noise[node] = Empirical(tuple(residuals)) if noise_mode == "empirical" else Gaussian(0.0, residual_std)
        fits[node] = NodeFit(node, float(params[0]), coefficients, residual_std, _r_squared(result), len(y))
        logger.info("Fitted %s on %s: R^2=%.4f, residual std=%.4g", node, parents or "intercept only",
                    fits[node].r_squared, residual_std)

    scm = Scm(dag, mechanisms, noise)
    return scm, FitReport(fits, dataset.dropped_rows, dataset.n_rows, noise_mode)
