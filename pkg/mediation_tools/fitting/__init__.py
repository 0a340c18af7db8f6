from .dataset import Dataset, load_table, load_table_text, observed_baseline
from .fit_scm import NOISE_MODES, FitReport, NodeFit, fit_scm

__all__ = [
    "Dataset",
    "load_table",
    "load_table_text",
    "observed_baseline",
    "NOISE_MODES",
    "FitReport",
    "NodeFit",
    "fit_scm",
]
