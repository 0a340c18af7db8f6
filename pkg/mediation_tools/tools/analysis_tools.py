from typing import List, Optional

from ..config import DEFAULT_DRAWS, McConfig
from ..discrete_oracle import MAX_SUPPORT
from ..errors import MediationError
from ..pipeline import run_analyze, run_exact
from ..reporting import REPORT_FORMATS, render


def analyze_mediation(model_path: str, treatments: Optional[List[str]] = None, samples: int = DEFAULT_DRAWS,
                      seed: int = 0, output_format: str = "tsv", data_path: Optional[str] = None,
                      workers: Optional[int] = None) -> str:
    """Estimates the NIE of every treatment through every mediator, plus total and direct effects.

    Args:
        model_path: Path to a complete model spec (mechanisms and noise present).
        treatments: Treatment specs, 'NAME=U:T' (absolute) or 'NAME=*K' (K times the observed value).
            Specs stored in the model file are used for treatments not listed here.
        samples: Monte Carlo draws per effect.
        seed: Root seed; the same seed always gives the same report.
        output_format: 'tsv' or 'json'.
        data_path: Optional CSV to resample observed treatment values from.
        workers: Worker threads; does not change the result.
    Returns:
        The rendered report, or an error message.
    """
    if output_format not in REPORT_FORMATS:
        return f"Error: output_format must be one of {', '.join(REPORT_FORMATS)}"
    try:
        cfg = McConfig(n_draws=samples, seed=seed, workers=workers)
        report = run_analyze(model_path, treatments or [], cfg, data_path)
        return render(report, output_format)
    except MediationError as e:
        return f"Error: {type(e).__name__}: {str(e)}"
    except Exception as e:
        return f"An unexpected error occurred: {str(e)}"


def exact_discrete_effects(model_path: str, treatments: Optional[List[str]] = None, output_format: str = "tsv",
                           max_support: int = MAX_SUPPORT) -> str:
    """Computes exact NIEs and total effects for a model whose noise has finite support.

    Args:
        model_path: Path to a complete model spec with discrete, empirical or degenerate noise.
        treatments: Absolute treatment specs, 'NAME=U:T'.
        output_format: 'tsv' or 'json'.
        max_support: Largest joint noise support to enumerate.
    Returns:
        The rendered report, or an error message.
    """
    if output_format not in REPORT_FORMATS:
        return f"Error: output_format must be one of {', '.join(REPORT_FORMATS)}"
    try:
        return render(run_exact(model_path, treatments or [], max_support), output_format)
    except MediationError as e:
        return f"Error: {type(e).__name__}: {str(e)}"
    except Exception as e:
        return f"An unexpected error occurred: {str(e)}"
