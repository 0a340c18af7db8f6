import json

from ..errors import FitError, MediationError
from ..pipeline import run_fit


def fit_model_from_data(graph_path: str, data_path: str, output_model_path: str, noise_mode: str = "empirical") -> str:
    """Fits a linear-additive structural model to CSV observations.

    Args:
        graph_path: Path to the graph spec file.
        data_path: CSV with a header row and one numeric column per node.
        output_model_path: Where to write the fitted model spec.
        noise_mode: 'empirical' (resample residuals) or 'gaussian' (normal with the residual std).
    Returns:
        A status message with the per-node fit report.
    """
    try:
        report = run_fit(graph_path, data_path, output_model_path, noise_mode)
        return f"Model fitted and saved to {output_model_path}:\n{json.dumps(report, indent=2)}"
    except FileNotFoundError:
        return f"Error: Data file not found at {data_path}"
    except FitError as e:
        return f"Error fitting model: {type(e).__name__}: {str(e)}"
    except MediationError as e:
        return f"Error: {type(e).__name__}: {str(e)}"
    except Exception as e:
        return f"An unexpected error occurred: {str(e)}"
