"""Command-line front end: `mediation validate | count-dags | fit | analyze | exact`.

Reports go to standard output, diagnostics to standard error. Exit codes:
0 success, 1 domain error, 2 usage or parse error.
"""

import json
import logging
import sys
from contextlib import contextmanager
from enum import Enum
from pathlib import Path
from typing import Iterator, List, Optional

import typer

from .config import DEFAULT_DRAWS, SAMPLES_ENV, SEED_ENV, WORKERS_ENV, McConfig
from .discrete_oracle import MAX_SUPPORT
from .errors import MediationError
from .pipeline import run_analyze, run_count, run_exact, run_fit, run_validate
from .reporting import render

app = typer.Typer(
    name="mediation",
    help="Generalized natural indirect effects for multi-treatment, multi-mediator causal models.",
    no_args_is_help=True,
    add_completion=False,
)


class ReportFormat(str, Enum):
    tsv = "tsv"
    json = "json"


class NoiseMode(str, Enum):
    empirical = "empirical"
    gaussian = "gaussian"


def _configure_logging(verbose: bool) -> None:
    logging.basicConfig(
        stream=sys.stderr,
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        force=True,
    )


@contextmanager
def _exit_on_error() -> Iterator[None]:
    try:
        yield
    except MediationError as e:
        typer.echo(f"error: {type(e).__name__}: {e}", err=True)
        raise typer.Exit(code=e.exit_code)


def _echo_json(payload) -> None:
    typer.echo(json.dumps(payload, indent=2))


@app.command()
def validate(
    graph: Path = typer.Argument(..., help="Graph or model spec file (JSON)."),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Debug logging on stderr."),
) -> None:
    """Check a graph file and print its edge catalog, or every problem found."""
    _configure_logging(verbose)
    with _exit_on_error():
        report = run_validate(graph)
    _echo_json(report)
    if not report["valid"]:
        raise typer.Exit(code=1)


def _format_edge_set(edges) -> str:
    return " ".join(f"{s}->{t}" for s, t in edges) if edges else "(none)"


@app.command("count-dags")
def count_dags(
    treatments: int = typer.Option(..., "--treatments", "-i", help="Number of treatment nodes (I >= 1)."),
    mediators: int = typer.Option(..., "--mediators", "-j", help="Number of mediator nodes (J >= 0)."),
    enumerate_: bool = typer.Option(False, "--enumerate", help="List every edge set, one per line."),
    limit: Optional[int] = typer.Option(None, "--limit", help="Stop the listing after this many edge sets."),
) -> None:
    """Print the number of DAG configurations over I treatments and J mediators.

    With --enumerate the count goes to stderr and stdout lists one edge set per line.
    """
    with _exit_on_error():
        result = run_count(treatments, mediators, enumerate_, limit)
    if not enumerate_:
        typer.echo(str(result["count"]))
        return
    typer.echo(f"{result['count']} configurations", err=True)
    for edges in result["configurations"]:
        typer.echo(_format_edge_set(edges))


@app.command()
def fit(
    graph: Path = typer.Option(..., "--graph", "-g", help="Graph spec file (JSON)."),
    data: Path = typer.Option(..., "--data", "-d", help="CSV with a header row and one column per node."),
    out: Path = typer.Option(..., "--out", "-o", help="Where to write the fitted model spec."),
    noise: NoiseMode = typer.Option(NoiseMode.empirical, "--noise", help="Residual noise model."),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Debug logging on stderr."),
) -> None:
    """Fit a linear-additive model per node by least squares and write a complete model file."""
    _configure_logging(verbose)
    with _exit_on_error():
        report = run_fit(graph, data, out, noise.value)
    _echo_json(report)


@app.command()
def analyze(
    model: Path = typer.Option(..., "--model", "-m", help="Complete model spec file (JSON)."),
    treatment: Optional[List[str]] = typer.Option(
        None, "--treatment", "-t",
        help="NAME=U:T (absolute untreated:treated) or NAME=*K (observed untreated, treated = K x untreated). Repeatable."),
    samples: int = typer.Option(DEFAULT_DRAWS, "--samples", "-n", envvar=SAMPLES_ENV, help="Monte Carlo draws per effect."),
    seed: int = typer.Option(0, "--seed", "-s", envvar=SEED_ENV, help="Root seed."),
    fmt: ReportFormat = typer.Option(ReportFormat.tsv, "--format", "-f", help="Report format."),
    workers: Optional[int] = typer.Option(None, "--workers", "-w", envvar=WORKERS_ENV,
                                          help="Worker threads; never changes the result."),
    data: Optional[Path] = typer.Option(None, "--data", "-d", help="CSV to resample observed treatment values from."),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Debug logging on stderr."),
) -> None:
    """Estimate every treatment-mediator NIE, the total effect, and (single treatment) the NDE."""
    _configure_logging(verbose)
    with _exit_on_error():
        cfg = McConfig(n_draws=samples, seed=seed, workers=workers)
        report = run_analyze(model, treatment or [], cfg, data)
    for message in report.warnings:
        typer.echo(f"warning: {message}", err=True)
    typer.echo(render(report, fmt.value), nl=False)


@app.command()
def exact(
    model: Path = typer.Option(..., "--model", "-m", help="Model spec with finite-support noise (JSON)."),
    treatment: Optional[List[str]] = typer.Option(None, "--treatment", "-t", help="NAME=U:T. Repeatable."),
    fmt: ReportFormat = typer.Option(ReportFormat.tsv, "--format", "-f", help="Report format."),
    max_support: int = typer.Option(MAX_SUPPORT, "--max-support", help="Largest joint noise support to enumerate."),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Debug logging on stderr."),
) -> None:
    """Exact NIEs and total effects by enumerating every noise configuration."""
    _configure_logging(verbose)
    with _exit_on_error():
        report = run_exact(model, treatment or [], max_support)
    typer.echo(render(report, fmt.value), nl=False)


def main() -> None:
    app()


if __name__ == "__main__":
    main()
