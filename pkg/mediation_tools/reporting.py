"""Analysis reports and their tsv / json renderings."""

import json
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .mediation import EffectEstimate, InterventionPoint, NieMatrix
from .utils import format_significant

NIE_COLUMNS = ("treatment", "mediator", "nie", "std_error", "n_draws")
EFFECT_COLUMNS = ("treatment", "effect", "point", "std_error", "n_draws")
RANKING_COLUMNS = ("treatment", "rank", "mediator", "nie", "share_of_total")
REPORT_FORMATS = ("tsv", "json")


@dataclass(frozen=True)
class AnalysisReport:
    """Every NIE of the matrix, per-treatment TE (and NDE when single-treatment), and run metadata."""

    nies: NieMatrix
    totals: Dict[str, EffectEstimate]
    directs: Dict[str, EffectEstimate]
    rankings: Dict[str, List[InterventionPoint]]
    seed: int
    n_draws: int
    model_sha256: str
    treatments: Tuple[str, ...] = ()
    warnings: Tuple[str, ...] = field(default=())

    def nie_rows(self) -> List[Tuple[str, str, EffectEstimate]]:
        return [(t, m, self.nies[(t, m)]) for t, m in self.nies.pairs()]

    def effect_rows(self) -> List[Tuple[str, str, EffectEstimate]]:
        rows = []
        for treatment in self.nies.treatments:
            if treatment in self.totals:
                rows.append((treatment, "TE", self.totals[treatment]))
            if treatment in self.directs:
                rows.append((treatment, "NDE", self.directs[treatment]))
        return rows

    def to_dict(self) -> dict:
        return {
            "metadata": {
                "seed": self.seed,
                "n_draws": self.n_draws,
                "model_sha256": self.model_sha256,
                "treatments": list(self.treatments),
            },
            "nie": [
                {"treatment": t, "mediator": m, "nie": e.point, "std_error": e.std_error, "n_draws": e.n_draws}
                for t, m, e in self.nie_rows()
            ],
            "effects": [
                {"treatment": t, "effect": kind, "point": e.point, "std_error": e.std_error, "n_draws": e.n_draws}
                for t, kind, e in self.effect_rows()
            ],
            "ranking": {
                treatment: [
                    {"mediator": p.mediator, "nie": p.estimate.point, "share_of_total": p.share_of_total}
                    for p in points
                ]
                for treatment, points in self.rankings.items()
            },
            "warnings": list(self.warnings),
        }


def _share(value: Optional[float]) -> str:
    return "NA" if value is None else format_significant(value)


def render_tsv(report: AnalysisReport) -> str:
    """Tab-separated report: '#' metadata lines, then the NIE, effect and ranking tables.

    Numbers carry 6 significant digits.
    """
    lines = [
        f"# seed\t{report.seed}",
        f"# n_draws\t{report.n_draws}",
        f"# model_sha256\t{report.model_sha256}",
    ]
    lines += [f"# treatment\t{spec}" for spec in report.treatments]
    lines += [f"# warning\t{message}" for message in report.warnings]

    lines.append("\t".join(NIE_COLUMNS))
    for treatment, mediator, estimate in report.nie_rows():
        lines.append("\t".join([treatment, mediator, format_significant(estimate.point),
                                format_significant(estimate.std_error), str(estimate.n_draws)]))

    lines.append("")
    lines.append("\t".join(EFFECT_COLUMNS))
    for treatment, kind, estimate in report.effect_rows():
        lines.append("\t".join([treatment, kind, format_significant(estimate.point),
                                format_significant(estimate.std_error), str(estimate.n_draws)]))

    if report.rankings:
        lines.append("")
        lines.append("\t".join(RANKING_COLUMNS))
        for treatment, points in report.rankings.items():
            for rank, point in enumerate(points, start=1):
                lines.append("\t".join([treatment, str(rank), point.mediator,
                                        format_significant(point.estimate.point), _share(point.share_of_total)]))
    return "\n".join(lines) + "\n"


def render_json(report: AnalysisReport) -> str:
    """Full-precision JSON; key order is fixed by construction."""
    return json.dumps(report.to_dict(), indent=2) + "\n"


def render(report: AnalysisReport, fmt: str) -> str:
    if fmt == "json":
        return render_json(report)
    return render_tsv(report)


def parse_tsv_tables(text: str) -> Dict[str, List[Dict[str, str]]]:
    """Splits a rendered tsv report back into metadata and the nie, effects and ranking tables."""
    tables: Dict[str, List[Dict[str, str]]] = {"metadata": []}
    header: Optional[List[str]] = None
    name = None
    for line in text.splitlines():
        if line.startswith("# "):
            key, _, value = line[2:].partition("\t")
            tables["metadata"].append({"key": key, "value": value})
            continue
        if not line:
            header = None
            continue
        cells = line.split("\t")
        if header is None:
            header = cells
            name = {NIE_COLUMNS[1]: "nie", EFFECT_COLUMNS[1]: "effects", RANKING_COLUMNS[1]: "ranking"}.get(
                cells[1], cells[1])
            tables[name] = []
            continue
        tables[name].append(dict(zip(header, cells)))
    return tables
