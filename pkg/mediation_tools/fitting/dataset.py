import io
import logging
import os
from dataclasses import dataclass, field
from typing import TextIO, Tuple, Union

import numpy as np
import pandas as pd

from ..counterfactual import EmpiricalBaseline
from ..errors import EmptyColumn, EmptyTable, HeaderMismatch, UnknownColumn

logger = logging.getLogger(__name__)

Source = Union[str, os.PathLike, TextIO]


@dataclass(frozen=True)
class Dataset:
    """Numeric observations, one column per node."""

    frame: pd.DataFrame = field(repr=False)
    dropped_rows: int = 0

    @property
    def columns(self) -> Tuple[str, ...]:
        return tuple(self.frame.columns)

    @property
    def n_rows(self) -> int:
        return len(self.frame)

    def column(self, name: str) -> np.ndarray:
        if name not in self.frame.columns:
            raise UnknownColumn(f"Dataset has no column named {name!r}")
        return self.frame[name].to_numpy(dtype=float)

    @classmethod
    def from_frame(cls, frame: pd.DataFrame) -> "Dataset":
        return cls(frame.astype(float).reset_index(drop=True), 0)


def load_table(source: Source) -> Dataset:
    """Reads a comma-separated table with a header row.

    Rows containing a non-numeric or missing cell are dropped and counted.
    """
    try:
        raw = pd.read_csv(source, header=None, dtype=str, keep_default_na=False, skipinitialspace=True)
    except pd.errors.EmptyDataError:
        raise EmptyTable(f"No data found in {source}")
    except pd.errors.ParserError as e:
        raise HeaderMismatch(f"Rows do not match the header: {e}")
    if raw.empty:
        raise EmptyTable(f"No data found in {source}")

    header = [str(name).strip() for name in raw.iloc[0]]
    duplicates = sorted({name for name in header if header.count(name) > 1})
    if duplicates:
        raise HeaderMismatch(f"Duplicate column name(s): {', '.join(duplicates)}")
    if any(name == "" for name in header):
        raise HeaderMismatch("Header contains an empty column name")

    body = raw.iloc[1:].copy()
    body.columns = header
    numeric = body.apply(lambda column: pd.to_numeric(column.str.strip(), errors="coerce"))
    bad = ~np.isfinite(numeric.to_numpy(dtype=float)).all(axis=1)
    dropped = int(bad.sum())
    if dropped:
        logger.warning("Dropped %d row(s) with missing or non-numeric cells", dropped)
    frame = numeric.loc[~bad].astype(float).reset_index(drop=True)
    return Dataset(frame, dropped)


def load_table_text(text: str) -> Dataset:
    return load_table(io.StringIO(text))


def observed_baseline(dataset: Dataset, node: str) -> EmpiricalBaseline:
    """Resampling handle over one column, used by observed-column treatment specs."""
    values = dataset.column(node)
    if len(values) == 0:
        raise EmptyColumn(f"Column {node!r} has no observations")
    return EmpiricalBaseline(node, tuple(values))
