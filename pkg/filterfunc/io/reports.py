"""
Evaluation tables and simulation report files.

Two report formats come out of one simulation run:
- plot data per filter, ``data<filter><N>.csv``: header
  ``Varname lower median upper``, space separated (lower/upper are the 2.5%
  and 97.5% quantiles), ready for pgfplots ``table[x=Varname, y=lower]``;
- the full summary, ``summary<N>.csv``, comma separated with every statistic.

Floats are written with 6 decimal places, rounding half to even.
"""

import logging
import re
from decimal import ROUND_HALF_EVEN, Decimal
from pathlib import Path
from typing import Dict, List, Sequence

import pandas as pd

from filterfunc.core.catalog import NamedFilter
from filterfunc.core.errors import FilterFuncError
from filterfunc.core.mass import MassFunction
from filterfunc.core.universe import SubsetMask, canonical_index
from filterfunc.sim import SamplingReport
from filterfunc.utils import ensure_directory_exists

logger = logging.getLogger(__name__)

PLOT_COLUMNS = ["Varname", "lower", "median", "upper"]
SUMMARY_COLUMNS = ["filter", "varname", "event", "true", "mean", "bias",
                   "median", "q25", "q75", "q025", "q975"]
# printf-style formatting is correctly rounded, so exact ties go to even.
FLOAT_FORMAT = "%.6f"
_SIX_PLACES = Decimal("0.000001")


def format_value(value: float) -> str:
    """Six decimal places, round half to even on the exact binary value."""
    return str(Decimal(value).quantize(_SIX_PLACES, rounding=ROUND_HALF_EVEN))


def file_slug(label: str) -> str:
    """Filesystem-safe form of a filter label: ``bel+`` -> ``belplus``."""
    return re.sub(r"[^A-Za-z0-9_.-]", "", label.replace("+", "plus"))


def evaluate_table(mass: MassFunction, filters: Sequence[NamedFilter],
                   events: Sequence[SubsetMask]) -> pd.DataFrame:
    """One row per event, one column per filter output, raw float values.

    Every filter's precondition is checked before any value is computed.
    """
    for named in filters:
        named.validate(mass)
    universe = mass.universe
    columns: Dict[str, List[float]] = {}
    for named in filters:
        for column in named.columns:
            if column in columns:
                raise FilterFuncError(f"output column {column!r} produced twice")
            columns[column] = []
        for e in events:
            for column, value in zip(named.columns, named.evaluate(mass, e)):
                columns[column].append(value)
    frame = pd.DataFrame(columns)
    frame.insert(0, "event", [universe.render(e) for e in events])
    frame.insert(0, "varname", [canonical_index(universe, e) for e in events])
    return frame


def render_table(frame: pd.DataFrame) -> str:
    """Space-separated text table; the varname column is dropped."""
    value_columns = [c for c in frame.columns if c not in ("varname", "event")]
    lines = [" ".join(["event"] + value_columns)]
    for _, row in frame.iterrows():
        lines.append(" ".join([row["event"]] + [format_value(row[c]) for c in value_columns]))
    return "\n".join(lines) + "\n"


def report_frame(report: SamplingReport) -> pd.DataFrame:
    """The full summary as a DataFrame in report row order."""
    universe = report.config.mass.universe
    return pd.DataFrame(
        [[row.filter_label, row.varname, universe.render(row.event), row.true_value,
          row.mean, row.bias, row.median, row.q25, row.q75, row.q025, row.q975]
         for row in report.rows],
        columns=SUMMARY_COLUMNS)


def plot_frame(report: SamplingReport, label: str) -> pd.DataFrame:
    """Varname/lower/median/upper for one filter."""
    rows = report.rows_for(label)
    if not rows:
        raise FilterFuncError(f"no rows for filter {label!r}")
    return pd.DataFrame([[row.varname, row.q025, row.median, row.q975] for row in rows],
                        columns=PLOT_COLUMNS)


def write_report(report: SamplingReport, out_dir) -> List[Path]:
    """Write the plot-data files and the summary CSV; returns the paths written."""
    out_dir = Path(out_dir)
    if not ensure_directory_exists(out_dir):
        raise OSError(f"cannot create output directory {out_dir}")
    n_obs = report.config.sample_size
    written = []
    for named in report.config.filters:
        path = out_dir / f"data{file_slug(named.label)}{n_obs}.csv"
        plot_frame(report, named.label).to_csv(
            path, sep=" ", index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
        written.append(path)
    summary = out_dir / f"summary{n_obs}.csv"
    report_frame(report).to_csv(
        summary, index=False, float_format=FLOAT_FORMAT, lineterminator="\n",
        encoding="utf-8")
    written.append(summary)
    for path in written:
        logger.info("Wrote %s", path)
    return written
