"""
Model files in, evaluation tables and report files out.
"""

from .modelfile import Model, load_model, parse_model_file, render_model
from .reports import (evaluate_table, format_value, plot_frame, render_table,
                      report_frame, write_report)

__all__ = [
    "Model", "evaluate_table", "format_value", "load_model", "parse_model_file",
    "plot_frame", "render_model", "render_table", "report_frame", "write_report",
]
