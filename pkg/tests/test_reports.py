import pandas as pd
import pytest

from filterfunc.core.catalog import parse_filter_list
from filterfunc.core.errors import NoAtoms
from filterfunc.core.filters import belief, plausibility
from filterfunc.core.mass import bayesian_mass, sampling_probability
from filterfunc.core.universe import EventSelector, enumerate_subsets, select_events
from filterfunc.io.reports import (PLOT_COLUMNS, SUMMARY_COLUMNS,
                                   evaluate_table, file_slug, format_value,
                                   render_table, write_report)
from filterfunc.sim import ExperimentConfig, build_report


def test_format_value_rounds_half_to_even():
    assert format_value(0.5) == "0.500000"
    # 1/128 and 3/128 are exact binary ties at the seventh decimal
    assert format_value(0.0078125) == "0.007812"
    assert format_value(0.0234375) == "0.023438"
    assert format_value(1.0) == "1.000000"
    assert format_value(0.8) == "0.800000"


def test_file_slug():
    assert file_slug("bel+") == "belplus"
    assert file_slug("pl_k:2") == "pl_k2"
    assert file_slug("upper_s:0.5") == "upper_s0.5"


def test_evaluate_table_values_are_library_values(fixture_a):
    events = enumerate_subsets(fixture_a.universe)
    frame = evaluate_table(fixture_a, parse_filter_list("bel,pl"), events)
    assert list(frame.columns) == ["varname", "event", "bel", "pl"]
    assert len(frame) == 7
    for e, (_, row) in zip(events, frame.iterrows()):
        assert row["bel"] == belief(fixture_a, e)
        assert row["pl"] == plausibility(fixture_a, e)


def test_render_table(fixture_a):
    events = enumerate_subsets(fixture_a.universe)
    text = render_table(evaluate_table(fixture_a, parse_filter_list("bel,pl"), events))
    lines = text.splitlines()
    assert lines[0] == "event bel pl"
    assert len(lines) == 8
    assert "{2,3} 0.500000 0.800000" in lines


def test_mu_has_two_columns(algebra_b):
    m = bayesian_mass(sampling_probability(algebra_b))
    frame = evaluate_table(m, parse_filter_list("mu,gamma,alpha,cp_p"),
                           select_events(algebra_b, EventSelector.SINGLETONS))
    assert list(frame.columns) == ["varname", "event", "mu_lower", "mu_upper",
                                   "gamma", "alpha", "cp_p"]
    assert frame["mu_upper"].tolist() == [0.5, 0.5, 0.25, 0.25]


def test_preconditions_checked_before_evaluation(fixture_a):
    with pytest.raises(NoAtoms):
        evaluate_table(fixture_a, parse_filter_list("bel,gamma"),
                       enumerate_subsets(fixture_a.universe))


def _report(mass, replications=100, seed=7):
    cfg = ExperimentConfig(mass=mass, filters=tuple(parse_filter_list("bel,bel+")),
                           sample_size=50, replications=replications, seed=seed)
    return build_report(cfg)


def test_write_report_files(fixture_a, tmp_path):
    written = write_report(_report(fixture_a), tmp_path)
    assert [p.name for p in written] == ["databel50.csv", "databelplus50.csv", "summary50.csv"]

    plot_text = (tmp_path / "databel50.csv").read_bytes().decode("utf-8")
    assert plot_text.splitlines()[0] == "Varname lower median upper"
    assert "\r" not in plot_text
    plot = pd.read_csv(tmp_path / "databel50.csv", sep=" ")
    assert list(plot.columns) == PLOT_COLUMNS
    assert plot["Varname"].tolist() == list(range(1, 8))
    assert (plot["lower"] <= plot["median"]).all() and (plot["median"] <= plot["upper"]).all()

    summary = pd.read_csv(tmp_path / "summary50.csv", dtype={"event": str})
    assert list(summary.columns) == SUMMARY_COLUMNS
    assert len(summary) == 14
    assert summary["event"].iloc[0] == "{1}"


def test_plot_data_agrees_with_summary(fixture_a, tmp_path):
    write_report(_report(fixture_a), tmp_path)
    summary = pd.read_csv(tmp_path / "summary50.csv")
    plot = pd.read_csv(tmp_path / "databel50.csv", sep=" ")
    bel = summary[summary["filter"] == "bel"].reset_index(drop=True)
    assert bel["varname"].tolist() == plot["Varname"].tolist()
    for column, plot_column in (("q025", "lower"), ("median", "median"), ("q975", "upper")):
        assert bel[column].tolist() == plot[plot_column].tolist()


def test_single_replication_collapses_interval(fixture_a, tmp_path):
    write_report(_report(fixture_a, replications=1), tmp_path)
    plot = pd.read_csv(tmp_path / "databel50.csv", sep=" ")
    assert (plot["lower"] == plot["median"]).all()
    assert (plot["median"] == plot["upper"]).all()


def test_reruns_are_byte_identical(fixture_a, tmp_path):
    first = write_report(_report(fixture_a), tmp_path / "first")
    second = write_report(_report(fixture_a), tmp_path / "second")
    for a, b in zip(first, second):
        assert a.read_bytes() == b.read_bytes()
