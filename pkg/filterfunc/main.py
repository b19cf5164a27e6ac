"""
filterfunc command-line front end.

    python -m filterfunc eval --model data/fixture_a.model --filters bel,pl
    python -m filterfunc simulate --model data/fixture_a.model --filters bel --nobs 50 --reps 100 --seed 7 --out results
    python -m filterfunc study --config data/study.yaml
    python -m filterfunc render --model data/pks_five_items.model

Exit codes: 0 success, 2 parse or configuration error, 3 runtime error.
"""

import argparse
import logging
import sys
from dataclasses import replace
from pathlib import Path
from typing import List, Optional, Sequence

from filterfunc import __version__
from filterfunc.core.catalog import VOCABULARY, parse_filter_list
from filterfunc.core.errors import (ConfigError, FilterFuncError,
                                    InvalidParameter, ParseError,
                                    UnknownFilter)
from filterfunc.core.mass import EstimationMethod
from filterfunc.core.universe import EventSelector, select_events
from filterfunc.io.modelfile import Model, load_model, render_model
from filterfunc.io.reports import evaluate_table, render_table, write_report
from filterfunc.sim import ExperimentConfig, build_report
from filterfunc.utils import (EVENT_SELECTORS, ESTIMATORS, ConfigManager,
                              FilterFuncConfig, Logger, LogLevel,
                              format_duration)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_RUNTIME = 3

RUN_CONFIG_NAME = "run_config.yaml"

_USAGE_ERRORS = (ParseError, ConfigError, UnknownFilter, InvalidParameter)


def build_parser() -> argparse.ArgumentParser:
    """Create the argument parser with one subparser per command."""
    parser = argparse.ArgumentParser(
        prog="filterfunc",
        description="Evaluate filter functions and simulate their sampling distributions.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--config", help="YAML or JSON configuration file")
    parser.add_argument("--log-level", choices=[level.value for level in LogLevel],
                        help="overrides FILTERFUNC_LOG_LEVEL and the config file")
    parser.add_argument("--log-file", help="also write log records to this file")
    sub = parser.add_subparsers(dest="command", required=True)

    eval_cmd = sub.add_parser("eval", help="print a table of filter values")
    eval_cmd.add_argument("--model", required=True, help="model file")
    eval_cmd.add_argument("--filters", default="bel,pl",
                          help="comma-separated list from: " + ", ".join(VOCABULARY))
    eval_cmd.add_argument("--events", choices=EVENT_SELECTORS, default="nonempty")

    def add_sampling_flags(cmd: argparse.ArgumentParser) -> None:
        cmd.add_argument("--model", help="model file (defaults to study.model_path)")
        cmd.add_argument("--filters", help="comma-separated filter list")
        cmd.add_argument("--reps", type=int, help="replications R")
        cmd.add_argument("--seed", type=int, help="64-bit RNG seed")
        cmd.add_argument("--out", help="output directory")
        cmd.add_argument("--events", choices=EVENT_SELECTORS)
        cmd.add_argument("--workers", type=int, help="threads drawing replications")
        cmd.add_argument("--estimator", choices=ESTIMATORS)

    simulate = sub.add_parser("simulate", help="write plot data and a summary for one N_obs")
    add_sampling_flags(simulate)
    simulate.add_argument("--nobs", type=int, required=True, help="observations per replication")

    study = sub.add_parser("study", help="simulate every configured sample size")
    add_sampling_flags(study)

    render = sub.add_parser("render", help="parse a model file and print it back")
    render.add_argument("--model", required=True, help="model file")
    return parser


def load_configuration(args: argparse.Namespace) -> FilterFuncConfig:
    """Config file, then environment, then command-line flags."""
    manager = ConfigManager()
    config = manager.load_config(args.config)
    study = config.study
    overrides = {
        "filters": [f.strip() for f in args.filters.split(",")] if getattr(args, "filters", None) else None,
        "replications": getattr(args, "reps", None),
        "seed": getattr(args, "seed", None),
        "out_dir": getattr(args, "out", None),
        "events": getattr(args, "events", None),
        "workers": getattr(args, "workers", None),
        "estimator": getattr(args, "estimator", None),
    }
    for key, value in overrides.items():
        if value is not None:
            setattr(study, key, value)
    if getattr(args, "model", None):
        study.model_path = args.model
    elif study.model_path and args.config:
        # relative model paths in a config file are relative to that file
        candidate = Path(study.model_path)
        if not candidate.is_absolute():
            study.model_path = str(Path(args.config).parent / candidate)
    if args.log_level:
        config.logging.level = LogLevel(args.log_level)
    if args.log_file:
        config.logging.log_file = args.log_file

    errors = manager.validate_config(config)
    if errors:
        raise ConfigError("; ".join(errors))
    return config


def _require_model(config: FilterFuncConfig) -> Model:
    if not config.study.model_path:
        raise ConfigError("no model given; pass --model or set study.model_path")
    return load_model(config.study.model_path)


def cmd_eval(args: argparse.Namespace, config: FilterFuncConfig) -> int:
    """Print one row per event and one column per filter output."""
    model = load_model(args.model)
    filters = parse_filter_list(args.filters)
    events = select_events(model.family, EventSelector(config.study.events))
    table = evaluate_table(model.mass, filters, events)
    sys.stdout.write(render_table(table))
    return EXIT_OK


def _experiment(model: Model, config: FilterFuncConfig, n_obs: int) -> ExperimentConfig:
    study = config.study
    return ExperimentConfig(
        mass=model.mass,
        filters=tuple(parse_filter_list(",".join(study.filters))),
        sample_size=n_obs,
        replications=study.replications,
        seed=study.seed,
        selector=EventSelector(study.events),
        workers=study.workers,
        estimator=EstimationMethod(study.estimator),
    )


def _run(model: Model, config: FilterFuncConfig, n_obs: int, out_dir: Path) -> List[Path]:
    report = build_report(_experiment(model, config, n_obs))
    written = write_report(report, out_dir)
    logger.info("N_obs=%d finished in %s", n_obs, format_duration(report.elapsed_seconds))
    if report.renormalizations:
        logger.warning("N_obs=%d: %d probability vector(s) rescaled before sampling",
                       n_obs, report.renormalizations)
    return written


def _save_effective_config(config: FilterFuncConfig, out_dir: Path,
                           sample_sizes: Sequence[int]) -> int:
    """Write the configuration a run used next to its outputs."""
    study = config.study
    model_path = str(Path(study.model_path).resolve()) if study.model_path else None
    saved = replace(config, study=replace(
        study, model_path=model_path, sample_sizes=list(sample_sizes)))
    if not ConfigManager().save_config(saved, out_dir / RUN_CONFIG_NAME):
        return EXIT_RUNTIME
    return EXIT_OK


def cmd_simulate(args: argparse.Namespace, config: FilterFuncConfig) -> int:
    """Simulate one sample size and write its report files."""
    if args.nobs < 1:
        raise ConfigError(f"--nobs must be at least 1, got {args.nobs}")
    model = _require_model(config)
    out_dir = Path(config.study.out_dir)
    _run(model, config, args.nobs, out_dir)
    return _save_effective_config(config, out_dir, [args.nobs])


def cmd_study(args: argparse.Namespace, config: FilterFuncConfig) -> int:
    """Simulate every configured sample size, one output directory per size."""
    model = _require_model(config)
    out_root = Path(config.study.out_dir)
    for n_obs in config.study.sample_sizes:
        _run(model, config, n_obs, out_root / f"n{n_obs}")
    return _save_effective_config(config, out_root, config.study.sample_sizes)


def cmd_render(args: argparse.Namespace, config: FilterFuncConfig) -> int:
    sys.stdout.write(render_model(load_model(args.model)))
    return EXIT_OK


COMMANDS = {
    "eval": cmd_eval,
    "simulate": cmd_simulate,
    "study": cmd_study,
    "render": cmd_render,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Entry point; returns the process exit code."""
    args = build_parser().parse_args(argv)
    try:
        config = load_configuration(args)
    except FilterFuncError as e:
        Logger.setup_logging(LogLevel(args.log_level) if args.log_level else LogLevel.INFO)
        logger.error("%s", e)
        return EXIT_USAGE
    Logger.setup_logging(config.logging.level, config.logging.log_file)

    try:
        return COMMANDS[args.command](args, config)
    except _USAGE_ERRORS as e:
        logger.error("%s", e)
        return EXIT_USAGE
    except FilterFuncError as e:
        logger.error("%s", e)
        return EXIT_RUNTIME
    except OSError as e:
        logger.error("I/O error: %s", e)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
