"""
Sampling distributions of filter estimates for a probabilistic knowledge structure.

Each replication draws N_obs solving patterns multinomially from the true
mass, estimates m̂ by relative frequencies and evaluates every configured
filter on every event. Replications land in preallocated rows indexed by r,
so the result is bit-identical for any number of workers.
"""

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from filterfunc.core.catalog import FilterKind, NamedFilter
from filterfunc.core.errors import ConfigError, EmptySample
from filterfunc.core.filters import eval_filter, weight
from filterfunc.core.mass import (EstimationMethod, MassFunction,
                                  ObservationCounts)
from filterfunc.core.universe import (EventSelector, SubsetMask,
                                      canonical_index, cardinality,
                                      select_events)
from filterfunc.sim.rng import ALGORITHM, MAX_SEED, replication_generator

logger = logging.getLogger(__name__)

DEFAULT_REPLICATIONS = 10000
DEFAULT_SEED = 20180601
QUANTILES = (0.025, 0.25, 0.5, 0.75, 0.975)


@dataclass(frozen=True)
class ExperimentConfig:
    """Inputs of one sampling experiment."""
    mass: MassFunction
    filters: Tuple[NamedFilter, ...]
    sample_size: int
    replications: int = DEFAULT_REPLICATIONS
    seed: int = DEFAULT_SEED
    include_empty_event: bool = False
    selector: Optional[EventSelector] = None
    workers: int = 1
    estimator: EstimationMethod = EstimationMethod.RELATIVE_FREQUENCY

    def events(self) -> List[SubsetMask]:
        """Events in canonical order; all nonempty subsets unless a selector is set."""
        family = self.mass.family
        if self.selector is not None:
            return select_events(family, self.selector)
        if self.include_empty_event:
            return select_events(family, EventSelector.ALL)
        return select_events(family, EventSelector.NONEMPTY)

    def validate(self) -> None:
        """Raise ConfigError, or the filter's own precondition error, before sampling."""
        if self.sample_size < 1:
            raise ConfigError(f"sample size must be at least 1, got {self.sample_size}")
        if self.replications < 1:
            raise ConfigError(f"replications must be at least 1, got {self.replications}")
        if not 0 <= self.seed <= MAX_SEED:
            raise ConfigError(f"seed must be an unsigned 64-bit integer, got {self.seed}")
        if self.workers < 1:
            raise ConfigError(f"workers must be at least 1, got {self.workers}")
        if not self.filters:
            raise ConfigError("no filters configured")
        labels = [f.label for f in self.filters]
        if len(set(labels)) != len(labels):
            raise ConfigError(f"filter labels must be unique: {labels}")
        for named in self.filters:
            if named.kind is not FilterKind.MASS:
                raise ConfigError(
                    f"{named.label} depends only on the structure; it has no sampling distribution")
            named.validate(self.mass)


@dataclass(frozen=True)
class SummaryStats:
    """Summary of one sampling distribution."""
    mean: float
    bias: float
    median: float
    q25: float
    q75: float
    q025: float
    q975: float


@dataclass(frozen=True)
class StatsRow:
    """Summary statistics for one (filter, event) pair."""
    event: SubsetMask
    varname: int
    filter_label: str
    mean: float
    bias: float
    median: float
    q25: float
    q75: float
    q025: float
    q975: float
    true_value: float


@dataclass
class ReplicationSamples:
    """Per-replication filter values: one (R x events) array per filter label.

    ``renormalizations`` counts the probability vectors rescaled before drawing.
    """
    events: Tuple[SubsetMask, ...]
    values: Dict[str, np.ndarray] = field(default_factory=dict)
    renormalizations: int = 0

    def samples(self, label: str, event: SubsetMask) -> np.ndarray:
        """The length-R sample array of one (filter, event) pair."""
        return self.values[label][:, self.events.index(event)]


@dataclass
class SamplingReport:
    """Echo of the configuration plus one StatsRow per (filter, event)."""
    config: ExperimentConfig
    rows: List[StatsRow]
    elapsed_seconds: float = 0.0
    rng_algorithm: str = ALGORITHM
    renormalizations: int = 0

    def rows_for(self, label: str) -> List[StatsRow]:
        return [row for row in self.rows if row.filter_label == label]


def _category_probabilities(m: MassFunction,
                             focal: Sequence[SubsetMask]) -> Tuple[np.ndarray, bool]:
    """Focal masses as multinomial probabilities, and whether they were rescaled."""
    pvals = np.array([m(y) for y in focal], dtype=np.float64)
    total = float(pvals.sum())
    if total == 1.0:
        return pvals, False
    # numpy requires sum(pvals) <= 1; the deviation is within the 1e-9 tolerance
    logger.warning("Rescaling focal masses summing to %.17g before sampling", total)
    return pvals / total, True


def sample_counts(m: MassFunction, n_obs: int,
                  rng: np.random.Generator) -> ObservationCounts:
    """Draw n_obs patterns multinomially over the focal elements of m."""
    if n_obs < 1:
        raise ConfigError(f"sample size must be at least 1, got {n_obs}")
    focal = m.focal_elements
    pvals, _ = _category_probabilities(m, focal)
    draws = rng.multinomial(n_obs, pvals)
    counts = {y: int(c) for y, c in zip(focal, draws) if c}
    return ObservationCounts(m.family, counts, n_obs)


def _draw_counts(cfg: ExperimentConfig) -> Tuple[np.ndarray, bool]:
    """R x members matrix of observation counts, and whether pvals were rescaled."""
    members = cfg.mass.family.members
    focal = cfg.mass.focal_elements
    columns = np.array([members.index(y) for y in focal], dtype=np.intp)
    pvals, rescaled = _category_probabilities(cfg.mass, focal)
    counts = np.zeros((cfg.replications, len(members)), dtype=np.int64)

    def fill(start: int, stop: int) -> None:
        for r in range(start, stop):
            rng = replication_generator(cfg.seed, r)
            counts[r, columns] = rng.multinomial(cfg.sample_size, pvals)
        logger.debug("Drew replications %d..%d", start, stop - 1)

    if cfg.workers == 1:
        fill(0, cfg.replications)
    else:
        step = -(-cfg.replications // cfg.workers)
        bounds = [(s, min(s + step, cfg.replications))
                  for s in range(0, cfg.replications, step)]
        with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
            for future in [pool.submit(fill, a, b) for a, b in bounds]:
                future.result()
    return counts, rescaled


def _estimates(cfg: ExperimentConfig, counts: np.ndarray) -> np.ndarray:
    """m̂ for every replication, with the same float expression as estimate_mass."""
    if cfg.estimator is EstimationMethod.ITEM_WEIGHTED:
        logger.warning("Item-weighted estimator does not produce a normalized mass")
        sizes = np.array([cardinality(y) for y in cfg.mass.family.members], dtype=np.int64)
        return (counts * sizes) / cfg.mass.universe.n
    return counts / cfg.sample_size


def _weight_matrix(cfg: ExperimentConfig, named: NamedFilter,
                   events: Sequence[SubsetMask]) -> np.ndarray:
    family = cfg.mass.family
    return np.array([[weight(named.spec, family, e, y) for y in family.members]
                     for e in events], dtype=np.float64).reshape(len(events), len(family))


def run_replications(cfg: ExperimentConfig) -> ReplicationSamples:
    """Evaluate every filter on every event for R sampled estimates."""
    cfg.validate()
    events = tuple(cfg.events())
    logger.info("Sampling %d replications of N=%d (seed %d, %d worker(s))",
                cfg.replications, cfg.sample_size, cfg.seed, cfg.workers)
    counts, rescaled = _draw_counts(cfg)
    mhat = _estimates(cfg, counts)
    result = ReplicationSamples(events, renormalizations=int(rescaled))
    for named in cfg.filters:
        w = _weight_matrix(cfg, named, events)
        values = np.zeros((cfg.replications, len(events)), dtype=np.float64)
        # member by member, matching the summation order of eval_filter
        for j in range(w.shape[1]):
            values += mhat[:, j, None] * w[None, :, j]
        result.values[named.label] = values
    return result


def summarize(samples: Sequence[float], true_value: float) -> SummaryStats:
    """Mean, bias and linearly interpolated quantiles of a sample.

    Quantiles use h = (len - 1)·q on the sorted sample,
    x[floor(h)] + (h - floor(h))·(x[floor(h) + 1] - x[floor(h)]).
    """
    arr = np.asarray(samples, dtype=np.float64)
    if arr.size == 0:
        raise EmptySample("cannot summarize an empty sample")
    mean = float(np.mean(arr))
    q025, q25, median, q75, q975 = (
        float(q) for q in np.quantile(arr, QUANTILES, method="linear"))
    return SummaryStats(mean=mean, bias=mean - true_value, median=median,
                        q25=q25, q75=q75, q025=q025, q975=q975)


def build_report(cfg: ExperimentConfig) -> SamplingReport:
    """Run the experiment and summarize every (filter, event) distribution."""
    started = time.perf_counter()
    replicated = run_replications(cfg)
    universe = cfg.mass.universe
    rows = []
    for named in cfg.filters:
        values = replicated.values[named.label]
        for column, event in enumerate(replicated.events):
            true_value = eval_filter(cfg.mass, named.spec, event)
            stats = summarize(values[:, column], true_value)
            rows.append(StatsRow(
                event=event,
                varname=canonical_index(universe, event),
                filter_label=named.label,
                mean=stats.mean, bias=stats.bias, median=stats.median,
                q25=stats.q25, q75=stats.q75, q025=stats.q025, q975=stats.q975,
                true_value=true_value))
    rows.sort(key=lambda row: (row.filter_label, row.varname))
    elapsed = time.perf_counter() - started
    logger.info("Summarized %d rows in %.2fs", len(rows), elapsed)
    return SamplingReport(cfg, rows, elapsed, renormalizations=replicated.renormalizations)


__all__ = [
    "DEFAULT_REPLICATIONS", "DEFAULT_SEED", "ExperimentConfig",
    "ReplicationSamples", "SamplingReport", "StatsRow", "SummaryStats",
    "build_report", "run_replications", "sample_counts", "summarize",
    "replication_generator",
]
