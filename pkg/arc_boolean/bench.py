"""Benchmark harness.

For every size ``n`` the harness draws ``trials`` random polygon pairs, times each
method on the same pair and accepts the trial only when all methods return the
same circuits. Pairs that hit an unsupported configuration (tangencies,
crossings on vertices, holed results) in any method are redrawn; the redraws
are counted and reported.

Pair ``(n, trial)`` of a run with seed ``s`` is drawn from
``SeedSequence(s, spawn_key=(n, trial, attempt))``, printed as
``s/n/trial/attempt``, so any single trial can be reproduced on its own.
"""

import csv
import io
import logging
import math
import time
from collections import defaultdict
from collections.abc import Iterable
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from arc_boolean.configuration import BenchConfiguration, GeneratorConfiguration
from arc_boolean.errors import GenerationFailed, MismatchedResults, UnsupportedConfigurationError
from arc_boolean.generator import generate_pair
from arc_boolean.geometry import DEFAULT_TOLERANCES, Tolerances
from arc_boolean.oracle import results_equal
from arc_boolean.pipeline import Method, PipelineStats, boolean_operation
from arc_boolean.polygon import ArcPolygon, BooleanOperation, BoolResult

logger = logging.getLogger(__name__)

_MAX_REDRAWS = 100
CSV_COLUMNS = (
    "n",
    "method",
    "mean_s",
    "std_s",
    "trials",
    "skipped",
    "mean_pair_tests",
    "mean_events",
    "improvement",
)


@dataclass
class Measurement:
    """One method on one input pair."""

    method: Method
    seconds: float
    pair_tests: int
    events: int


@dataclass
class Trial:
    """All methods on one accepted input pair."""

    n: int
    trial: int
    seed: str
    redraws: int
    measurements: list[Measurement] = field(default_factory=list)


@dataclass
class BenchRow:
    """Aggregate of one method at one size.

    ``improvement`` is this method's mean time over the re2l mean time.
    """

    n: int
    method: str
    mean: float
    std: float
    trials: int
    skipped: int
    mean_pair_tests: float
    mean_events: float
    improvement: float = math.nan


@dataclass
class BenchReport:
    """Rows ordered by size, then by method as requested."""

    rows: list[BenchRow] = field(default_factory=list)

    def row(self, n: int, method: str) -> BenchRow:
        """The row of one method at one size."""
        return next(r for r in self.rows if r.n == n and r.method == method)

    def to_csv(self) -> str:
        """The report as comma separated text with a header line."""
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for r in self.rows:
            writer.writerow(
                [
                    r.n,
                    r.method,
                    f"{r.mean:.6e}",
                    f"{r.std:.6e}",
                    r.trials,
                    r.skipped,
                    f"{r.mean_pair_tests:.1f}",
                    f"{r.mean_events:.1f}",
                    f"{r.improvement:.3f}",
                ]
            )
        return buffer.getvalue()

    def write_csv(self, path: Path) -> None:
        """Write the report to a file."""
        Path(path).write_text(self.to_csv(), encoding="utf-8")


def time_methods(
    p1: ArcPolygon,
    p2: ArcPolygon,
    methods: Iterable[Method],
    op: BooleanOperation = BooleanOperation.INTERSECTION,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> tuple[list[Measurement], list[BoolResult]]:
    """Run every method once on the pair, timing only the operation itself."""
    measurements, results = [], []
    for method in methods:
        stats = PipelineStats()
        start = time.perf_counter()
        result = boolean_operation(p1, p2, op, tol, method, stats)
        elapsed = time.perf_counter() - start
        measurements.append(Measurement(method, elapsed, stats.sweep.pair_tests, stats.sweep.events))
        results.append(result)
    return measurements, results


def check_agreement(results: list[BoolResult], methods: list[Method], seed: str, eps: float) -> None:
    """Compare every result with the first one.

    :raises MismatchedResults: If two methods disagree.
    """
    for method, result in zip(methods[1:], results[1:], strict=True):
        if not results_equal(results[0], result, eps):
            raise MismatchedResults(f"{method.value} disagrees with {methods[0].value}", seed)


def run_trial(
    n: int,
    trial: int,
    seed: int,
    methods: list[Method],
    op: BooleanOperation = BooleanOperation.INTERSECTION,
    generator: GeneratorConfiguration | None = None,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> Trial:
    """Draw pairs until one runs through every method, then check that they agree.

    :raises GenerationFailed: If no usable pair turned up within the redraw cap.
    :raises MismatchedResults: If the methods disagree on the accepted pair.
    """
    for attempt in range(_MAX_REDRAWS):
        label = f"{seed}/{n}/{trial}/{attempt}"
        stream = np.random.SeedSequence(seed, spawn_key=(n, trial, attempt))
        try:
            p1, p2 = generate_pair(n, stream, config=generator, tol=tol)
            measurements, results = time_methods(p1, p2, methods, op, tol)
        except (UnsupportedConfigurationError, GenerationFailed) as e:
            logger.warning(f"Skipping pair {label}: {e.code}: {e}")
            continue
        check_agreement(results, methods, label, tol.eps_pt)
        return Trial(n, trial, label, attempt, measurements)
    raise GenerationFailed(f"No usable pair for n={n}, trial {trial} after {_MAX_REDRAWS} draws")


def _run_trial_task(args: tuple) -> Trial:
    return run_trial(*args)


def aggregate(trials: list[Trial], methods: list[Method]) -> BenchReport:
    """Mean and standard deviation per (n, method) plus the improvement of re2l."""
    by_size: dict[int, list[Trial]] = defaultdict(list)
    for t in trials:
        by_size[t.n].append(t)

    report = BenchReport()
    for n in sorted(by_size):
        group = by_size[n]
        skipped = sum(t.redraws for t in group)
        rows = {}
        for method in methods:
            ms = [m for t in group for m in t.measurements if m.method is method]
            seconds = np.array([m.seconds for m in ms])
            rows[method] = BenchRow(
                n=n,
                method=method.value,
                mean=float(seconds.mean()),
                std=float(seconds.std(ddof=1)) if len(ms) > 1 else 0.0,
                trials=len(ms),
                skipped=skipped,
                mean_pair_tests=float(np.mean([m.pair_tests for m in ms])),
                mean_events=float(np.mean([m.events for m in ms])),
            )
        if Method.RE2L in rows and rows[Method.RE2L].mean > 0:
            for row in rows.values():
                row.improvement = row.mean / rows[Method.RE2L].mean
        report.rows.extend(rows.values())
    return report


def run_bench(
    config: BenchConfiguration,
    seed: int,
    op: BooleanOperation = BooleanOperation.INTERSECTION,
    generator: GeneratorConfiguration | None = None,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> BenchReport:
    """Benchmark the configured methods over random pairs of every configured size.

    :raises MismatchedResults: With the reproducing seed if methods disagree.
    """
    methods = [Method(m) for m in config.methods]
    tasks = [(n, trial, seed, methods, op, generator, tol) for n in config.sizes for trial in range(config.trials)]
    logger.info(f"Benchmarking {len(tasks)} pairs with {', '.join(m.value for m in methods)}")
    if config.workers > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            trials = list(pool.map(_run_trial_task, tasks))
    else:
        trials = [run_trial(*task) for task in tasks]
    trials.sort(key=lambda t: (t.n, t.trial))

    report = aggregate(trials, methods)
    for n in config.sizes:
        skipped = sum(t.redraws for t in trials if t.n == n)
        ratio = skipped / (skipped + config.trials)
        if ratio > config.max_skip_ratio:
            logger.warning(f"n={n}: {skipped} redraws ({ratio:.1%}) exceed the configured skip ratio")
    return report


def run_fixture_bench(
    p1: ArcPolygon,
    p2: ArcPolygon,
    trials: int,
    methods: list[Method],
    op: BooleanOperation = BooleanOperation.INTERSECTION,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> BenchReport:
    """Time every method repeatedly on one fixed pair.

    :raises MismatchedResults: If the methods disagree.
    """
    runs = []
    for trial in range(trials):
        measurements, results = time_methods(p1, p2, methods, op, tol)
        check_agreement(results, methods, f"fixture/{trial}", tol.eps_pt)
        runs.append(Trial(max(p1.n_edges, p2.n_edges), trial, f"fixture/{trial}", 0, measurements))
    return aggregate(runs, methods)


def scaling_fit(report: BenchReport, method: str = Method.RE2L.value) -> float:
    """Fit ``a * n log n + b`` to a method's mean times.

    :return: The largest residual relative to the measured mean.
    """
    rows = sorted((r for r in report.rows if r.method == method), key=lambda r: r.n)
    n = np.array([r.n for r in rows], dtype=float)
    y = np.array([r.mean for r in rows])
    design = np.column_stack((n * np.log(n), np.ones_like(n)))
    coeffs, *_ = np.linalg.lstsq(design, y, rcond=None)
    residuals = y - design @ coeffs
    return float(np.max(np.abs(residuals) / y))
