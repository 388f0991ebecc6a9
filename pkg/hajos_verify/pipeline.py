"""Define the verification pipeline: per-graph stages, stream processing and tally reports.

A graph first goes through the minimum-counterexample filter.  Survivors get one decomposition attempt from every
heuristic, each with its own random stream derived from the master seed and the graph's canonical form.  Graphs the
heuristics cannot settle enter a race between the exact search and repeated random-long-cycle decompositions.  The
per-graph wall budget (timeout_ms) starts when the graph enters the pipeline, so heuristic time counts against it.

Verification reports carry one row per order.  After n and total come the filter columns, the per-heuristic
columns, race_rlc, exact and counterexamples, then a trailing aborted column, so the outcome columns of a row always
sum to its total.  Filter-only reports end with passed instead.
"""

import csv
import enum
import io
import json
import logging
import threading
import time
from concurrent.futures import FIRST_COMPLETED, ProcessPoolExecutor, ThreadPoolExecutor, wait
from dataclasses import dataclass, field

from ._helpers import Graph6Error, HeuristicError, NotEulerianError, PreconditionError, stage_log
from .canonical import PERFORMANCE_ORDER, canonical_form
from .config import Config
from .exact import ExactStatus, SearchBudget, decide
from .filter import CRITERIA_LABELS, apply_filter
from .graph import hajos_bound, is_eulerian, validate_decomposition
from .graph6 import parse_graph6, read_graph6_lines, to_graph6
from .heuristics import STRATEGY_ORDER, RngStream, decompose, rlc_repeat
from .ip_models import select_formulation, write_lp

LOGGER = logging.getLogger(__name__)

FILTER_COLUMNS = tuple(f"filtered_{label}" for label in CRITERIA_LABELS) + ("not_biconnected",)
# aborted comes last so every row sums to total
VERIFY_COLUMNS = (("n", "total") + FILTER_COLUMNS
                  + tuple(f"heur_{strategy.value}" for strategy in STRATEGY_ORDER)
                  + ("race_rlc", "exact", "counterexamples", "aborted"))
FILTER_REPORT_COLUMNS = ("n", "total") + FILTER_COLUMNS + ("passed",)


class StreamError(Exception):
    """A stream line could not be processed and the run was asked to fail fast."""


class OutcomeTag(enum.Enum):
    """How the pipeline settled a graph."""

    FILTERED = "filtered_not_minimal"
    HEURISTIC_VERIFIED = "heuristic_verified"
    EXACT_VERIFIED = "exact_verified"
    RACE_RLC_VERIFIED = "race_rlc_verified"
    COUNTEREXAMPLE = "counterexample"
    ABORTED = "aborted"


VERIFIED_TAGS = (OutcomeTag.HEURISTIC_VERIFIED, OutcomeTag.EXACT_VERIFIED, OutcomeTag.RACE_RLC_VERIFIED)


@dataclass(frozen=True)
class VerifyOutcome:
    """The result of verifying one graph.

    *criterion* is the filter label ("i".."vii" or "not_biconnected") of a filtered graph, *strategy* the heuristic
    that verified it, and *lp_path* the model file written for it, if any.
    """

    tag: OutcomeTag
    graph: object
    decomposition: object = None
    criterion: str = None
    strategy: object = None
    elapsed: float = 0.0
    lp_path: str = None

    @property
    def verified(self):
        """Return True if a within-bound decomposition was found."""
        return self.tag in VERIFIED_TAGS

    @property
    def column(self):
        """Return the report column this outcome is tallied under."""
        if self.tag is OutcomeTag.FILTERED:
            return "not_biconnected" if self.criterion == "not_biconnected" else f"filtered_{self.criterion}"
        if self.tag is OutcomeTag.HEURISTIC_VERIFIED:
            return f"heur_{self.strategy.value}"
        return {
            OutcomeTag.EXACT_VERIFIED: "exact",
            OutcomeTag.RACE_RLC_VERIFIED: "race_rlc",
            OutcomeTag.COUNTEREXAMPLE: "counterexamples",
            OutcomeTag.ABORTED: "aborted",
        }[self.tag]


@dataclass
class _TallyReport:
    """Per-order tallies plus the lines that could not be processed."""

    COLUMNS = ()

    rows: dict = field(default_factory=dict)
    parse_errors: list = field(default_factory=list)
    wall_time: float = 0.0

    def _row(self, n):
        """Return the tally row of order n, creating it if needed."""
        if n not in self.rows:
            self.rows[n] = {column: 0 for column in self.COLUMNS[1:]}
        return self.rows[n]

    def count(self, n, column):
        """Add one graph of order n under *column*."""
        row = self._row(n)
        row["total"] += 1
        row[column] += 1

    def table(self):
        """Return the rows as lists in column order, sorted by n."""
        return [[n] + [self.rows[n][column] for column in self.COLUMNS[1:]] for n in sorted(self.rows)]

    def _merge_into(self, merged, other):
        """Add both reports' tallies and errors into *merged*."""
        for report in (self, other):
            for n, row in report.rows.items():
                target = merged._row(n)  # pylint: disable=protected-access
                for column, value in row.items():
                    target[column] += value
            merged.parse_errors.extend(report.parse_errors)
        merged.wall_time = self.wall_time + other.wall_time
        return merged

    def to_dict(self):
        """Return the report as plain data."""
        return {
            "columns": list(self.COLUMNS),
            "rows": [dict(zip(self.COLUMNS, values)) for values in self.table()],
            "parse_errors": [{"line": line, "error": error} for line, error in self.parse_errors],
        }


@dataclass
class RunReport(_TallyReport):
    """Tallies of a verification run; every row's outcome columns sum to its total."""

    COLUMNS = VERIFY_COLUMNS

    aborted_graphs: list = field(default_factory=list)
    counterexample_graphs: list = field(default_factory=list)

    def record(self, outcome):
        """Tally one outcome."""
        self.count(outcome.graph.n, outcome.column)
        if outcome.tag is OutcomeTag.ABORTED:
            self.aborted_graphs.append(to_graph6(outcome.graph))
        elif outcome.tag is OutcomeTag.COUNTEREXAMPLE:
            self.counterexample_graphs.append(to_graph6(outcome.graph))

    def merge(self, other):
        """Return a new report holding the tallies of both; merging is associative."""
        merged = self._merge_into(RunReport(), other)
        merged.aborted_graphs = self.aborted_graphs + other.aborted_graphs
        merged.counterexample_graphs = self.counterexample_graphs + other.counterexample_graphs
        return merged

    def to_dict(self):
        """Return the report as plain data."""
        data = super().to_dict()
        data["aborted_graphs"] = list(self.aborted_graphs)
        data["counterexample_graphs"] = list(self.counterexample_graphs)
        return data


@dataclass
class FilterReport(_TallyReport):
    """Tallies of a filter-only run."""

    COLUMNS = FILTER_REPORT_COLUMNS

    def record(self, n, verdict):
        """Tally one filter verdict."""
        if verdict.passed:
            self.count(n, "passed")
        elif not verdict.biconnected:
            self.count(n, "not_biconnected")
        else:
            self.count(n, f"filtered_{verdict.label}")

    def merge(self, other):
        """Return a new report holding the tallies of both."""
        return self._merge_into(FilterReport(), other)


def _is_valid(g, decomposition):
    """Return True if the decomposition partitions g's edges into at most hajos_bound(n) cycles."""
    violation = validate_decomposition(g, decomposition)
    if violation is not None:
        LOGGER.error("Rejected decomposition of %s: %s", to_graph6(g), violation)
        return False
    return len(decomposition) <= hajos_bound(g.n)


def _emit_model(g, directory):
    """Write the LP model for g and return its path, or None when g is too large to model."""
    if g.n > PERFORMANCE_ORDER:
        LOGGER.warning("Not writing an LP model for order %d: the subset rows grow as 2^n", g.n)
        return None
    return write_lp(select_formulation(g), directory)


def _race(g, config, form, deadline):
    """Run the exact search and, if racing, repeated RLC until one settles g or the deadline passes.

    :return tuple: (OutcomeTag, decomposition or None)
    """
    cancel = threading.Event()
    budget = SearchBudget(k=hajos_bound(g.n), node_limit=config.node_limit, cancel=cancel)
    with ThreadPoolExecutor(max_workers=2, thread_name_prefix="race") as pool:
        exact_future = pool.submit(decide, g, budget)
        pending = {exact_future}
        if config.race:
            rng = RngStream.derive(config.seed, form, len(STRATEGY_ORDER))
            pending.add(pool.submit(rlc_repeat, g, rng, cancel, config.max_rlc_attempts))

        try:
            while pending:
                done, pending = wait(pending, timeout=max(0.0, deadline - time.monotonic()),
                                     return_when=FIRST_COMPLETED)
                if not done:
                    LOGGER.warning("Race on %s ran out of its %dms budget", to_graph6(g), config.timeout_ms)
                    break
                # the exact result wins a tie
                if exact_future in done:
                    result = exact_future.result()
                    if result.status is ExactStatus.FEASIBLE and _is_valid(g, result.decomposition):
                        return OutcomeTag.EXACT_VERIFIED, result.decomposition
                    if result.status is ExactStatus.INFEASIBLE:
                        return OutcomeTag.COUNTEREXAMPLE, None
                for future in done - {exact_future}:
                    decomposition = future.result()
                    if decomposition is not None and _is_valid(g, decomposition):
                        return OutcomeTag.RACE_RLC_VERIFIED, decomposition
        finally:
            cancel.set()
    return OutcomeTag.ABORTED, None


@stage_log(stage_logger=LOGGER)
def verify_graph(g, config=None):
    """Settle one graph: filter, one pass of every heuristic, then the exact-versus-RLC race.

    :param Graph g: An even, connected graph with at least one edge
    :param Config config: The run options; the defaults are used if None
    :return VerifyOutcome: The outcome
    :raises NotEulerianError: if g is not even, not connected or edgeless
    """
    if not is_eulerian(g):
        raise NotEulerianError(f"{to_graph6(g)} is not an Eulerian graph (even, connected, with an edge)")
    config = config or Config()
    start = time.perf_counter()
    deadline = time.monotonic() + config.timeout

    verdict = apply_filter(g)
    if not verdict.passed:
        return VerifyOutcome(tag=OutcomeTag.FILTERED, graph=g, criterion=verdict.label,
                             elapsed=time.perf_counter() - start)

    form = canonical_form(g)
    for index, strategy in enumerate(STRATEGY_ORDER):
        rng = RngStream.derive(config.seed, form, index)
        try:
            outcome = decompose(g, strategy, rng)
        except (HeuristicError, PreconditionError) as exc:
            LOGGER.warning("%s failed on %s: %s", strategy.name, to_graph6(g), exc)
            continue
        if outcome.within_bound and _is_valid(g, outcome.decomposition):
            return VerifyOutcome(tag=OutcomeTag.HEURISTIC_VERIFIED, graph=g, decomposition=outcome.decomposition,
                                 strategy=strategy, elapsed=time.perf_counter() - start)

    lp_path = _emit_model(g, config.emit_lp_dir) if config.emit_lp_dir else None
    if time.monotonic() >= deadline:
        LOGGER.warning("Heuristics on %s used up the %dms budget", to_graph6(g), config.timeout_ms)
        return VerifyOutcome(tag=OutcomeTag.ABORTED, graph=g, elapsed=time.perf_counter() - start, lp_path=lp_path)
    tag, decomposition = _race(g, config, form, deadline)
    if tag is OutcomeTag.COUNTEREXAMPLE:
        LOGGER.warning("Counterexample found: %s", to_graph6(g))
    return VerifyOutcome(tag=tag, graph=g, decomposition=decomposition, elapsed=time.perf_counter() - start,
                         lp_path=lp_path)


def _parsed(lines, report, config):
    """Yield (line number, Graph) for the usable lines, recording or raising on the rest."""
    for number, item in read_graph6_lines(lines):
        if isinstance(item, Graph6Error):
            problem = str(item)
        elif not is_eulerian(item):
            problem = f"{to_graph6(item)} is not an Eulerian graph"
        else:
            yield number, item
            continue
        if config.fail_fast:
            raise StreamError(f"Line {number}: {problem}")
        LOGGER.warning("Skipping line %d: %s", number, problem)
        report.parse_errors.append((number, problem))


def _verify_record(task):
    """Verify one graph6 record in a worker process."""
    text, config = task
    return verify_graph(parse_graph6(text), config)


def _write_counterexample(sink, outcome):
    """Write a counterexample to the sink as soon as it is found."""
    if sink is not None:
        sink.write(to_graph6(outcome.graph) + "\n")
        sink.flush()


def verify_stream(lines, config=None, counterexample_sink=None):
    """Verify every graph of a graph6 line stream and tally the outcomes per order.

    :param iterable lines: graph6 text lines
    :param Config config: The run options; the defaults are used if None
    :param obj counterexample_sink: A file-like object receiving each counterexample's graph6 line immediately
    :return RunReport: The tallies
    :raises StreamError: on a malformed line when config.fail_fast is set
    """
    config = config or Config()
    report = RunReport()
    start = time.perf_counter()

    if config.jobs <= 1:
        outcomes = (verify_graph(g, config) for _, g in _parsed(lines, report, config))
        pool = None
    else:
        pool = ProcessPoolExecutor(max_workers=config.jobs)
        tasks = [(to_graph6(g), config) for _, g in _parsed(lines, report, config)]
        outcomes = pool.map(_verify_record, tasks)

    try:
        for outcome in outcomes:
            report.record(outcome)
            if outcome.tag is OutcomeTag.COUNTEREXAMPLE:
                _write_counterexample(counterexample_sink, outcome)
                if config.halt_on_counterexample:
                    LOGGER.warning("Halting the stream at the first counterexample")
                    break
            elif outcome.tag is OutcomeTag.ABORTED:
                LOGGER.warning("Verification of %s aborted", to_graph6(outcome.graph))
    finally:
        if pool is not None:
            pool.shutdown(cancel_futures=True)

    report.wall_time = time.perf_counter() - start
    LOGGER.info("Processed %d graphs in %.2fs", sum(row["total"] for row in report.rows.values()),
                report.wall_time)
    return report


def filter_stream(lines, config=None):
    """Apply only the minimum-counterexample filter to a graph6 line stream.

    :param iterable lines: graph6 text lines
    :param Config config: The run options; the defaults are used if None
    :return FilterReport: The per-criterion tallies
    """
    config = config or Config()
    report = FilterReport()
    start = time.perf_counter()
    for _, g in _parsed(lines, report, config):
        report.record(g.n, apply_filter(g))
    report.wall_time = time.perf_counter() - start
    return report


def process_stream(lines, config=None, counterexample_sink=None):
    """Run the filter-only pass when config.filter_only is set, the full verification otherwise."""
    config = config or Config()
    if config.filter_only:
        return filter_stream(lines, config)
    return verify_stream(lines, config, counterexample_sink)


def emit_report(report, fmt="csv"):
    """Serialize a report.

    :param obj report: A RunReport or FilterReport
    :param str fmt: "csv" (header plus one row per order) or "json"
    :return str: The text
    """
    if fmt == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(report.COLUMNS)
        writer.writerows(report.table())
        return buffer.getvalue()
    if fmt == "json":
        return json.dumps(report.to_dict(), indent=2, sort_keys=True) + "\n"
    raise ValueError(f"Unknown report format {fmt!r}")


def exit_code(report):
    """Return 2 if the report holds a counterexample, 3 if it holds aborted graphs, 0 otherwise."""
    if getattr(report, "counterexample_graphs", None):
        return 2
    if getattr(report, "aborted_graphs", None):
        return 3
    return 0
