"""Define the exact decision procedure: does a graph decompose into at most k edge-disjoint cycles?

Backtracking search.  Every decomposition contains exactly one cycle through the lowest-indexed remaining edge, so
branching over the cycles through that edge is complete and never revisits the same set of cycles in another order.
"""

import enum
import logging
from dataclasses import dataclass

from ._helpers import SearchAbortedError, iter_bits
from .graph import Cycle, Decomposition, _remove_edges, edge_pair

LOGGER = logging.getLogger(__name__)


class ExactStatus(enum.Enum):
    """Outcome of a search."""

    FEASIBLE = "feasible"
    INFEASIBLE = "infeasible"
    ABORTED = "aborted"


@dataclass(frozen=True)
class SearchBudget:
    """Limits of one search: at most k cycles, an optional node cap and an optional cancellation token."""

    k: int
    node_limit: int = None
    cancel: object = None
    prune: bool = True

    def __post_init__(self):
        """Check the cycle budget."""
        if self.k < 0:
            raise ValueError(f"Cycle budget must be non-negative, not {self.k}")


@dataclass(frozen=True)
class ExactResult:
    """Status of a search, the decomposition when feasible, and the number of search nodes visited."""

    status: ExactStatus
    decomposition: Decomposition = None
    nodes_explored: int = 0


def lower_bound(g):
    """Return the largest half-degree; every cycle uses at most two edges at any vertex."""
    return max((row.bit_count() for row in g.adj), default=0) // 2


def cycles_through_edge(g, e):
    """Enumerate every simple cycle of g that contains edge e, each exactly once.

    Paths are grown depth first from the larger endpoint, neighbours in ascending order, until they return to the
    smaller endpoint.

    :param Graph g: The graph
    :param tuple e: The edge (a, b)
    :return iter: Cycles starting [a, b, ...] with a < b
    """
    a, b = sorted(e)
    if not g.has_edge(a, b):
        raise ValueError(f"({a}, {b}) is not an edge of {g!r}")
    rows = g.adj
    path = [a, b]
    on_path = 1 << a | 1 << b
    stack = [iter_bits(rows[b] & ~(1 << a))]
    while stack:
        step = next(stack[-1], None)
        if step is None:
            stack.pop()
            on_path &= ~(1 << path.pop())
            continue
        if on_path >> step & 1:
            continue
        if rows[step] >> a & 1:
            yield Cycle(path + [step])
        path.append(step)
        on_path |= 1 << step
        stack.append(iter_bits(rows[step] & ~on_path))


class _Abort(Exception):
    """Unwind the search when the budget runs out."""


class _Search:  # pylint: disable=too-few-public-methods
    """Hold the counters of one backtracking search."""

    def __init__(self, budget):
        """Initialize the class.

        :param SearchBudget budget: The limits of the search
        """
        self.budget = budget
        self.nodes = 0
        self.chosen = []

    def run(self, g, k):
        """Return True if g splits into at most k cycles, collecting them in self.chosen."""
        self.nodes += 1
        cancel = self.budget.cancel
        if cancel is not None and cancel.is_set():
            raise _Abort("cancelled")
        if self.budget.node_limit is not None and self.nodes > self.budget.node_limit:
            raise _Abort("node limit")

        if g.m == 0:
            return True
        if k == 0:
            return False
        if self.budget.prune:
            if lower_bound(g) > k:
                return False
            if g.m > k * sum(1 for row in g.adj if row):
                return False

        edges = g.edge_set()
        first = (edges & -edges).bit_length() - 1
        for cycle in cycles_through_edge(g, edge_pair(first, g.n)):
            self.chosen.append(cycle)
            if self.run(_remove_edges(g, cycle.edge_set(g.n)), k - 1):
                return True
            self.chosen.pop()
        return False


def decide(g, budget):
    """Decide whether g decomposes into at most budget.k cycles.

    :param Graph g: An even graph
    :param SearchBudget budget: Cycle budget, node limit and cancellation token
    :return ExactResult: FEASIBLE with a decomposition, INFEASIBLE after exhausting the tree, or ABORTED
    """
    search = _Search(budget)
    try:
        found = search.run(g, budget.k)
    except _Abort as exc:
        LOGGER.debug("Search on %r aborted (%s) after %d nodes", g, exc, search.nodes)
        return ExactResult(status=ExactStatus.ABORTED, nodes_explored=search.nodes)

    if found:
        LOGGER.debug("Search on %r found %d cycles in %d nodes", g, len(search.chosen), search.nodes)
        return ExactResult(status=ExactStatus.FEASIBLE, decomposition=Decomposition(tuple(search.chosen), g.n),
                           nodes_explored=search.nodes)
    LOGGER.debug("Search on %r proved k=%d infeasible in %d nodes", g, budget.k, search.nodes)
    return ExactResult(status=ExactStatus.INFEASIBLE, nodes_explored=search.nodes)


def min_cycles(g, cancel=None, node_limit=None):
    """Return the fewest cycles g decomposes into, raising the budget one step at a time from lower_bound(g).

    :param Graph g: An even, connected graph
    :param obj cancel: Optional cancellation token
    :param int node_limit: Optional node cap per decision
    :raises SearchAbortedError: if a decision is aborted
    """
    k = lower_bound(g)
    while True:
        result = decide(g, SearchBudget(k=k, node_limit=node_limit, cancel=cancel))
        if result.status is ExactStatus.FEASIBLE:
            return k
        if result.status is ExactStatus.ABORTED:
            raise SearchAbortedError(f"Search on {g!r} aborted at k={k}")
        k += 1

