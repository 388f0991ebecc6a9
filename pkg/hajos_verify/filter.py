"""Define the structural criteria every minimum counterexample to Hajós' conjecture satisfies.

A minimum counterexample (minimum size among the counterexamples of minimum order) is biconnected and meets the
seven criteria below.  A graph failing any of them cannot be a minimum counterexample, so it needs no decomposition
search at its order.
"""

import logging
from dataclasses import dataclass
from itertools import combinations

from ._helpers import iter_bits
from .graph import _reach, is_biconnected

LOGGER = logging.getLogger(__name__)

CRITERIA_LABELS = ("i", "ii", "iii", "iv", "v", "vi", "vii")


def _vertices_of_degree(g, degree):
    """Return the vertices whose degree equals *degree*."""
    return [v for v, row in enumerate(g.adj) if row.bit_count() == degree]


def _is_independent(g, mask):
    """Return True if no edge joins two vertices of *mask*."""
    return all(not g.adj[v] & mask for v in iter_bits(mask))


def _adjacent_degree6_pairs(g, common_size):
    """Yield (u, v, common) for adjacent degree-6 vertices u < v sharing exactly *common_size* neighbours."""
    sixes = _vertices_of_degree(g, 6)
    for u, v in combinations(sixes, 2):
        if not g.has_edge(u, v):
            continue
        common = g.adj[u] & g.adj[v]
        if common.bit_count() == common_size:
            yield u, v, common


def criterion_i(g):
    """Return True if at most one vertex has degree 2 or 4."""
    return sum(1 for row in g.adj if row.bit_count() in (2, 4)) <= 1


def criterion_ii(g):
    """Return True if the two neighbours of every degree-2 vertex are adjacent."""
    for v in _vertices_of_degree(g, 2):
        a, b = g.neighbors(v)
        if not g.has_edge(a, b):
            return False
    return True


def criterion_iii(g):
    """Return True if the neighbourhood of every degree-4 vertex induces a regular graph."""
    for v in _vertices_of_degree(g, 4):
        hood = g.adj[v]
        inner = {(g.adj[w] & hood).bit_count() for w in iter_bits(hood)}
        if len(inner) > 1:
            return False
    return True


def criterion_iv(g):
    """Return True if, around every degree-6 vertex, a 4-clique of neighbours forces the other two to be adjacent."""
    for v in _vertices_of_degree(g, 6):
        hood = g.neighbors(v)
        for quad in combinations(hood, 4):
            if not all(g.has_edge(a, b) for a, b in combinations(quad, 2)):
                continue
            x5, x6 = (w for w in hood if w not in quad)
            if not g.has_edge(x5, x6):
                return False
    return True


def criterion_v(g):
    """Return True if adjacent degree-6 vertices with five common neighbours have an independent common set."""
    return all(_is_independent(g, common) for _, _, common in _adjacent_degree6_pairs(g, 5))


def criterion_vi(g):
    """Return True if, for adjacent degree-6 vertices u, v with five common neighbours, no vertex of G - {u, v}
    has three or more neighbours among them."""
    for u, v, common in _adjacent_degree6_pairs(g, 5):
        for w in range(g.n):
            if w in (u, v):
                continue
            if (g.adj[w] & common).bit_count() >= 3:
                return False
    return True


def criterion_vii(g):
    """Return True if adjacent degree-6 u, v with four common neighbours and private neighbours x_u, x_v joined by a
    path avoiding u, v and the common set always have an independent common set."""
    full = (1 << g.n) - 1
    for u, v, common in _adjacent_degree6_pairs(g, 4):
        private_u = g.adj[u] & ~g.adj[v] & ~(1 << v)
        private_v = g.adj[v] & ~g.adj[u] & ~(1 << u)
        x_u = private_u.bit_length() - 1
        x_v = private_v.bit_length() - 1
        allowed = full & ~(1 << u) & ~(1 << v) & ~common
        if _reach(g.adj, x_u, allowed) >> x_v & 1 and not _is_independent(g, common):
            return False
    return True


CRITERIA = (criterion_i, criterion_ii, criterion_iii, criterion_iv, criterion_v, criterion_vi, criterion_vii)


@dataclass(frozen=True)
class FilterVerdict:
    """Result of checking a graph against the minimum-counterexample criteria.

    *first_violated* (1..7) is the attribution used in reports and is only set for biconnected graphs; a graph that
    is not biconnected is reported through *biconnected* instead.
    """

    passed: bool
    first_violated: int
    per_criterion: tuple
    biconnected: bool = True

    @property
    def label(self):
        """Return the roman label of the attributed criterion, "not_biconnected", or "passed"."""
        if not self.biconnected:
            return "not_biconnected"
        if self.first_violated is None:
            return "passed"
        return CRITERIA_LABELS[self.first_violated - 1]


def apply_filter(g):
    """Check biconnectivity and then criteria (i) to (vii) in order.

    :param Graph g: An even, connected graph
    :return FilterVerdict: The verdict, attributed to the first failing check
    """
    per_criterion = tuple(criterion(g) for criterion in CRITERIA)
    if not is_biconnected(g):
        verdict = FilterVerdict(passed=False, first_violated=None, per_criterion=per_criterion, biconnected=False)
    else:
        first = next((index for index, ok in enumerate(per_criterion, start=1) if not ok), None)
        verdict = FilterVerdict(passed=first is None, first_violated=first, per_criterion=per_criterion)
    LOGGER.debug("Filter verdict for %r: %s", g, verdict.label)
    return verdict
