"""Define the isomorph-free enumeration of biconnected Eulerian graphs of small order.

The even graphs on vertices 0..n-1 are exactly the cycle space of K_n.  A basis is given by the triangles {0, i, j}
closing the non-star edges (i, j) of the star centred at vertex 0, so a Gray-code walk over basis subsets visits every
even labelled graph once while XOR-ing one triangle per step.  Survivors of the connectivity checks are deduplicated
by canonical form.
"""

import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from ._helpers import PreconditionError
from .canonical import canonical_form, is_orderly_candidate
from .graph import Graph, _rows_biconnected, edge_index
from .graph6 import parse_graph6

LOGGER = logging.getLogger(__name__)

MIN_ORDER = 3
MAX_ORDER = 9
EXTENDED_ORDER = 9


@dataclass(frozen=True)
class CycleSpaceBasis:
    """The triangle basis of the cycle space of K_n, ordered by the non-star edge (i, j)."""

    n: int
    triangles: tuple
    basis: tuple

    @property
    def dimension(self):
        """Return C(n - 1, 2)."""
        return len(self.basis)

    def combination(self, bits):
        """Return the edge bit-set of the XOR of the basis elements selected by *bits*."""
        mask = 0
        for pos, element in enumerate(self.basis):
            if bits >> pos & 1:
                mask ^= element
        return mask


def _check_order(n):
    """Reject orders outside the supported range."""
    if not MIN_ORDER <= n <= MAX_ORDER:
        raise PreconditionError(f"Enumeration supports orders {MIN_ORDER}..{MAX_ORDER}, not {n}")


def cycle_space_basis(n):
    """Build the triangle basis of the cycle space of K_n.

    :param int n: The order (3..9)
    :return CycleSpaceBasis: One triangle {0, i, j} per pair 1 <= i < j < n
    """
    _check_order(n)
    triangles = tuple((0, i, j) for i in range(1, n) for j in range(i + 1, n))
    basis = tuple(1 << edge_index(0, i, n) | 1 << edge_index(0, j, n) | 1 << edge_index(i, j, n)
                  for _, i, j in triangles)
    return CycleSpaceBasis(n=n, triangles=triangles, basis=basis)


def _row_flips(triangles):
    """Return, per basis triangle, the (vertex, neighbour mask) pairs to XOR into the adjacency rows."""
    return tuple(((a, 1 << b | 1 << c), (b, 1 << a | 1 << c), (c, 1 << a | 1 << b)) for a, b, c in triangles)


def _walk(basis, shard_bits=0, shard=0):
    """Yield adjacency rows for every subset of the basis whose top *shard_bits* bits equal *shard*.

    The yielded list is reused between steps; copy it to keep it.
    """
    n = basis.n
    free = basis.dimension - shard_bits
    flips = _row_flips(basis.triangles)
    rows = [0] * n
    for pos in range(shard_bits):
        if shard >> pos & 1:
            for v, mask in flips[free + pos]:
                rows[v] ^= mask
    yield rows
    for step in range(1, 1 << free):
        for v, mask in flips[(step & -step).bit_length() - 1]:
            rows[v] ^= mask
        yield rows


def iter_even_graphs(n):
    """Yield every labelled even graph on n vertices, starting with the edgeless one.

    Consecutive graphs differ by exactly one basis triangle.
    """
    basis = cycle_space_basis(n)
    for rows in _walk(basis):
        yield Graph._trusted(n, rows)  # pylint: disable=protected-access


def enumerate_even_graphs(n, visitor):
    """Call *visitor* on every labelled even graph on n vertices and return the number of graphs visited.

    :param int n: The order (3..9)
    :param callable visitor: Called with each Graph
    :return int: 2 ** C(n - 1, 2)
    """
    count = 0
    for g in iter_even_graphs(n):
        visitor(g)
        count += 1
    return count


@dataclass(frozen=True)
class EnumerationReport:
    """Counts of one enumeration run."""

    n: int
    labeled_even_count: int
    connected_biconnected_count: int
    nonisomorphic_count: int
    elapsed: float

    def to_dict(self):
        """Return the report as a plain dictionary."""
        return {
            "n": self.n,
            "labeled_even_count": self.labeled_even_count,
            "connected_biconnected_count": self.connected_biconnected_count,
            "nonisomorphic_count": self.nonisomorphic_count,
            "elapsed": round(self.elapsed, 3),
        }

    def summary(self):
        """Return a one-line description."""
        return (f"n={self.n}: {self.labeled_even_count} labelled even graphs, "
                f"{self.connected_biconnected_count} biconnected, {self.nonisomorphic_count} non-isomorphic "
                f"({self.elapsed:.2f}s)")


def _walk_shard(task):
    """Walk one shard and return (labelled even count, labelled biconnected count, canonical forms in walk order)."""
    n, shard_bits, shard = task
    basis = cycle_space_basis(n)
    labelled = 0
    biconnected = 0
    seen = set()
    forms = []
    for rows in _walk(basis, shard_bits, shard):
        labelled += 1
        if not all(rows) or not _rows_biconnected(rows, n):
            continue
        biconnected += 1
        if not is_orderly_candidate(rows):
            continue
        form = canonical_form(Graph._trusted(n, rows))  # pylint: disable=protected-access
        if form not in seen:
            seen.add(form)
            forms.append(form)
    return labelled, biconnected, forms


def _merge_shards(results):
    """Sum the shard counts and union the canonical forms, keeping first-seen order."""
    labelled = biconnected = 0
    seen = set()
    forms = []
    for shard_labelled, shard_biconnected, shard_forms in results:
        labelled += shard_labelled
        biconnected += shard_biconnected
        for form in shard_forms:
            if form not in seen:
                seen.add(form)
                forms.append(form)
    return labelled, biconnected, forms


def enumerate_nonisomorphic(n, jobs=1):
    """Return one representative of every isomorphism class of biconnected Eulerian graphs of order n.

    Each representative is the canonical relabelling of its class.  With jobs > 1 the walk is split into shards by
    fixing the highest basis bits and the shards run in a process pool.

    :param int n: The order (3..9; 9 takes hours)
    :param int jobs: The number of worker processes
    :return tuple: (list of Graph, EnumerationReport)
    """
    _check_order(n)
    if n >= EXTENDED_ORDER:
        LOGGER.warning("Enumerating order %d walks %d labelled graphs and takes hours", n,
                       1 << cycle_space_basis(n).dimension)
    start = time.perf_counter()
    if jobs <= 1:
        results = [_walk_shard((n, 0, 0))]
    else:
        shard_bits = min(cycle_space_basis(n).dimension, (jobs - 1).bit_length())
        tasks = [(n, shard_bits, shard) for shard in range(1 << shard_bits)]
        LOGGER.info("Enumerating order %d in %d shards on %d workers", n, len(tasks), jobs)
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_walk_shard, tasks))

    labelled, biconnected, forms = _merge_shards(results)
    graphs = [parse_graph6(form.decode("ascii")) for form in forms]
    report = EnumerationReport(n=n, labeled_even_count=labelled, connected_biconnected_count=biconnected,
                               nonisomorphic_count=len(graphs), elapsed=time.perf_counter() - start)
    LOGGER.info(report.summary())
    return graphs, report
