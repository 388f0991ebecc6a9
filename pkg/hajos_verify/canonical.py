"""Define canonical labelling for isomorph rejection.

The canonical form of a graph is the graph6 text (as bytes) of its canonical relabelling: the labelling with the
lexicographically smallest column-major upper-triangle bit string among all labellings reachable in a search tree
of ordered vertex partitions.  The root partition orders vertices by degree (ascending) and is refined by counting
neighbours per cell until stable; each tree level individualizes one vertex of the first non-singleton cell and
refines again.  Subtrees are pruned when their fixed prefix already exceeds the best string, and when the vertex
to individualize is a twin of one already tried.
"""

import logging

from ._helpers import iter_bits
from .graph import Graph
from .graph6 import to_graph6

LOGGER = logging.getLogger(__name__)

PERFORMANCE_ORDER = 12


def _cell_masks(cells):
    """Return one vertex bit-set per cell."""
    masks = []
    for cell in cells:
        mask = 0
        for v in cell:
            mask |= 1 << v
        masks.append(mask)
    return masks


def refine_signatures(rows, cells):
    """Return each vertex's refinement signature for an ordered partition.

    The signature is the index of the vertex's cell followed by its number of neighbours in every cell.

    :param tuple rows: Adjacency bit-sets
    :param list cells: The ordered partition as a list of vertex lists
    :return dict: vertex -> signature tuple
    """
    masks = _cell_masks(cells)
    signatures = {}
    for index, cell in enumerate(cells):
        for v in cell:
            signatures[v] = (index,) + tuple((rows[v] & mask).bit_count() for mask in masks)
    return signatures


def refine(rows, cells):
    """Split cells by neighbour counts until the ordered partition is equitable.

    :param tuple rows: Adjacency bit-sets
    :param list cells: The ordered partition to refine
    :return list: The refined ordered partition
    """
    while True:
        signatures = refine_signatures(rows, cells)
        ordered = sorted(signatures, key=lambda v: (signatures[v], v))
        refined = []
        for v in ordered:
            if refined and signatures[refined[-1][0]] == signatures[v]:
                refined[-1].append(v)
            else:
                refined.append([v])
        if len(refined) == len(cells):
            return refined
        cells = refined


def degree_partition(rows):
    """Return the ordered partition of the vertices by ascending degree."""
    by_degree = {}
    for v, row in enumerate(rows):
        by_degree.setdefault(row.bit_count(), []).append(v)
    return [by_degree[d] for d in sorted(by_degree)]


def _prefix_bits(rows, order):
    """Return the upper-triangle bits of the columns fully determined by the vertex order prefix."""
    return [rows[order[i]] >> order[j] & 1 for j in range(1, len(order)) for i in range(j)]


def _leading_singletons(cells):
    """Return the vertices of the leading run of singleton cells."""
    order = []
    for cell in cells:
        if len(cell) != 1:
            break
        order.append(cell[0])
    return order


def _are_twins(rows, x, y):
    """Return True if swapping x and y is an automorphism (equal neighbourhoods apart from each other)."""
    return rows[x] & ~(1 << y) == rows[y] & ~(1 << x)


def canonical_labelling(g):
    """Return the canonical vertex order of g (position -> original vertex)."""
    if g.n > PERFORMANCE_ORDER:
        LOGGER.warning("Canonical labelling of order %d exceeds the supported order %d", g.n, PERFORMANCE_ORDER)
    rows = g.adj
    best = {"bits": None, "order": None}

    def search(cells):
        order = _leading_singletons(cells)
        prefix = _prefix_bits(rows, order)
        if best["bits"] is not None and prefix > best["bits"][:len(prefix)]:
            return
        if len(order) == len(cells):
            if best["bits"] is None or prefix < best["bits"]:
                best["bits"] = prefix
                best["order"] = order
            return

        target = len(order)
        tried = []
        for v in cells[target]:
            if any(_are_twins(rows, v, u) for u in tried):
                continue
            tried.append(v)
            rest = [u for u in cells[target] if u != v]
            split = cells[:target] + [[v], rest] + cells[target + 1:]
            search(refine(rows, split))

    search(refine(rows, degree_partition(rows)))
    return best["order"]


def canonical_graph(g):
    """Return the canonical relabelling of g; isomorphic graphs give equal results."""
    order = canonical_labelling(g)
    position = {v: p for p, v in enumerate(order)}
    rows = [0] * g.n
    for p, v in enumerate(order):
        for w in iter_bits(g.adj[v]):
            rows[p] |= 1 << position[w]
    return Graph(g.n, rows)


def canonical_form(g):
    """Return a byte string that is equal for two graphs exactly when they are isomorphic.

    :param Graph g: A graph, nominally of order <= 12
    :return bytes: graph6 bytes of the canonical relabelling
    """
    return to_graph6(canonical_graph(g)).encode("ascii")


def is_orderly_candidate(rows):
    """Return True if the labelling lists vertices in non-decreasing first-refinement signature order.

    Every canonical relabelling passes this test, so a labelled enumeration only has to canonicalize the graphs that
    do.

    :param tuple rows: Adjacency bit-sets
    :return bool: True if the labelling could be canonical
    """
    degrees = [row.bit_count() for row in rows]
    if any(degrees[v] > degrees[v + 1] for v in range(len(degrees) - 1)):
        return False
    signatures = refine_signatures(rows, degree_partition(rows))
    return all(signatures[v] <= signatures[v + 1] for v in range(len(rows) - 1))
