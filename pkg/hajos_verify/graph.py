"""Define the hajos_verify.graph module: bit-set graphs, cycles, decompositions and structural queries.

Vertices are the integers 0..n-1.  Adjacency rows are Python ints used as bit-sets, so every row of a graph of order
n <= 32 fits one machine word.  Edge sets are bit-sets over the edges of K_n in lexicographic pair order, which all
modules share: (0,1), (0,2), ..., (0,n-1), (1,2), ...
"""

import logging
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

from ._helpers import GraphError, PreconditionError, iter_bits

LOGGER = logging.getLogger(__name__)

MAX_ORDER = 32


def hajos_bound(n):
    """Return the largest number of cycles a decomposition of an order-n Eulerian graph may use.

    :param int n: The order of the graph (n >= 1)
    :return int: floor((n - 1) / 2)
    """
    if n < 1:
        raise ValueError(f"Graph order must be at least 1, not {n}")
    return (n - 1) // 2


def edge_index(i, j, n):
    """Return the index of edge {i, j} in the lexicographic edge order of K_n."""
    if i > j:
        i, j = j, i
    return i * n - i * (i + 1) // 2 + (j - i - 1)


@lru_cache(maxsize=None)
def edge_pairs(n):
    """Return the tuple of all vertex pairs of K_n, positioned by edge index."""
    return tuple((i, j) for i in range(n) for j in range(i + 1, n))


def edge_pair(idx, n):
    """Return the vertex pair (i, j), i < j, of the edge with index *idx* in K_n."""
    return edge_pairs(n)[idx]


class Graph:
    """An immutable simple undirected graph on vertices 0..n-1 stored as adjacency bit-sets."""

    __slots__ = ("__n", "__rows", "__m")

    def __init__(self, n, rows):
        """Initialize the class.

        :param int n: The number of vertices (1..32)
        :param iterable rows: One neighbour bit-set per vertex
        """
        rows = tuple(int(row) for row in rows)
        if not 1 <= n <= MAX_ORDER:
            raise GraphError(f"Graph order must be between 1 and {MAX_ORDER}, not {n}")
        if len(rows) != n:
            raise GraphError(f"Expected {n} adjacency rows, got {len(rows)}")

        full = (1 << n) - 1
        for v, row in enumerate(rows):
            if row & ~full:
                raise GraphError(f"Row of vertex {v} references a vertex outside 0..{n - 1}")
            if row >> v & 1:
                raise GraphError(f"Self-loop at vertex {v}")
            for w in iter_bits(row):
                if not rows[w] >> v & 1:
                    raise GraphError(f"Adjacency is not symmetric between {v} and {w}")

        self.__n = n
        self.__rows = rows
        self.__m = sum(row.bit_count() for row in rows) // 2

    @classmethod
    def _trusted(cls, n, rows):
        """Build a graph from rows already known to be valid, skipping the checks."""
        graph = cls.__new__(cls)
        graph._Graph__n = n
        graph._Graph__rows = tuple(rows)
        graph._Graph__m = sum(row.bit_count() for row in graph._Graph__rows) // 2
        return graph

    @classmethod
    def from_edge_set(cls, n, mask):
        """Build a graph on n vertices from an edge bit-set over K_n."""
        pairs = edge_pairs(n)
        rows = [0] * n
        for idx in iter_bits(mask):
            if idx >= len(pairs):
                raise GraphError(f"Edge index {idx} is out of range for order {n}")
            i, j = pairs[idx]
            rows[i] |= 1 << j
            rows[j] |= 1 << i
        return cls._trusted(n, rows)

    @property
    def n(self):
        """Return the number of vertices."""
        return self.__n

    @property
    def m(self):
        """Return the number of edges."""
        return self.__m

    @property
    def adj(self):
        """Return the tuple of neighbour bit-sets."""
        return self.__rows

    def degree(self, v):
        """Return the degree of vertex v."""
        return self.__rows[v].bit_count()

    def degrees(self):
        """Return the list of all vertex degrees."""
        return [row.bit_count() for row in self.__rows]

    def neighbors(self, v):
        """Return the neighbours of v in ascending order."""
        return list(iter_bits(self.__rows[v]))

    def has_edge(self, u, v):
        """Return True if {u, v} is an edge."""
        return bool(self.__rows[u] >> v & 1)

    def edges(self):
        """Return all edges as (i, j) pairs with i < j in lexicographic order."""
        return [(i, j) for i in range(self.__n) for j in iter_bits(self.__rows[i] >> (i + 1) << (i + 1))]

    def edge_set(self):
        """Return the edge bit-set of the graph over K_n."""
        mask = 0
        n = self.__n
        for i, j in self.edges():
            mask |= 1 << edge_index(i, j, n)
        return mask

    def subgraph(self, mask):
        """Return the spanning subgraph (same vertex set) formed by the edges in *mask*."""
        if mask & ~self.edge_set():
            raise GraphError("Edge set is not contained in the graph")
        return Graph.from_edge_set(self.__n, mask)

    def to_graph6(self):
        """Return the graph6 encoding of this labelled graph."""
        from .graph6 import to_graph6  # pylint: disable=import-outside-toplevel

        return to_graph6(self)

    def __eq__(self, other):
        """Compare labelled graphs."""
        if not isinstance(other, Graph):
            return NotImplemented
        return self.__n == other.n and self.__rows == other.adj

    def __hash__(self):
        """Hash on the labelled adjacency."""
        return hash((self.__n, self.__rows))

    def __repr__(self):
        """Return a short description of the graph."""
        return f"Graph(n={self.__n}, m={self.__m})"


def from_edges(n, edges):
    """Build a graph with exactly the given edges; duplicates are merged.

    :param int n: The number of vertices (1..32)
    :param list edges: A list of (u, v) vertex pairs
    :return Graph: The graph
    """
    if not 1 <= n <= MAX_ORDER:
        raise GraphError(f"Graph order must be between 1 and {MAX_ORDER}, not {n}")
    rows = [0] * n
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"Edge ({u}, {v}) references a vertex outside 0..{n - 1}")
        if u == v:
            raise GraphError(f"Self-loop at vertex {u}")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph._trusted(n, rows)  # pylint: disable=protected-access


@dataclass(frozen=True)
class Cycle:
    """A closed walk given by its vertex sequence; the edge from the last vertex back to the first is implied."""

    vertices: tuple

    def __post_init__(self):
        """Freeze the vertex sequence."""
        object.__setattr__(self, "vertices", tuple(self.vertices))

    def __len__(self):
        """Return the number of vertices (equal to the number of edges)."""
        return len(self.vertices)

    def __iter__(self):
        """Iterate over the vertices."""
        return iter(self.vertices)

    def edges(self):
        """Return the cycle's edges as (i, j) pairs with i < j, in traversal order."""
        verts = self.vertices
        pairs = []
        for pos, u in enumerate(verts):
            v = verts[(pos + 1) % len(verts)]
            pairs.append((u, v) if u < v else (v, u))
        return pairs

    def edge_set(self, n):
        """Return the cycle's edge bit-set over K_n."""
        mask = 0
        for i, j in self.edges():
            mask |= 1 << edge_index(i, j, n)
        return mask


@dataclass(frozen=True)
class Decomposition:
    """An ordered list of cycles meant to partition the edge set of a host graph of order host_order."""

    cycles: tuple
    host_order: int

    def __post_init__(self):
        """Freeze the cycle list."""
        object.__setattr__(self, "cycles", tuple(c if isinstance(c, Cycle) else Cycle(c) for c in self.cycles))

    def __len__(self):
        """Return the number of cycles."""
        return len(self.cycles)

    def edge_partition(self):
        """Return the set of per-cycle edge bit-sets, which ignores cycle order and orientation."""
        return frozenset(c.edge_set(self.host_order) for c in self.cycles)


class Violation(NamedTuple):
    """Describe why a decomposition does not partition a graph's edge set."""

    kind: str
    cycle_index: int = None
    edge: tuple = None


def is_even(g):
    """Return True if every vertex has even degree (isolated vertices allowed)."""
    return all(row.bit_count() % 2 == 0 for row in g.adj)


def _reach(rows, start, allowed):
    """Return the bit-set of vertices in *allowed* reachable from *start* without leaving *allowed*."""
    reached = 1 << start
    frontier = reached
    while frontier:
        nxt = 0
        for v in iter_bits(frontier):
            nxt |= rows[v]
        frontier = nxt & allowed & ~reached
        reached |= frontier
    return reached


def _rows_connected(rows, n):
    """Return True if all n vertices of the adjacency rows lie in one component."""
    full = (1 << n) - 1
    return _reach(rows, 0, full) == full


def _rows_biconnected(rows, n):
    """Return True if the rows describe a connected graph on n >= 3 vertices without a cut vertex."""
    if n < 3:
        return False
    full = (1 << n) - 1
    if _reach(rows, 0, full) != full:
        return False
    for v in range(n):
        rest = full & ~(1 << v)
        start = 1 if v == 0 else 0
        if _reach(rows, start, rest) != rest:
            return False
    return True


def support(g):
    """Return the bit-set of vertices with at least one incident edge."""
    mask = 0
    for v, row in enumerate(g.adj):
        if row:
            mask |= 1 << v
    return mask


def is_connected(g):
    """Return True if the edge-bearing vertices form one component.

    Isolated vertices are ignored when the graph has edges; an edgeless graph is connected only when it has a single
    vertex.
    """
    if g.m == 0:
        return g.n == 1
    verts = support(g)
    start = (verts & -verts).bit_length() - 1
    return _reach(g.adj, start, verts) == verts


def is_fully_connected(g):
    """Return True if all n vertices lie in one component."""
    return _rows_connected(g.adj, g.n)


def is_eulerian(g):
    """Return True if g is even, has an edge and is connected on all of its vertices."""
    return g.m > 0 and is_even(g) and is_fully_connected(g)


def is_biconnected(g):
    """Return True if g is connected, has at least three vertices and no cut vertex."""
    return _rows_biconnected(g.adj, g.n)


def biconnected_components(g):
    """Partition the edges of g into the edge sets of its biconnected components.

    Iterative Hopcroft-Tarjan DFS with an edge stack; a bridge forms a single-edge component.

    :param Graph g: The graph
    :return list: One edge bit-set per component, in order of completion
    """
    n = g.n
    rows = g.adj
    disc = [-1] * n
    low = [0] * n
    clock = 0
    components = []
    edge_stack = []

    for root in range(n):
        if disc[root] != -1 or not rows[root]:
            continue
        disc[root] = low[root] = clock
        clock += 1
        stack = [(root, -1, iter_bits(rows[root]))]
        while stack:
            v, parent, neighbours = stack[-1]
            advanced = False
            for w in neighbours:
                if disc[w] == -1:
                    edge_stack.append((v, w))
                    disc[w] = low[w] = clock
                    clock += 1
                    stack.append((w, v, iter_bits(rows[w])))
                    advanced = True
                    break
                if w != parent and disc[w] < disc[v]:
                    # back edge to an ancestor
                    edge_stack.append((v, w))
                    low[v] = min(low[v], disc[w])
            if advanced:
                continue

            stack.pop()
            if not stack:
                continue
            u = stack[-1][0]
            low[u] = min(low[u], low[v])
            if low[v] >= disc[u]:
                mask = 0
                while True:
                    a, b = edge_stack.pop()
                    mask |= 1 << edge_index(a, b, n)
                    if (a, b) == (u, v):
                        break
                components.append(mask)

    LOGGER.debug("Found %d biconnected components in %r", len(components), g)
    return components


def cut_vertices(g):
    """Return the articulation points of g in ascending order."""
    count = [0] * g.n
    for mask in biconnected_components(g):
        seen = 0
        for i, j in (edge_pair(idx, g.n) for idx in iter_bits(mask)):
            seen |= 1 << i | 1 << j
        for v in iter_bits(seen):
            count[v] += 1
    return [v for v in range(g.n) if count[v] > 1]


def bfs_distances(g, v):
    """Return the shortest-path edge counts from v; unreachable vertices get None.

    :param Graph g: The graph
    :param int v: The source vertex
    :return list: Per-vertex distances
    """
    if not 0 <= v < g.n:
        raise PreconditionError(f"Vertex {v} is outside 0..{g.n - 1}")
    dist = [None] * g.n
    dist[v] = 0
    reached = 1 << v
    frontier = reached
    depth = 0
    while frontier:
        depth += 1
        nxt = 0
        for w in iter_bits(frontier):
            nxt |= g.adj[w]
        frontier = nxt & ~reached
        reached |= frontier
        for w in iter_bits(frontier):
            dist[w] = depth
    return dist


def two_vertex_disjoint_paths(g, u, v):
    """Find two internally vertex-disjoint u-v paths with one maximum flow computation.

    Every vertex other than u and v is split into an in-node and an out-node joined by an arc of capacity 1; each
    edge {a, b} becomes the arcs a_out -> b_in and b_out -> a_in of capacity 1.  Two augmenting paths (shortest
    first, neighbours in ascending order) are pushed from u_out to v_in.

    :param Graph g: The graph
    :param int u: One endpoint
    :param int v: The other endpoint
    :return tuple: Two vertex paths from u to v, or None when the flow value is below 2
    """
    if u == v:
        raise PreconditionError("Endpoints of the disjoint paths must differ")

    def node_in(x):
        return 2 * x

    def node_out(x):
        return 2 * x + 1

    capacity = {}

    def add_arc(a, b, cap):
        capacity.setdefault(a, {})
        capacity.setdefault(b, {})
        capacity[a][b] = capacity[a].get(b, 0) + cap
        capacity[b].setdefault(a, 0)

    for x in range(g.n):
        add_arc(node_in(x), node_out(x), 2 if x in (u, v) else 1)
    for a, b in g.edges():
        add_arc(node_out(a), node_in(b), 1)
        add_arc(node_out(b), node_in(a), 1)

    original = {a: dict(arcs) for a, arcs in capacity.items()}
    source, sink = node_out(u), node_in(v)
    flow_value = 0
    while flow_value < 2:
        parent = {source: None}
        queue = deque([source])
        while queue and sink not in parent:
            a = queue.popleft()
            for b in sorted(capacity[a]):
                if b not in parent and capacity[a][b] > 0:
                    parent[b] = a
                    queue.append(b)
        if sink not in parent:
            break
        b = sink
        while parent[b] is not None:
            a = parent[b]
            capacity[a][b] -= 1
            capacity[b][a] += 1
            b = a
        flow_value += 1

    if flow_value < 2:
        return None

    # flow on a forward arc = original capacity - residual capacity
    flow = {}
    for a, arcs in original.items():
        for b, cap in arcs.items():
            used = cap - capacity[a][b]
            if used > 0:
                flow[(a, b)] = used
    for a, b in g.edges():
        forward, backward = (node_out(a), node_in(b)), (node_out(b), node_in(a))
        if flow.get(forward) and flow.get(backward):
            del flow[forward]
            del flow[backward]

    paths = []
    for _ in range(2):
        path = [u]
        x = u
        while x != v:
            step = next(y for y in range(g.n) if flow.get((node_out(x), node_in(y))))
            flow[(node_out(x), node_in(step))] -= 1
            path.append(step)
            x = step
        paths.append(path)
    return paths[0], paths[1]


def paths_to_cycle(first, second):
    """Join two internally disjoint u-v paths into the cycle they bound."""
    return Cycle(list(first) + list(reversed(second[1:-1])))


def validate_cycle(g, c):
    """Return True if c is a simple cycle of g.

    :param Graph g: The host graph
    :param Cycle c: A Cycle or any vertex sequence
    :return bool: True when the sequence has length >= 3, distinct vertices and only edges of g
    """
    verts = tuple(c.vertices if isinstance(c, Cycle) else c)
    if len(verts) < 3 or len(set(verts)) != len(verts):
        return False
    if any(not 0 <= x < g.n for x in verts):
        return False
    return all(g.has_edge(verts[pos], verts[(pos + 1) % len(verts)]) for pos in range(len(verts)))


def validate_decomposition(g, d):
    """Check that the cycles of d partition the edge set of g.

    :param Graph g: The host graph
    :param Decomposition d: The candidate decomposition
    :return Violation: None when d is valid, otherwise the first problem found
    """
    covered = 0
    for index, cycle in enumerate(d.cycles):
        if not validate_cycle(g, cycle):
            return Violation("invalid_cycle", cycle_index=index)
        mask = cycle.edge_set(g.n)
        overlap = covered & mask
        if overlap:
            idx = (overlap & -overlap).bit_length() - 1
            return Violation("duplicated_edge", cycle_index=index, edge=edge_pair(idx, g.n))
        covered |= mask
    missing = g.edge_set() & ~covered
    if missing:
        idx = (missing & -missing).bit_length() - 1
        return Violation("uncovered_edge", edge=edge_pair(idx, g.n))
    return None


def _remove_edges(g, mask):
    """Return g without the edges in *mask* (no validation)."""
    rows = list(g.adj)
    for idx in iter_bits(mask):
        i, j = edge_pair(idx, g.n)
        rows[i] &= ~(1 << j)
        rows[j] &= ~(1 << i)
    return Graph._trusted(g.n, rows)  # pylint: disable=protected-access


def remove_cycle(g, c):
    """Return a new graph with the edges of cycle c deleted; the vertex count is unchanged.

    :raises PreconditionError: if c is not a valid cycle of g
    """
    if not validate_cycle(g, c):
        raise PreconditionError(f"{c!r} is not a cycle of {g!r}")
    cycle = c if isinstance(c, Cycle) else Cycle(c)
    return _remove_edges(g, cycle.edge_set(g.n))
