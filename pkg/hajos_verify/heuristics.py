"""Define the randomized cycle-finding heuristics and the recursive decomposition wrapper.

Each heuristic returns one cycle of a graph.  `decompose` applies a heuristic to every biconnected component of
what is left of the graph, removes the cycles it found and repeats until no edge remains.
"""

import enum
import logging
from dataclasses import dataclass

import numpy as np

from ._helpers import HeuristicError, PreconditionError, iter_bits
from .graph import (
    Cycle,
    Decomposition,
    Graph,
    _remove_edges,
    bfs_distances,
    biconnected_components,
    hajos_bound,
    paths_to_cycle,
    two_vertex_disjoint_paths,
)

LOGGER = logging.getLogger(__name__)

DEFAULT_MAX_ATTEMPTS = 10000


class Strategy(enum.Enum):
    """The cycle-finding heuristics."""

    RC = "rc"
    RLC = "rlc"
    LD = "ld"
    HDF = "hdf"


STRATEGY_ORDER = (Strategy.RC, Strategy.RLC, Strategy.LD, Strategy.HDF)


class RngStream:
    """A reproducible random stream: numpy's PCG64 bit generator seeded through a SeedSequence.

    Equal seeds give equal decision sequences on every platform.
    """

    def __init__(self, seed=0):
        """Initialize the class.

        :param int seed: A non-negative integer, or a sequence of them used as SeedSequence entropy
        """
        self.__seed = seed
        self.__generator = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))

    @classmethod
    def derive(cls, seed, *keys):
        """Return an independent stream keyed by a master seed and further integers or byte strings.

        :param int seed: The master seed
        :param keys: Additional keys; bytes are read as big-endian integers
        :return RngStream: The derived stream
        """
        entropy = [int(seed)]
        for key in keys:
            if isinstance(key, (bytes, bytearray)):
                key = int.from_bytes(key, "big")
            entropy.append(int(key))
        return cls(entropy)

    @property
    def seed(self):
        """Return the seed the stream was created from."""
        return self.__seed

    def randrange(self, stop):
        """Return a uniform integer in 0..stop-1."""
        return int(self.__generator.integers(stop))

    def choice(self, items):
        """Return a uniformly chosen element of a non-empty sequence."""
        return items[self.randrange(len(items))]


@dataclass(frozen=True)
class HeuristicOutcome:
    """Result of decomposing a graph with one strategy."""

    strategy: Strategy
    decomposition: Decomposition
    cycles_used: int
    within_bound: bool


def _non_isolated(g):
    """Return the vertices with at least one edge."""
    return [v for v, row in enumerate(g.adj) if row]


def _pick_start(g, rng, start):
    """Return the walk's first vertex, drawing one uniformly when none is given."""
    if g.m == 0:
        raise PreconditionError(f"{g!r} has no edges to walk along")
    if start is None:
        return rng.choice(_non_isolated(g))
    if not g.adj[start]:
        raise PreconditionError(f"Start vertex {start} is isolated")
    return start


def _next_candidates(g, path):
    """Return the neighbours of the path head other than the vertex the walk just came from."""
    head = path[-1]
    previous = path[-2] if len(path) > 1 else None
    candidates = [w for w in iter_bits(g.adj[head]) if w != previous]
    if not candidates:
        raise HeuristicError(f"Walk stranded at vertex {head}; the graph is not even")
    return candidates


def random_cycle(g, rng, start=None):
    """Walk randomly along a vertex path until the chosen neighbour is already on it; return the closed loop.

    :param Graph g: A graph with at least one edge (even graphs always close a cycle)
    :param RngStream rng: The random stream
    :param int start: Optional first vertex
    :return Cycle: The loop from the revisited vertex to the head
    """
    path = [_pick_start(g, rng, start)]
    position = {path[0]: 0}
    while True:
        w = rng.choice(_next_candidates(g, path))
        if w in position:
            return Cycle(path[position[w]:])
        position[w] = len(path)
        path.append(w)


def long_walk(g, rng, start=None):
    """Run the random-long-cycle walk and return the longest cycle together with every recorded cycle length.

    At each step every neighbour of the head that is already on the path closes a cycle whose length is recorded;
    the walk then moves to a uniformly chosen neighbour off the path.  When there is none, the longest recorded
    cycle (the first one seen among equals) is returned.

    :return tuple: (Cycle, list of recorded lengths)
    """
    path = [_pick_start(g, rng, start)]
    position = {path[0]: 0}
    recorded = []
    best = None
    while True:
        candidates = _next_candidates(g, path)
        fresh = []
        for w in candidates:
            if w in position:
                length = len(path) - position[w]
                recorded.append(length)
                if best is None or length > best[1] - best[0]:
                    best = (position[w], len(path))
            else:
                fresh.append(w)
        if not fresh:
            return Cycle(path[best[0]:best[1]]), recorded
        w = rng.choice(fresh)
        position[w] = len(path)
        path.append(w)


def random_long_cycle(g, rng, start=None):
    """Return the longest cycle closed during a random walk that keeps extending while it can."""
    cycle, _ = long_walk(g, rng, start)
    return cycle


def longest_distance_cycle(g, rng, pair=None):
    """Return a cycle through two vertices at maximum distance, built from two vertex-disjoint paths.

    :param Graph g: A graph whose edges form one biconnected component
    :param RngStream rng: The random stream
    :param tuple pair: Optional explicit (u, v) pair
    :return Cycle: The union of the two paths
    :raises HeuristicError: if the pair is not joined by two disjoint paths
    """
    if pair is None:
        verts = _non_isolated(g)
        best, pairs = -1, []
        for u in verts:
            dist = bfs_distances(g, u)
            for v in verts:
                if v <= u or dist[v] is None:
                    continue
                if dist[v] > best:
                    best, pairs = dist[v], [(u, v)]
                elif dist[v] == best:
                    pairs.append((u, v))
        if not pairs:
            raise PreconditionError(f"{g!r} has no pair of connected vertices")
        pair = rng.choice(pairs)

    u, v = pair
    if u == v:
        raise PreconditionError("The two vertices of the pair must differ")
    paths = two_vertex_disjoint_paths(g, u, v)
    if paths is None:
        raise HeuristicError(f"No two vertex-disjoint paths between {u} and {v} in {g!r}")
    return paths_to_cycle(*paths)


def hdf_cycle(g, rng):
    """Return a cycle through the vertices of maximum degree.

    One maximum-degree vertex: random long cycle started there.  Two: longest distance on that pair.  Otherwise a
    random long cycle from a uniformly chosen maximum-degree vertex.
    """
    degrees = g.degrees()
    top = max(degrees)
    if top == 0:
        raise PreconditionError(f"{g!r} has no edges")
    leaders = [v for v, d in enumerate(degrees) if d == top]
    if len(leaders) == 1:
        return random_long_cycle(g, rng, start=leaders[0])
    if len(leaders) == 2:
        return longest_distance_cycle(g, rng, pair=tuple(leaders))
    return random_long_cycle(g, rng, start=rng.choice(leaders))


_STRATEGIES = {
    Strategy.RC: random_cycle,
    Strategy.RLC: random_long_cycle,
    Strategy.LD: longest_distance_cycle,
    Strategy.HDF: hdf_cycle,
}


def cycle_strategy(strategy):
    """Return the cycle-finding function for a Strategy (or its name)."""
    return _STRATEGIES[Strategy(strategy)]


def _component_order(components):
    """Sort component edge sets largest first, ties by lowest edge index."""
    return sorted(components, key=lambda mask: (-mask.bit_count(), (mask & -mask).bit_length()))


def decompose(g, strategy, rng):
    """Decompose g into cycles by applying a strategy to its biconnected components until no edge is left.

    :param Graph g: An even, connected graph with at least one edge
    :param Strategy strategy: The cycle-finding heuristic
    :param RngStream rng: The random stream
    :return HeuristicOutcome: The cycles found and whether their number meets the bound for g's order
    """
    strategy = Strategy(strategy)
    find_cycle = _STRATEGIES[strategy]
    cycles = []
    current = g
    while current.m:
        for mask in _component_order(biconnected_components(current)):
            block = Graph.from_edge_set(g.n, mask)
            cycle = find_cycle(block, rng)
            cycles.append(cycle)
            current = _remove_edges(current, cycle.edge_set(g.n))

    decomposition = Decomposition(tuple(cycles), g.n)
    within = len(cycles) <= hajos_bound(g.n)
    LOGGER.debug("%s decomposed %r into %d cycles (within bound: %s)", strategy.name, g, len(cycles), within)
    return HeuristicOutcome(strategy=strategy, decomposition=decomposition, cycles_used=len(cycles),
                            within_bound=within)


def rlc_repeat(g, rng, cancel=None, max_attempts=DEFAULT_MAX_ATTEMPTS):
    """Run random-long-cycle decompositions until one meets the bound, the attempts run out or cancel is set.

    :param Graph g: An even, connected graph with at least one edge
    :param RngStream rng: The random stream
    :param obj cancel: A cancellation token with an is_set() method (e.g. threading.Event)
    :param int max_attempts: The maximum number of decompositions to try
    :return Decomposition: The first within-bound decomposition, or None
    """
    for attempt in range(1, max_attempts + 1):
        if cancel is not None and cancel.is_set():
            LOGGER.debug("Repeated RLC cancelled after %d attempts", attempt - 1)
            return None
        outcome = decompose(g, Strategy.RLC, rng)
        if outcome.within_bound:
            LOGGER.debug("Repeated RLC succeeded on attempt %d", attempt)
            return outcome.decomposition
    LOGGER.debug("Repeated RLC gave up after %d attempts", max_attempts)
    return None
