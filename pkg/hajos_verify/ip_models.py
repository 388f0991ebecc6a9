"""Define the integer programs that certify a decomposition into at most floor((n - 1) / 2) cycles.

Slot i (1-based, up to the Hajós bound) holds at most one cycle.  Binary x_{e,i} puts edge e on slot i and binary
y_{v,i} puts vertex v on slot i.  Both formulations share the cover rows (every edge in exactly one slot) and the
degree rows (a vertex on a slot meets exactly two of its edges).  They differ in how they forbid a slot from holding
several disjoint cycles:

* IP-HD needs an anchor vertex of degree n - 1 or n - 2 that lies on every slot, and for every non-empty S that
  avoids the anchor requires n * (edges touching S) >= (n + 1) * (vertices of S on the slot).
* IP-Gen works on any graph.  For every non-empty proper S, beta_{S,i} = OR of y over S, gamma_{S,i} = OR of y
  outside S, z_{S,i} = beta AND gamma, and z = 1 forces at least two slot edges across the cut of S.  The OR, AND
  and conditional constraints are written as their standard linearization.

Models are emitted in CPLEX LP format for external MILP solvers; assignments can be checked and decoded here.
"""

import logging
import os
from dataclasses import dataclass, field

from ._helpers import iter_bits
from .graph import Cycle, Decomposition, edge_index, hajos_bound, is_even, is_fully_connected
from .graph6 import to_graph6

LOGGER = logging.getLogger(__name__)

HD = "hd"
GEN = "gen"

TERMS_PER_LINE = 8


class NoAnchorError(Exception):
    """The graph has no vertex of degree n - 1 or n - 2, so IP-HD does not apply."""


class TracingError(Exception):
    """The edges assigned to a slot do not form a single cycle."""


class MissingVariableError(Exception):
    """An assignment does not give a value to every variable of the model."""


@dataclass(frozen=True)
class LinearConstraint:
    """A named row: sum of coef * variable over terms, compared to rhs by sense ("<=", "=" or ">=")."""

    name: str
    terms: tuple
    sense: str
    rhs: int

    def lhs(self, values):
        """Evaluate the left-hand side under a variable -> value mapping."""
        return sum(coef * values[var] for coef, var in self.terms)

    def satisfied(self, values):
        """Return True if the row holds under the mapping."""
        lhs = self.lhs(values)
        if self.sense == "<=":
            return lhs <= self.rhs
        if self.sense == ">=":
            return lhs >= self.rhs
        return lhs == self.rhs


@dataclass(frozen=True)
class IpModel:  # pylint: disable=too-many-instance-attributes
    """A solver-independent binary feasibility program with the metadata needed to decode its solutions.

    *meta* maps every variable name to (kind, key, slot) where kind is "x" (key: edge index), "y" (key: vertex) or
    "beta" / "gamma" / "z" (key: vertex-set bit mask).
    """

    formulation: str
    n: int
    slots: int
    anchor: int
    edges: tuple
    variables: tuple
    constraints: tuple
    meta: dict = field(compare=False)
    source: str = ""

    def constraint(self, name):
        """Return the row called *name*."""
        for row in self.constraints:
            if row.name == name:
                return row
        raise KeyError(name)


def x_name(idx, slot):
    """Return the name of the edge-on-slot variable."""
    return f"x_e{idx}_c{slot}"


def y_name(v, slot):
    """Return the name of the vertex-on-slot variable."""
    return f"y_v{v}_c{slot}"


def _aux_name(kind, mask, slot):
    """Return the name of an IP-Gen auxiliary variable."""
    return f"{kind}_S{mask}_c{slot}"


class _ModelBuilder:
    """Collect variables and rows in emission order."""

    def __init__(self, g, formulation, anchor=None):
        """Initialize the class.

        :param Graph g: The graph the model is built for
        :param str formulation: HD or GEN
        :param int anchor: The anchor vertex for IP-HD
        """
        self.g = g
        self.formulation = formulation
        self.anchor = anchor
        self.slots = hajos_bound(g.n)
        self.edges = tuple((edge_index(i, j, g.n), i, j) for i, j in g.edges())
        self.variables = []
        self.meta = {}
        self.constraints = []

    def variable(self, name, kind, key, slot):
        """Declare a binary variable."""
        self.variables.append(name)
        self.meta[name] = (kind, key, slot)
        return name

    def row(self, name, terms, sense, rhs):
        """Add a constraint row."""
        self.constraints.append(LinearConstraint(name, tuple(terms), sense, rhs))

    def add_cover_and_degree(self):
        """Declare x and y and add the cover and degree rows shared by both formulations."""
        g, n = self.g, self.g.n
        slots = range(1, self.slots + 1)
        for idx, _, _ in self.edges:
            for slot in slots:
                self.variable(x_name(idx, slot), "x", idx, slot)
        for v in range(n):
            for slot in slots:
                self.variable(y_name(v, slot), "y", v, slot)

        for idx, _, _ in self.edges:
            self.row(f"cover_e{idx}", [(1, x_name(idx, slot)) for slot in slots], "=", 1)
        for v in range(n):
            incident = [edge_index(v, w, n) for w in iter_bits(g.adj[v])]
            for slot in slots:
                terms = [(1, x_name(idx, slot)) for idx in incident] + [(-2, y_name(v, slot))]
                self.row(f"deg_v{v}_c{slot}", terms, "=", 0)

    def build(self):
        """Freeze the collected model."""
        return IpModel(formulation=self.formulation, n=self.g.n, slots=self.slots, anchor=self.anchor,
                       edges=self.edges, variables=tuple(self.variables), constraints=tuple(self.constraints),
                       meta=dict(self.meta), source=to_graph6(self.g))


def find_hd_anchor(g):
    """Return the lowest vertex of degree n - 1, else the lowest of degree n - 2, else None."""
    degrees = g.degrees()
    for target in (g.n - 1, g.n - 2):
        for v, d in enumerate(degrees):
            if d == target and d > 0:
                return v
    return None


def _check_input(g):
    """Reject graphs that are not even and connected."""
    if not (is_even(g) and is_fully_connected(g)):
        raise ValueError(f"{g!r} must be even and connected")


def build_ip_hd(g):
    """Build IP-HD: cover, degree, anchor-on-every-slot and one subset row per S avoiding the anchor and slot.

    :param Graph g: An even, connected graph with a vertex of degree n - 1 or n - 2
    :return IpModel: The model
    :raises NoAnchorError: if no anchor vertex exists
    """
    _check_input(g)
    anchor = find_hd_anchor(g)
    if anchor is None:
        raise NoAnchorError(f"{g!r} has no vertex of degree {g.n - 1} or {g.n - 2}")

    builder = _ModelBuilder(g, HD, anchor=anchor)
    builder.add_cover_and_degree()
    n = g.n
    slots = range(1, builder.slots + 1)
    for slot in slots:
        builder.row(f"anchor_c{slot}", [(1, y_name(anchor, slot))], "=", 1)

    others = [v for v in range(n) if v != anchor]
    for slot in slots:
        for bits in range(1, 1 << len(others)):
            subset = [others[k] for k in range(len(others)) if bits >> k & 1]
            mask = sum(1 << v for v in subset)
            touching = [idx for idx, i, j in builder.edges if mask >> i & 1 or mask >> j & 1]
            terms = [(n, x_name(idx, slot)) for idx in touching] + [(-(n + 1), y_name(v, slot)) for v in subset]
            builder.row(f"cut_S{mask}_c{slot}", terms, ">=", 0)

    model = builder.build()
    LOGGER.debug("Built IP-HD for %r: %d variables, %d rows", g, len(model.variables), len(model.constraints))
    return model


def build_ip_gen(g):
    """Build IP-Gen with its OR / AND / conditional constraints linearized for every non-empty proper S and slot.

    :param Graph g: An even, connected graph
    :return IpModel: The model
    """
    _check_input(g)
    builder = _ModelBuilder(g, GEN)
    builder.add_cover_and_degree()
    n = g.n
    full = (1 << n) - 1
    for slot in range(1, builder.slots + 1):
        for mask in range(1, full):
            inside = list(iter_bits(mask))
            outside = list(iter_bits(full & ~mask))
            beta = builder.variable(_aux_name("b", mask, slot), "beta", mask, slot)
            gamma = builder.variable(_aux_name("g", mask, slot), "gamma", mask, slot)
            z = builder.variable(_aux_name("z", mask, slot), "z", mask, slot)

            for v in inside:
                builder.row(f"beta_lo_S{mask}_v{v}_c{slot}", [(1, beta), (-1, y_name(v, slot))], ">=", 0)
            builder.row(f"beta_hi_S{mask}_c{slot}", [(1, beta)] + [(-1, y_name(v, slot)) for v in inside], "<=", 0)
            for v in outside:
                builder.row(f"gamma_lo_S{mask}_v{v}_c{slot}", [(1, gamma), (-1, y_name(v, slot))], ">=", 0)
            builder.row(f"gamma_hi_S{mask}_c{slot}", [(1, gamma)] + [(-1, y_name(v, slot)) for v in outside],
                        "<=", 0)
            builder.row(f"and_b_S{mask}_c{slot}", [(1, z), (-1, beta)], "<=", 0)
            builder.row(f"and_g_S{mask}_c{slot}", [(1, z), (-1, gamma)], "<=", 0)
            builder.row(f"and_bg_S{mask}_c{slot}", [(1, z), (-1, beta), (-1, gamma)], ">=", -1)

            crossing = [idx for idx, i, j in builder.edges if (mask >> i & 1) != (mask >> j & 1)]
            builder.row(f"cut_S{mask}_c{slot}", [(1, x_name(idx, slot)) for idx in crossing] + [(-2, z)], ">=", 0)

    model = builder.build()
    LOGGER.debug("Built IP-Gen for %r: %d variables, %d rows", g, len(model.variables), len(model.constraints))
    return model


def select_formulation(g):
    """Return IP-HD when g has an anchor vertex, otherwise IP-Gen."""
    if find_hd_anchor(g) is not None:
        return build_ip_hd(g)
    return build_ip_gen(g)


def _format_terms(terms):
    """Render coefficient terms, a few per line."""
    parts = []
    for pos, (coef, var) in enumerate(terms):
        sign = "-" if coef < 0 else "+"
        magnitude = abs(coef)
        text = var if magnitude == 1 else f"{magnitude} {var}"
        if pos == 0:
            parts.append(f"- {text}" if coef < 0 else text)
        else:
            parts.append(f"{sign} {text}")
    lines = [" ".join(parts[k:k + TERMS_PER_LINE]) for k in range(0, len(parts), TERMS_PER_LINE)]
    return "\n   ".join(lines) if lines else "0"


def emit_lp(model):
    """Render the model as CPLEX LP text: Minimize / Subject To / Binary / End.

    The objective is identically zero; it names the first variable with coefficient 0 so every LP reader accepts it.

    :param IpModel model: The model
    :return str: The LP text, deterministic for equal models
    """
    title = "IP-HD" if model.formulation == HD else "IP-Gen"
    lines = [f"\\ {title} feasibility model for graph6 {model.source}", f"\\ slots: {model.slots}"]
    if model.anchor is not None:
        lines.append(f"\\ anchor vertex: {model.anchor}")
    lines.append("Minimize")
    lines.append(f" obj: 0 {model.variables[0]}" if model.variables else " obj: 0")
    lines.append("Subject To")
    for row in model.constraints:
        lines.append(f" {row.name}: {_format_terms(row.terms)} {row.sense} {row.rhs}")
    lines.append("Binary")
    for var in model.variables:
        lines.append(f" {var}")
    lines.append("End")
    return "\n".join(lines) + "\n"


def write_lp(model, directory, stem=None):
    """Write the model's LP text to directory/<stem>.lp and return the path.

    The default stem is the formulation followed by the graph6 text, with characters unsafe in file names escaped.
    """
    if stem is None:
        safe = "".join(ch if ch.isalnum() else f"_{ord(ch):02x}" for ch in model.source)
        stem = f"{model.formulation}_{safe}"
    os.makedirs(directory, exist_ok=True)
    path = os.path.join(directory, f"{stem}.lp")
    with open(path, "w", encoding="ascii") as handle:
        handle.write(emit_lp(model))
    LOGGER.info("Wrote %s model to %s", model.formulation, path)
    return path


def feasibility_check(model, assignment):
    """Return True if the 0/1 assignment satisfies every row of the model.

    :param IpModel model: The model
    :param dict assignment: variable name -> 0 or 1, total over the model's variables
    :raises MissingVariableError: if a model variable has no value
    """
    missing = [var for var in model.variables if var not in assignment]
    if missing:
        raise MissingVariableError(f"Assignment has no value for {len(missing)} variables, e.g. {missing[0]}")
    return all(row.satisfied(assignment) for row in model.constraints)


def violated_constraints(model, assignment):
    """Return the names of the rows the assignment breaks."""
    return [row.name for row in model.constraints if not row.satisfied(assignment)]


def complete_assignment(model, partial):
    """Return a total assignment: x and y from *partial* (missing ones are 0), beta / gamma / z from their definitions.

    :param IpModel model: The model
    :param dict partial: Values for some x and y variables
    :return dict: The total assignment
    """
    values = {}
    for var in model.variables:
        kind, _, _ = model.meta[var]
        if kind in ("x", "y"):
            values[var] = int(partial.get(var, 0))

    full = (1 << model.n) - 1
    on_slot = {}
    for var, value in values.items():
        kind, key, slot = model.meta[var]
        if kind == "y" and value:
            on_slot[slot] = on_slot.get(slot, 0) | 1 << key
    for var in model.variables:
        kind, mask, slot = model.meta[var]
        hit = on_slot.get(slot, 0)
        if kind == "beta":
            values[var] = int(bool(hit & mask))
        elif kind == "gamma":
            values[var] = int(bool(hit & full & ~mask))
        elif kind == "z":
            values[var] = int(bool(hit & mask) and bool(hit & full & ~mask))
    return values


def encode_decomposition(model, decomposition):
    """Return the assignment that puts cycle k of the decomposition on slot k + 1.

    :raises ValueError: if the decomposition has more cycles than the model has slots
    """
    if len(decomposition) > model.slots:
        raise ValueError(f"{len(decomposition)} cycles do not fit into {model.slots} slots")
    partial = {}
    for slot, cycle in enumerate(decomposition.cycles, start=1):
        for i, j in cycle.edges():
            partial[x_name(edge_index(i, j, model.n), slot)] = 1
        for v in cycle.vertices:
            partial[y_name(v, slot)] = 1
    return complete_assignment(model, partial)


def _trace(n, pairs):
    """Order the edges of one slot into a single cycle."""
    neighbours = {}
    for i, j in pairs:
        neighbours.setdefault(i, []).append(j)
        neighbours.setdefault(j, []).append(i)
    if any(len(adjacent) != 2 for adjacent in neighbours.values()):
        raise TracingError("Slot edges are not 2-regular")

    start = min(neighbours)
    walk = [start]
    previous, current = start, min(neighbours[start])
    while current != start:
        walk.append(current)
        a, b = neighbours[current]
        previous, current = current, (b if a == previous else a)
    if len(walk) != len(neighbours):
        raise TracingError(f"Slot edges split into several cycles on order {n}")
    return Cycle(walk)


def decode_solution(model, assignment):
    """Turn a feasible assignment into its decomposition: slot i becomes the cycle traced through its x edges.

    :param IpModel model: The model
    :param dict assignment: A feasible assignment
    :return Decomposition: One cycle per non-empty slot
    :raises TracingError: if a slot does not hold exactly one cycle
    """
    by_slot = {}
    for idx, i, j in model.edges:
        for slot in range(1, model.slots + 1):
            if assignment.get(x_name(idx, slot)):
                by_slot.setdefault(slot, []).append((i, j))
    cycles = [_trace(model.n, by_slot[slot]) for slot in sorted(by_slot)]
    return Decomposition(tuple(cycles), model.n)
