"""Define the graph6 reader and writer used for graph streams.

A record is one ASCII line: chr(n + 63) for n <= 62, then ceil(C(n, 2) / 6) bytes.  Each byte holds six bits of the
upper triangle of the adjacency matrix, taken column by column ((0,1), (0,2), (1,2), (0,3), ...), big-endian, offset
by 63.  Unused bits of the final byte are zero.
"""

import logging

from ._helpers import Graph6Error
from .graph import MAX_ORDER, Graph

LOGGER = logging.getLogger(__name__)

HEADER = ">>graph6<<"


def _payload_length(n):
    """Return the number of data bytes for a graph of order n."""
    return (n * (n - 1) // 2 + 5) // 6


def parse_graph6(line):
    """Decode one graph6 record.

    :param str line: The record; surrounding whitespace and a leading ">>graph6<<" header are ignored
    :return Graph: The decoded labelled graph
    :raises Graph6Error: on a malformed length byte, a bad payload byte, trailing garbage, nonzero padding or n > 32
    """
    text = line.strip()
    if text.startswith(HEADER):
        text = text[len(HEADER):]
    if not text:
        raise Graph6Error("Empty graph6 record")

    first = ord(text[0]) - 63
    if first == 63:
        raise Graph6Error(f"Graph orders above 62 are not supported (record starts with {text[:4]!r})")
    if not 0 <= first <= 62:
        raise Graph6Error(f"Malformed length byte {text[0]!r}")
    n = first
    if n == 0 or n > MAX_ORDER:
        raise Graph6Error(f"Graph order {n} is outside 1..{MAX_ORDER}")

    payload = text[1:]
    expected = _payload_length(n)
    if len(payload) != expected:
        raise Graph6Error(f"Expected {expected} data bytes for order {n}, found {len(payload)}")

    bits = []
    for char in payload:
        value = ord(char) - 63
        if not 0 <= value <= 63:
            raise Graph6Error(f"Malformed data byte {char!r}")
        bits.extend((value >> shift) & 1 for shift in range(5, -1, -1))

    total = n * (n - 1) // 2
    if any(bits[total:]):
        raise Graph6Error("Nonzero padding bits after the adjacency data")

    rows = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
    return Graph(n, rows)


def to_graph6(g):
    """Encode the labelled adjacency of g as a graph6 record (no newline).

    :param Graph g: A graph with at most 62 vertices
    :return str: The record
    """
    n = g.n
    if n > 62:
        raise Graph6Error(f"Graph orders above 62 are not supported, got {n}")
    bits = [g.adj[i] >> j & 1 for j in range(1, n) for i in range(j)]
    bits.extend([0] * (-len(bits) % 6))

    chars = [chr(n + 63)]
    for pos in range(0, len(bits), 6):
        value = 0
        for bit in bits[pos:pos + 6]:
            value = value << 1 | bit
        chars.append(chr(value + 63))
    return "".join(chars)


def read_graph6_lines(lines):
    """Decode a stream of graph6 lines, skipping blank lines.

    :param iterable lines: Text lines
    :return iter: Yields (line_number, Graph) pairs, or (line_number, Graph6Error) for records that fail to decode
    """
    for number, line in enumerate(lines, start=1):
        if not line.strip() or line.strip() == HEADER:
            continue
        try:
            yield number, parse_graph6(line)
        except Graph6Error as exc:
            LOGGER.debug("Line %d is not a valid graph6 record: %s", number, exc)
            yield number, exc
