"""Graph ingestion: graph6 records, edge lists and graph6 line streams."""

import logging
from typing import Iterable, Iterator, NamedTuple, Optional, Tuple

import numpy as np

from msnumber.errors import DomainError, ParseError
from msnumber.graphs.graph import Graph

logger = logging.getLogger(__name__)

GRAPH6_HEADER = ">>graph6<<"
_BIAS = 63
_SHORT_MAX = 62
_MEDIUM_MAX = 258047
_LONG_MAX = 68719476735
_SIX_BITS = np.array([32, 16, 8, 4, 2, 1], dtype=np.int64)


def _pair_order(n: int):
    """Vertex pairs (i, j), i < j, in graph6 bit order: by j, then by i."""
    j, i = np.tril_indices(n, k=-1)
    return i, j


def _decode_size(data: str, base: int):
    """Read N(n); returns (n, bytes consumed)."""
    if not data:
        raise ParseError("empty graph6 record", offset=base)
    first = ord(data[0]) - _BIAS
    if first < 63:
        return first, 1
    if len(data) >= 2 and data[1] == "~":
        width, skip = 6, 2
    else:
        width, skip = 3, 1
    chunk = data[skip:skip + width]
    if len(chunk) < width:
        raise ParseError("truncated vertex count", offset=base + len(data))
    value = 0
    for k, ch in enumerate(chunk):
        code = ord(ch) - _BIAS
        if not 0 <= code < 64:
            raise ParseError(f"byte {ch!r} outside the graph6 range", offset=base + skip + k)
        value = (value << 6) | code
    return value, skip + width


def parse_graph6(text: str) -> Graph:
    """Decode one graph6 record, tolerating the ``>>graph6<<`` header."""
    record = text.rstrip("\r\n")
    base = 0
    if record.startswith(GRAPH6_HEADER):
        base = len(GRAPH6_HEADER)
        record = record[base:]
    for k, ch in enumerate(record):
        if not 63 <= ord(ch) <= 126:
            raise ParseError(f"byte {ch!r} outside the graph6 range 63..126", offset=base + k)

    n, used = _decode_size(record, base)
    pairs = n * (n - 1) // 2
    expected = (pairs + 5) // 6
    body = record[used:]
    if len(body) < expected:
        raise ParseError(
            f"graph6 body too short: {len(body)} bytes for n={n}, need {expected}",
            offset=base + len(record),
        )
    if len(body) > expected:
        raise ParseError("trailing garbage after graph6 record", offset=base + used + expected)

    values = np.frombuffer(body.encode("ascii"), dtype=np.uint8) - _BIAS
    bits = np.unpackbits(values.reshape(-1, 1), axis=1)[:, 2:].reshape(-1)
    if bits[pairs:].any():
        raise ParseError("nonzero padding bits in graph6 record", offset=base + len(record) - 1)

    dense = np.zeros((n, n), dtype=np.uint8)
    i, j = _pair_order(n)
    dense[i, j] = bits[:pairs]
    dense |= dense.T
    return Graph.from_dense(dense)


def _encode_size(n: int) -> str:
    if n <= _SHORT_MAX:
        return chr(n + _BIAS)
    if n <= _MEDIUM_MAX:
        return "~" + "".join(chr(((n >> s) & 63) + _BIAS) for s in (12, 6, 0))
    if n <= _LONG_MAX:
        return "~~" + "".join(chr(((n >> s) & 63) + _BIAS) for s in (30, 24, 18, 12, 6, 0))
    raise DomainError(f"graph6 cannot encode n={n}")


def to_graph6(graph: Graph, header: bool = False) -> str:
    """Encode a graph as a graph6 record (no trailing newline)."""
    n = graph.n
    i, j = _pair_order(n)
    bits = graph.adjacency.to_array()[i, j].astype(np.int64)
    pad = (-bits.size) % 6
    if pad:
        bits = np.concatenate([bits, np.zeros(pad, dtype=np.int64)])
    values = bits.reshape(-1, 6) @ _SIX_BITS + _BIAS
    body = "".join(chr(int(v)) for v in values)
    prefix = GRAPH6_HEADER if header else ""
    return prefix + _encode_size(n) + body


def _edge_list_tokens(text: str) -> Iterator[Tuple[int, str]]:
    for number, raw in enumerate(text.splitlines(), start=1):
        for token in raw.split("#", 1)[0].split():
            yield number, token


def parse_edge_list(text: str) -> Graph:
    """Parse a vertex count n followed by vertex pairs u v (0-based).

    Tokens are whitespace separated, so pairs may share or span lines.
    ``#`` starts a comment. Duplicate edges collapse; errors carry the line
    of the offending token.
    """
    values = []
    for number, token in _edge_list_tokens(text):
        try:
            values.append((number, int(token)))
        except ValueError:
            raise ParseError(f"expected an integer, got {token!r}", line=number)
    if not values:
        raise ParseError("edge list is empty")
    first_line, n = values[0]
    if n < 0:
        raise ParseError(f"vertex count must be non-negative, got {n}", line=first_line)
    pairs = values[1:]
    if len(pairs) % 2:
        raise ParseError("edge list ends with an unpaired vertex", line=pairs[-1][0])
    edges = set()
    for (number, u), (_, v) in zip(pairs[0::2], pairs[1::2]):
        if u == v:
            raise ParseError(f"loop at vertex {u}", line=number)
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"edge ({u}, {v}) outside vertices 0..{n - 1}", line=number)
        edges.add((min(u, v), max(u, v)))
    return Graph.from_edges(n, sorted(edges))


def format_edge_list(graph: Graph) -> str:
    lines = [str(graph.n)] + [f"{u} {v}" for u, v in graph.edges()]
    return "\n".join(lines) + "\n"


class GraphRecord(NamedTuple):
    """One line of a graph6 stream: the graph, or the reason it was rejected."""
    line: int
    text: str
    graph: Optional[Graph]
    error: Optional[str]


def read_graph_stream(lines: Iterable[str]) -> Iterator[GraphRecord]:
    """Frame a one-record-per-line graph6 stream.

    Blank lines and bare header lines are skipped; malformed records are
    yielded with an error message so the caller can carry on.
    """
    for number, raw in enumerate(lines, start=1):
        text = raw.strip()
        if not text or text == GRAPH6_HEADER:
            continue
        try:
            yield GraphRecord(number, text, parse_graph6(text), None)
        except ParseError as e:
            logger.warning(f"Skipping malformed graph6 record on line {number}: {e}")
            yield GraphRecord(number, text, None, str(e))
