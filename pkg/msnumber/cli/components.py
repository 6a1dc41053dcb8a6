"""Reusable CLI input and status helpers."""

import logging
import sys
from pathlib import Path
from typing import Optional, Union

from msnumber.algebra.quadform import QuadraticPolynomial, from_graph, parse_polynomial
from msnumber.errors import DomainError, ParseError
from msnumber.graphs.formats import GRAPH6_HEADER, parse_edge_list, parse_graph6
from msnumber.graphs.graph import Graph

logger = logging.getLogger(__name__)

FORMATS = ("graph6", "edgelist", "poly")


def read_source(path: Optional[str] = None, inline: Optional[str] = None) -> str:
    """Text of the single input source: inline text, a file, or standard input."""
    if inline is not None:
        return inline
    if path is not None and path != "-":
        return Path(path).read_text(encoding="utf-8")
    return sys.stdin.read()


def detect_format(text: str) -> str:
    """Guess the input format.

    Polynomials carry ';' or ':' separators; edge lists start with a decimal
    vertex count; graph6 bytes never include digits.
    """
    stripped = text.strip()
    if not stripped:
        raise ParseError("empty input")
    if stripped.startswith(GRAPH6_HEADER):
        return "graph6"
    if ";" in stripped or ":" in stripped:
        return "poly"
    if stripped.split()[0].isdigit():
        return "edgelist"
    return "graph6"


def parse_graph_text(text: str, fmt: Optional[str] = None) -> Graph:
    fmt = fmt or detect_format(text)
    if fmt == "graph6":
        lines = [line.strip() for line in text.splitlines() if line.strip() and line.strip() != GRAPH6_HEADER]
        if len(lines) != 1:
            raise ParseError(f"expected exactly one graph6 record, got {len(lines)}")
        return parse_graph6(lines[0])
    if fmt == "edgelist":
        return parse_edge_list(text)
    raise DomainError(f"this command needs a graph, got {fmt} input")


def parse_form_text(text: str, fmt: Optional[str] = None) -> Union[Graph, QuadraticPolynomial]:
    """A graph, or a polynomial when the input is in the poly format."""
    fmt = fmt or detect_format(text)
    if fmt == "poly":
        return parse_polynomial(text)
    return parse_graph_text(text, fmt)


def as_polynomial(value: Union[Graph, QuadraticPolynomial]) -> QuadraticPolynomial:
    return from_graph(value) if isinstance(value, Graph) else value


def show_status(message: str, status_type: str = "info"):
    """Print a status line on standard error.

    Args:
        message: Status message
        status_type: Type of status ('info', 'warning', 'error')
    """
    prefix = {"warning": "warning: ", "error": "error: "}.get(status_type, "")
    print(f"{prefix}{message}", file=sys.stderr)
