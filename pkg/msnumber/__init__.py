"""Exact MS-number toolkit for graph states and quadratic forms over GF(2)."""

__version__ = "1.0.0"
