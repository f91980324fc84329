"""Exact finite-n tools for off-diagonal Ramsey multiplicity."""

__version__ = "0.1.0"
