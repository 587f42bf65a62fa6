"""Exact pseudohermitian geometry on model CR manifolds."""

__version__ = "0.1.0"
