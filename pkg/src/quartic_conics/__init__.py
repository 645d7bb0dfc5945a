"""Conics on the Kummer quartics of a five-parameter invariant family."""

__version__ = "0.1.0"
