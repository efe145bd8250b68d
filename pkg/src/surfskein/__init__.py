"""Skein invariants and volume bounds for link diagrams on closed orientable surfaces."""

__version__ = "0.1.0"
