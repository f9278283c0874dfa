"""Flip dynamics for graph colorings: chains, couplings and the LP analysis."""

__version__ = "0.1.0"
