"""Finite, exact combinatorics of two-coloured operads and their bimodules."""

__version__ = "0.1.0"
