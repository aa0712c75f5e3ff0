"""Bounds-consistent filtering for Focus-family sequence constraints."""

__version__ = "0.1.0"
