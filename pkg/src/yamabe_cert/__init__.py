"""Exact certification of the sign conditions behind the boundary-bubble blow-up construction."""

__version__ = "0.1.0"
