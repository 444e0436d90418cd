"""Exact-arithmetic laboratory for dormant opers on the 3-pointed line."""

__version__ = "0.1.0"
