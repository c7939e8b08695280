"""Exact tools for Mahler functional equations, automatic sequences and
rationality testing of power series."""

__version__ = "0.1.0"
