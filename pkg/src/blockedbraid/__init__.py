"""Computations in the blocked-braid groups BB_n."""

__version__ = "0.1.0"
