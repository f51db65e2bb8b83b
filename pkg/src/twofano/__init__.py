"""Exact second Chern character computations and 2-Fano classification."""
__version__ = "0.1.0"
