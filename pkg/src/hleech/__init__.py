"""Exact Hurwitz-quaternion lattices, their reflection groups, and the
verification toolkit built on them."""

__version__ = "0.1.0"
