"""Exact-arithmetic workbench for commutative operator algebras of sl_n."""

__version__ = "0.1.0"
