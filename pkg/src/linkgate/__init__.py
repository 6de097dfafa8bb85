"""Exact computation of abelian link invariants and the concordance obstructions built on them."""

__version__ = "0.1.0"
