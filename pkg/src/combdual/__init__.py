"""Undominating stars versus tough subgraphs on finitely presented infinite graphs."""

__version__ = "0.1.0"
