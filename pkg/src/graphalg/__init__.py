"""Exact workbench for graph algebras of k-labeled quantum graphs."""

__version__ = "0.1.0"
