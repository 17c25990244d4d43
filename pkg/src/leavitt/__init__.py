"""Exact symbolic computation for Leavitt path algebras of graphs and ultragraphs."""

__version__ = "0.1.0"
