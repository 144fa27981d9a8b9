"""Bipartite graphs of given maximum degree and diameter with small defect."""

__version__ = "1.0.0"
