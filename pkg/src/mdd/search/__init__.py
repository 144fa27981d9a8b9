"""Exhaustive isomorph-free search for bipartite (delta, D, -defect)-graphs."""

from .catalogue import (Catalogue, SearchOptions, cross_validate, enumerate_graphs,
                        load_catalogue, oracle_keys, save_catalogue)

__all__ = ["Catalogue", "SearchOptions", "cross_validate", "enumerate_graphs",
           "load_catalogue", "oracle_keys", "save_catalogue"]
