"""Certificates for path-induced tree copies versus bounded colourings."""
from .certificates import verify_certificate
from .creature import Creature, extend_coloring, is_creature, peel_coloring
from .dichotomy import bounds, creature_or_embedding, spider_dichotomy, tree_dichotomy
from .embed import Embedding, find_path_induced, restrict_embedding, verify_path_induced
from .graph import Coloring, Graph, induced_subgraph, is_proper_coloring, is_stable, neighbors, non_neighborhood
from .tree import RootedTree, pair_type, spider, spider_cover

__all__ = [
    "Coloring", "Creature", "Embedding", "Graph", "RootedTree",
    "bounds", "creature_or_embedding", "extend_coloring", "find_path_induced", "induced_subgraph",
    "is_creature", "is_proper_coloring", "is_stable", "neighbors", "non_neighborhood", "pair_type",
    "peel_coloring", "restrict_embedding", "spider", "spider_cover", "spider_dichotomy",
    "tree_dichotomy", "verify_certificate", "verify_path_induced",
]
