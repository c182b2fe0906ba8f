"""Graphical maps, modular operads and the Segal nerve, on small finite graphs."""
from . import errors
from .canon import automorphisms, canonical_code, certificate, is_isomorphic, isomorphisms
from .etale import (EmbeddingClass, EtaleMap, check_etale, embedding_class, embeddings_between,
                    enumerate_embeddings)
from .graph import (Graph, build_graph, cycle_graph, exceptional_edge, cover_base,
                    double_cover, linear_graph, loop_graph, nodeless_loop, star, star_of,
                    star_of_vertex, validate)
from .graphical import (EXTENDED, STRICT, GraphicalMap, compose, factorize, homset, identity,
                        make_graphical_map, validate_map)
from .involutive import InvolutiveSet, make_involutive_set
from .substitution import substitute

__version__ = "0.1.0"

__all__ = [
    "errors", "automorphisms", "canonical_code", "certificate", "is_isomorphic", "isomorphisms",
    "EmbeddingClass", "EtaleMap", "check_etale", "embedding_class", "embeddings_between",
    "enumerate_embeddings", "Graph", "build_graph", "cycle_graph", "exceptional_edge",
    "cover_base", "double_cover", "linear_graph", "loop_graph", "nodeless_loop", "star",
    "star_of", "star_of_vertex", "validate", "EXTENDED", "STRICT", "GraphicalMap", "compose",
    "factorize", "homset", "identity", "make_graphical_map", "validate_map", "InvolutiveSet",
    "make_involutive_set", "substitute",
]
