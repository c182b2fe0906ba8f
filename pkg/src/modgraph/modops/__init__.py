"""Colored modular operads over sets."""
from .concrete import (GenusOperad, LinearRelationOperad, Operad, TerminalOperad, first_betti,
                       single_color)
from .decorated import (Collection, DecoratedGraph, FreeCollection, decorated_equal,
                        decorated_isos, enumerate_decorated, eta_at_vertices, eta_outside,
                        monad_mult, monad_T, monad_unit)
from .free import (FreeModularOperad, VertexCollection, element_on_legs, embedding_to_element,
                   free_elements, tautological_element)
from .laws import (LawReport, check_algebra_laws, check_heart_square, check_monad_laws,
                   check_unit_law, connected_partitions, nest)
from .maps import (J, OperadMap, compose_operad_maps, identity_map, involutive_maps, jk_homset,
                   make_operad_map, maps_to_operad)
from .sampling import random_decorated, random_shape
from .tabulated import (ReindexedOperad, TabElem, TabulatedOperad, biased_gamma, gamma_orders,
                        reindex, tabulate)

__all__ = [
    "GenusOperad", "LinearRelationOperad", "Operad", "TerminalOperad", "first_betti",
    "single_color", "Collection", "DecoratedGraph", "FreeCollection", "decorated_equal",
    "decorated_isos", "enumerate_decorated", "eta_at_vertices", "eta_outside", "monad_mult",
    "monad_T", "monad_unit", "FreeModularOperad", "VertexCollection", "element_on_legs",
    "embedding_to_element", "free_elements", "tautological_element", "LawReport",
    "check_algebra_laws", "check_heart_square", "check_monad_laws", "check_unit_law",
    "connected_partitions", "nest", "J", "OperadMap", "compose_operad_maps", "identity_map",
    "involutive_maps", "jk_homset", "make_operad_map", "maps_to_operad", "random_decorated",
    "random_shape", "ReindexedOperad", "TabElem", "TabulatedOperad", "biased_gamma",
    "gamma_orders", "reindex", "tabulate",
]
