"""The free modular operad generated by a graph."""
from __future__ import annotations

from typing import Mapping

from ..etale import EmbeddingClass, representative
from ..graph import Graph
from ..involutive import InvolutiveSet, sort_atoms
from .decorated import Collection, DecoratedGraph, FreeCollection, enumerate_decorated


class VertexCollection(Collection):
    """``Ǧ``: one element (the vertex ``v``) over ``i(nbhd(v))`` colored by itself.

    The coloring of the legs pins the bijection, so an element is just ``v``.
    """

    def __init__(self, g: Graph):
        self.graph = g
        self.colors = g.involution()

    def fiber(self, xi: Mapping) -> list:
        img = list(xi.values())
        if len(set(img)) != len(img):
            return []
        return [v for v in self.graph.vertices if set(self.graph.legs(v)) == set(img)]


class FreeModularOperad(FreeCollection):
    """``𝕄(G) = T(Ǧ)`` with ``γ = μ``."""

    def __init__(self, g: Graph, vertex_bound: int | None = None):
        super().__init__(VertexCollection(g))
        self.graph = g
        self.vertex_bound = vertex_bound

    def types(self):
        g = self.graph
        return [(v, g.legs(v), {a: a for a in g.legs(v)}, 1) for v in g.vertices]

    def elements(self, xi: Mapping, vertex_bound: int) -> list[DecoratedGraph]:
        return free_elements(self, xi, vertex_bound)

    def fiber(self, xi: Mapping) -> list:
        if self.vertex_bound is None:
            raise ValueError("fiber enumeration needs a vertex bound")
        return free_elements(self, xi, self.vertex_bound)

    def __repr__(self):
        return f"FreeModularOperad({self.graph!r})"


def free_elements(F: FreeModularOperad, xi: Mapping, vertex_bound: int) -> list[DecoratedGraph]:
    """Elements of ``𝕄(G)(S, xi)`` whose shapes have at most ``vertex_bound`` vertices."""
    if any(c not in F.colors for c in xi.values()):
        raise ValueError("colors must be arcs of the generating graph")
    return enumerate_decorated(F.types(), xi, vertex_bound, F.base)


def embedding_to_element(c: EmbeddingClass, F: FreeModularOperad | None = None) -> DecoratedGraph:
    """The element of ``𝕄(G)(∂f, incl)`` represented by an embedding class."""
    g = c.target
    F = F or FreeModularOperad(g)
    k, am, vm = representative(c)
    f = {am[b]: b for b in k.boundary}
    return DecoratedGraph(k, am, f, {w: vm[w] for w in k.vertices}, F.base)


def element_on_legs(c: EmbeddingClass, legs: Mapping, F: FreeModularOperad | None = None) -> DecoratedGraph:
    """Like :func:`embedding_to_element` but over ``legs: S -> ∂f`` (a bijection)."""
    d = embedding_to_element(c, F)
    return DecoratedGraph(d.shape, d.zeta, {s: d.f[b] for s, b in legs.items()}, d.deco, d.coll)


def tautological_element(g: Graph, F: FreeModularOperad | None = None) -> DecoratedGraph:
    F = F or FreeModularOperad(g)
    return DecoratedGraph(g, {a: a for a in g.arcs}, {b: b for b in g.boundary},
                          {v: v for v in g.vertices}, F.base)


def sorted_legs(xs):
    return sort_atoms(xs)


__all__ = ["VertexCollection", "FreeModularOperad", "free_elements", "embedding_to_element",
           "element_on_legs", "tautological_element", "InvolutiveSet"]
