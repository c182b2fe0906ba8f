"""Maps out of free modular operads, their composition, the functor J and JK hom-sets."""
from __future__ import annotations

from itertools import product
from typing import Mapping

from ..errors import FiberMismatch, NotInvolutive
from ..graph import Graph
from ..graphical import GraphicalMap
from ..involutive import atom_str, skey, sort_atoms
from .decorated import DecoratedGraph
from .free import FreeModularOperad, element_on_legs, free_elements
from .tabulated import TabElem, TabulatedOperad, arrange


class OperadMap:
    """A map ``𝕄(G) -> P`` given by ``f0: A(G) -> colors`` and ``f1(v) ∈ P(i nbhd(v), f0|)``."""

    __slots__ = ("graph", "target", "f0", "f1")

    def __init__(self, graph: Graph, target, f0: Mapping, f1: Mapping):
        self.graph, self.target = graph, target
        self.f0, self.f1 = dict(f0), dict(f1)

    def key(self):
        g = self.graph
        return (tuple((skey(a), skey(self.f0[a])) for a in g.arcs),
                tuple((skey(v), self.target.key(self.f1[v], sort_atoms(g.legs(v))))
                      for v in g.vertices))

    def __eq__(self, other):
        return isinstance(other, OperadMap) and self.graph == other.graph and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def apply(self, d: DecoratedGraph):
        """Image of an element of ``𝕄(G)``: decorate by ``f1`` then apply ``γ``."""
        P, g = self.target, self.graph
        k = d.shape
        deco = {}
        for w in k.vertices:
            v = d.deco[w]
            back = {d.zeta[l]: l for l in k.legs(w)}
            deco[w] = P.relabel(self.f1[v], {a: back[a] for a in g.legs(v)})
        zeta = {a: self.f0[c] for a, c in d.zeta.items()}
        return P.gamma(DecoratedGraph(k, zeta, d.f, deco, P))

    def text(self) -> str:
        g = self.graph
        lines = ["f0: " + ", ".join(f"{atom_str(a)} -> {atom_str(self.f0[a])}" for a in g.arcs)]
        for v in g.vertices:
            lines.append(f"f1 {atom_str(v)}: {self.target.show(self.f1[v])}")
        return "\n".join(lines)

    def __repr__(self):
        return f"<OperadMap from {self.graph!r}>"


def in_fiber(P, x, xi: Mapping) -> bool:
    if isinstance(x, DecoratedGraph):
        try:
            x.check()
        except Exception:
            return False
        return set(x.f) == set(xi) and x.xi() == dict(xi)
    if isinstance(x, TabElem) and isinstance(P, TabulatedOperad):
        prof, _ = arrange(xi)
        return set(x.pos) == set(xi) and x.profile == prof and x.name in P.names.get(prof, ())
    legs = sort_atoms(xi)
    k = P.key(x, legs)
    return any(P.key(y, legs) == k for y in P.fiber(dict(xi)))


def make_operad_map(g: Graph, target, f0: Mapping, f1: Mapping) -> OperadMap:
    C = target.colors
    if set(f0) != set(g.arcs):
        raise NotInvolutive("f0 must be defined on every arc")
    for a in g.arcs:
        if f0[g.i(a)] != C.dagger(f0[a]):
            raise NotInvolutive(f"f0 is not involutive at {a!r}")
    for v in g.vertices:
        xi = {l: f0[l] for l in g.legs(v)}
        if v not in f1 or not in_fiber(target, f1[v], xi):
            raise FiberMismatch(f"f1({v!r}) is not in the fiber over i(nbhd({v!r}))")
    return OperadMap(g, target, f0, f1)


def identity_map(g: Graph, F: FreeModularOperad | None = None) -> OperadMap:
    from ..graphical import identity
    return J(identity(g), F)


def J(phi: GraphicalMap, F: FreeModularOperad | None = None) -> OperadMap:
    """The operad map ``𝕄(G) -> 𝕄(G')`` of a graphical map."""
    g, h = phi.source, phi.target
    F = F or FreeModularOperad(h)
    f1 = {}
    for v in g.vertices:
        legs = {a: phi.phi0[a] for a in g.legs(v)}
        f1[v] = element_on_legs(phi.phi1[v], legs, F)
    return OperadMap(g, F, phi.phi0, f1)


def compose_operad_maps(gm: OperadMap, fm: OperadMap) -> OperadMap:
    """``g ∘ f`` for ``f: 𝕄(G) -> 𝕄(G')`` and ``g`` out of ``𝕄(G')``."""
    if not isinstance(fm.target, FreeModularOperad) or fm.target.graph != gm.graph:
        raise FiberMismatch("maps are not composable")
    f0 = {a: gm.f0[b] for a, b in fm.f0.items()}
    f1 = {v: gm.apply(fm.f1[v]) for v in fm.graph.vertices}
    return OperadMap(fm.graph, gm.target, f0, f1)


def involutive_maps(g: Graph, colors) -> list[dict]:
    """All involutive maps from the arcs of ``g`` to an involutive color set."""
    edges = g.edges()
    out = []
    for pick in product(colors.elements, repeat=len(edges)):
        f0, ok = {}, True
        for (a, b), c in zip(edges, pick):
            f0[a], f0[b] = c, colors.dagger(c)
        if ok:
            out.append(f0)
    return out


def jk_homset(h: Graph, g: Graph, vertex_bound: int, F: FreeModularOperad | None = None) -> list[OperadMap]:
    """All maps ``𝕄(H) -> 𝕄(G)`` whose vertex values have at most ``vertex_bound`` vertices."""
    F = F or FreeModularOperad(g)
    out = []
    for f0 in involutive_maps(h, F.colors):
        choices = []
        for v in h.vertices:
            choices.append(free_elements(F, {l: f0[l] for l in h.legs(v)}, vertex_bound))
            if not choices[-1]:
                break
        else:
            for pick in product(*choices):
                out.append(OperadMap(h, F, f0, dict(zip(h.vertices, pick))))
    out.sort(key=OperadMap.key)
    return out


def maps_to_operad(g: Graph, P) -> list[OperadMap]:
    """All maps ``𝕄(G) -> P`` for an operad with finite fibers (the nerve at ``G``)."""
    out = []
    for f0 in involutive_maps(g, P.colors):
        choices = [P.fiber({l: f0[l] for l in g.legs(v)}) for v in g.vertices]
        for pick in product(*choices):
            out.append(OperadMap(g, P, f0, dict(zip(g.vertices, pick))))
    return out
