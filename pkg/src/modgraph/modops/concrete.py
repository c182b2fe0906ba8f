"""Small modular operads with a native structure map."""
from __future__ import annotations

from itertools import combinations
from typing import Mapping

from ..graph import Graph
from ..involutive import InvolutiveSet, make_involutive_set, sort_atoms
from .decorated import Collection, DecoratedGraph


class Operad(Collection):
    """A collection with a structure map ``gamma`` on decorated graphs over itself."""

    name = "operad"

    def gamma(self, d: DecoratedGraph):
        raise NotImplementedError

    def unit_element(self, xi: Mapping):
        """``γ`` of the exceptional edge over a two-element ``xi``."""
        from ..graph import build_graph
        s, t = sort_atoms(xi)
        k = build_graph([("e", "e*")], {}, vertices=[])
        return self.gamma(DecoratedGraph(k, {"e": xi[s], "e*": xi[t]}, {s: "e", t: "e*"}, {}, self))

    def loop_element(self, c):
        from ..graph import nodeless_loop
        k = nodeless_loop()
        return self.gamma(DecoratedGraph(k, {k.arcs[0]: c, k.arcs[1]: self.colors.dagger(c)},
                                         {}, {}, self))


def first_betti(k: Graph) -> int:
    if not k.vertices:
        return 0 if k.boundary else 1
    return len(k.internal_edges()) - len(k.vertices) + 1


def single_color() -> InvolutiveSet:
    return make_involutive_set(["x"], [["x"]])


class TerminalOperad(Operad):
    """One element ``*`` in every fiber."""

    def __init__(self, colors: InvolutiveSet | None = None):
        self.colors = colors or single_color()
        self.name = "terminal"

    def fiber(self, xi):
        return ["*"]

    def gamma(self, d):
        return "*"


class GenusOperad(Operad):
    """Elements of ``Z/m`` in every fiber; ``γ`` adds decorations plus ``g`` times the loop count."""

    def __init__(self, m: int, colors: InvolutiveSet | None = None, g: int = 1):
        self.m, self.g = m, g % m
        self.colors = colors or single_color()
        self.name = f"genus{m}"

    def fiber(self, xi):
        return list(range(self.m))

    def gamma(self, d):
        total = sum(d.deco[w] for w in d.shape.vertices)
        return (total + self.g * first_betti(d.shape)) % self.m


class LinearRelationOperad(Operad):
    """Linear relations over F2: an element of arity ``S`` is a subspace of ``F2^S``.

    Vectors are stored as frozensets (their supports), so a subspace is a
    frozenset of frozensets containing the empty set.  ``γ`` puts one bit on
    every edge, imposes each vertex relation on the bits around it, and
    projects to the boundary.
    """

    def __init__(self, colors: InvolutiveSet | None = None, max_arity: int = 4):
        self.colors = colors or single_color()
        self.max_arity = max_arity
        self.name = "linrel"
        self._sub_cache: dict = {}

    def relabel(self, x, bij):
        return frozenset(frozenset(bij[s] for s in v) for v in x)

    def key(self, x, ordered_legs):
        pos = {s: k for k, s in enumerate(ordered_legs)}
        return tuple(sorted(sum(1 << pos[s] for s in v) for v in x))

    def show(self, x):
        vecs = sorted(sorted(str(s) for s in v) for v in x)
        return "<" + " ".join("{" + ",".join(v) + "}" for v in vecs) + ">"

    def fiber(self, xi):
        legs = sort_atoms(xi)
        n = len(legs)
        if n not in self._sub_cache:
            self._sub_cache[n] = _subspaces(n)
        return [frozenset(frozenset(legs[k] for k in range(n) if m >> k & 1) for m in sp)
                for sp in self._sub_cache[n]]

    def gamma(self, d):
        k = d.shape
        edge_of = {}
        for n, e in enumerate(k.edges()):
            for a in e:
                edge_of[a] = n
        if not k.vertices:
            if not d.f:
                return frozenset([frozenset()])
            s, t = sort_atoms(d.f)
            return frozenset([frozenset(), frozenset([s, t])])
        verts = list(k.vertices)
        out = set()

        def rec(i, bits):
            if i == len(verts):
                vec = frozenset(s for s, b in d.f.items() if bits.get(edge_of[b], 0))
                out.add(vec)
                return
            w = verts[i]
            legs = k.legs(w)
            for v in d.deco[w]:
                nb = dict(bits)
                ok = True
                for leg in legs:
                    bit = 1 if leg in v else 0
                    if nb.setdefault(edge_of[leg], bit) != bit:
                        ok = False
                        break
                if ok:
                    rec(i + 1, nb)

        rec(0, {})
        # edges that no vertex constrains do not exist in connected shapes with vertices
        return frozenset(out)


def _subspaces(n: int) -> list[frozenset]:
    """All subspaces of F2^n as frozensets of bitmasks."""
    found = set()
    vecs = range(1, 1 << n)
    frontier = {frozenset([0])}
    found |= frontier
    while frontier:
        nxt = set()
        for sp in frontier:
            for v in vecs:
                if v in sp:
                    continue
                new = frozenset(sp | {x ^ v for x in sp})
                if new not in found:
                    found.add(new)
                    nxt.add(new)
        frontier = nxt
    return sorted(found, key=lambda s: (len(s), sorted(s)))


__all__ = ["Operad", "TerminalOperad", "GenusOperad", "LinearRelationOperad", "first_betti",
           "single_color", "combinations"]
