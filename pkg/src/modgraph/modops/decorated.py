"""Decorated graphs and the free-graph monad ``T``.

A decorated graph is a connected colored graph ``(K, zeta)`` with a boundary
identification ``f: S -> ∂K`` and an element of the ambient collection at
every vertex, living on the legs ``i(nbhd(w))`` of that vertex.
"""
from __future__ import annotations

from itertools import combinations_with_replacement
from typing import Mapping

from ..canon import canonical_code, isomorphisms
from ..errors import ColorMismatch, FiberMismatch
from ..graph import Graph, build_graph, star_of
from ..involutive import (ColoredObject, InvolutiveSet, atom_str, bij_morphisms,
                          formal_daggers, involutive_extension, skey, sort_atoms)
from ..substitution import substitute


class Collection:
    """A symmetric collection over an involutive color set.

    Subclasses override ``relabel`` (transport along a bijection of legs),
    ``key`` (a comparable code of an element relative to an ordering of its
    legs) and optionally ``fiber``.
    """

    colors: InvolutiveSet

    def relabel(self, x, bij: Mapping):
        return x

    def key(self, x, ordered_legs):
        return skey(x)

    def equal(self, x, y, legs) -> bool:
        legs = sort_atoms(legs)
        return self.key(x, legs) == self.key(y, legs)

    def fiber(self, xi: Mapping) -> list:
        raise NotImplementedError

    def show(self, x) -> str:
        return atom_str(x)


class DecoratedGraph:
    __slots__ = ("shape", "zeta", "f", "deco", "coll", "_code")

    def __init__(self, shape: Graph, zeta: Mapping, f: Mapping, deco: Mapping, coll: Collection):
        self.shape, self.zeta, self.f = shape, dict(zeta), dict(f)
        self.deco, self.coll = dict(deco), coll
        self._code = None

    @property
    def S(self) -> tuple:
        return tuple(sort_atoms(self.f))

    def xi(self) -> dict:
        return {s: self.zeta[b] for s, b in self.f.items()}

    def n_vertices(self) -> int:
        return len(self.shape.vertices)

    def check(self) -> "DecoratedGraph":
        k, z = self.shape, self.zeta
        if not k.is_connected():
            raise FiberMismatch("decorated shapes must be connected")
        for a in k.arcs:
            if z[k.i(a)] != self.coll.colors.dagger(z[a]):
                raise ColorMismatch(f"coloring is not involutive at {a!r}")
        img = list(self.f.values())
        if len(set(img)) != len(img) or set(img) != set(k.boundary):
            raise FiberMismatch("leg identification is not a bijection onto the boundary")
        if set(self.deco) != set(k.vertices):
            raise FiberMismatch("every vertex needs a decoration")
        return self

    def code(self, ordered_legs=None):
        """Canonical code; with ``ordered_legs`` pins are positions in that list."""
        if ordered_legs is None:
            if self._code is None:
                self._code = self._compute(sort_atoms(self.f))
            return self._code
        return self._compute(list(ordered_legs))

    def _compute(self, order):
        pos = {s: k for k, s in enumerate(order)}
        inv_f = {b: pos[s] for s, b in self.f.items()}
        coll, deco = self.coll, self.deco
        return (len(order), canonical_code(self.shape, color=self.zeta.__getitem__,
                                           pin=inv_f.__getitem__,
                                           vertex_key=lambda w, legs: coll.key(deco[w], legs)))

    def relabel_legs(self, bij: Mapping) -> "DecoratedGraph":
        return DecoratedGraph(self.shape, self.zeta, {bij[s]: b for s, b in self.f.items()},
                              self.deco, self.coll)

    def recolor(self, f0: Mapping, coll: Collection | None = None) -> "DecoratedGraph":
        return DecoratedGraph(self.shape, {a: f0[c] for a, c in self.zeta.items()}, self.f,
                              self.deco, coll or self.coll)

    def with_decorations(self, deco: Mapping, coll: Collection) -> "DecoratedGraph":
        return DecoratedGraph(self.shape, self.zeta, self.f, deco, coll)

    def _eqkey(self):
        xi = self.xi()
        return (tuple((skey(s), skey(xi[s])) for s in self.S), self.code())

    def __eq__(self, other):
        return isinstance(other, DecoratedGraph) and self._eqkey() == other._eqkey()

    def __hash__(self):
        return hash(self._eqkey())

    def text(self) -> str:
        k = self.shape
        parts = ["shape: " + " ; ".join(f"{atom_str(a)}:{atom_str(self.zeta[a])} "
                                        f"{atom_str(b)}:{atom_str(self.zeta[b])}"
                                        for a, b in k.edges())]
        for w in k.vertices:
            legs = " ".join(atom_str(x) for x in k.legs(w))
            parts.append(f"  {atom_str(w)} [{legs}] = {self.coll.show(self.deco[w])}")
        parts.append("  legs: " + ", ".join(f"{atom_str(s)}->{atom_str(self.f[s])}" for s in self.S))
        return "\n".join(parts)

    def __repr__(self):
        return (f"<Decorated |V|={len(self.shape.vertices)} S="
                f"{','.join(atom_str(s) for s in self.S)}>")


def decorated_equal(d1: DecoratedGraph, d2: DecoratedGraph) -> bool:
    return d1 == d2


def decorated_isos(d1: DecoratedGraph, d2: DecoratedGraph) -> list:
    """Explicit isomorphisms of decorated graphs (search; independent of canonical codes)."""
    if set(d1.f) != set(d2.f) or d1.xi() != d2.xi():
        return []
    fixed = {d1.f[s]: d2.f[s] for s in d1.f}
    coll = d1.coll

    def final_ok(iso):
        for w in d1.shape.vertices:
            legs = d1.shape.legs(w)
            moved = coll.relabel(d1.deco[w], {a: iso.arcs[a] for a in legs})
            if not coll.equal(moved, d2.deco[iso.vertices[w]], [iso.arcs[a] for a in legs]):
                return False
        return True

    return isomorphisms(d1.shape, d2.shape, arc_ok=lambda a, b: d1.zeta[a] == d2.zeta[b],
                        fixed=fixed, final_ok=final_ok)


# -- the monad -------------------------------------------------------------

def monad_unit(x, xi: Mapping, coll: Collection) -> DecoratedGraph:
    """``η``: the star ``★_S`` colored by the involutive extension of ``xi``, decorated by ``x``."""
    S = sort_atoms(xi)
    star = star_of(S, vertex="v")
    zeta = involutive_extension(xi, coll.colors, formal_daggers(S))
    return DecoratedGraph(star, zeta, {s: s for s in S}, {"v": x}, coll)


class FreeCollection(Collection):
    """``T X``: decorated graphs over ``X``; an operad with ``γ = μ``."""

    def __init__(self, base: Collection):
        self.base = base
        self.colors = base.colors

    def relabel(self, d, bij):
        return d.relabel_legs(bij)

    def key(self, d, ordered_legs):
        return d.code(ordered_legs)

    def show(self, d):
        return "{" + d.text().replace("\n", " |") + "}"

    def unit(self, x, xi):
        return monad_unit(x, xi, self.base)

    def gamma(self, d: DecoratedGraph) -> DecoratedGraph:
        return monad_mult(d)


def monad_mult(d: DecoratedGraph) -> DecoratedGraph:
    """``μ``: substitute the inner shapes into the outer one."""
    outer = d.shape
    if not isinstance(d.coll, FreeCollection):
        raise FiberMismatch("multiplication needs decorations that are decorated graphs")
    base = d.coll.base
    if not outer.vertices:
        return DecoratedGraph(outer, d.zeta, d.f, {}, base)
    plugs, ms, pcol = {}, {}, {}
    for w in outer.vertices:
        inner = d.deco[w]
        plugs[w] = inner.shape
        ms[w] = dict(inner.f)
        pcol[w] = inner.zeta
        if set(inner.f) != set(outer.legs(w)):
            raise FiberMismatch(f"decoration at {w!r} does not live on the legs of {w!r}")
    sub = substitute(outer, plugs, ms, base_colors=d.zeta, plug_colors=pcol)
    deco = {}
    for (w, u), nm in sub.vertex.items():
        inner = d.deco[w]
        bij = {a: sub.arc[(w, a)] for a in inner.shape.legs(u)}
        deco[nm] = base.relabel(inner.deco[u], bij)
    f = {s: sub.boundary[b] for s, b in d.f.items()}
    return DecoratedGraph(sub.graph, sub.coloring, f, deco, base)


def monad_T(d: DecoratedGraph, fn, coll: Collection) -> DecoratedGraph:
    """Apply ``fn(x, legs)`` to every decoration (functoriality of ``T``)."""
    k = d.shape
    return DecoratedGraph(k, d.zeta, d.f, {w: fn(d.deco[w], k.legs(w)) for w in k.vertices}, coll)


def eta_at_vertices(d: DecoratedGraph) -> DecoratedGraph:
    """``T η``: replace every decoration by its unit star."""
    fc = FreeCollection(d.coll)
    return monad_T(d, lambda x, legs: monad_unit(x, {a: d.zeta[a] for a in legs}, d.coll), fc)


def eta_outside(d: DecoratedGraph) -> DecoratedGraph:
    """``η T``: the star decorated by ``d`` itself."""
    return monad_unit(d, d.xi(), FreeCollection(d.coll))


# -- enumeration -----------------------------------------------------------

def enumerate_decorated(types: list, xi: Mapping, max_weight: int, coll: Collection,
                        include_vertexless: bool = True, vertexless_colors=None) -> list:
    """All decorated graphs over ``xi`` built from vertex ``types`` up to isomorphism.

    ``types`` holds tuples ``(element, legs, leg_colors, weight)``; a vertex of
    that type carries ``element`` transported to its own legs.  Shapes use
    types of total weight ``<= max_weight``.
    """
    colors = coll.colors
    S = sort_atoms(xi)
    want = sorted((skey(xi[s]) for s in S))
    seen, out = set(), []

    def emit(d):
        if d not in seen:
            seen.add(d)
            out.append(d)

    if include_vertexless:
        pool = colors.elements if vertexless_colors is None else vertexless_colors
        if len(S) == 2:
            s, t = S
            for c in pool:
                if xi[s] == c and xi[t] == colors.dagger(c):
                    k = build_graph([("e", "e*")], {}, vertices=[])
                    emit(DecoratedGraph(k, {"e": c, "e*": colors.dagger(c)}, {s: "e", t: "e*"},
                                        {}, coll))
        if not S:
            for c in pool:
                k = build_graph([("l", "l*")], {}, vertices=[], boundary=[])
                emit(DecoratedGraph(k, {"l": c, "l*": colors.dagger(c)}, {}, {}, coll))

    idx = list(range(len(types)))
    for n in range(1, max_weight + 1):
        for combo in combinations_with_replacement(idx, n):
            if sum(types[t][3] for t in combo) > max_weight:
                continue
            slots = []
            for k, t in enumerate(combo):
                _, legs, lc, _ = types[t]
                for j, l in enumerate(legs):
                    slots.append((k, j, l, lc[l]))
            extra = len(slots) - len(S)
            if extra < 0 or extra % 2:
                continue
            for pairs in _matchings(slots, colors, extra // 2):
                matched = {p for pr in pairs for p in pr}
                free = [p for p in range(len(slots)) if p not in matched]
                if sorted(skey(slots[p][3]) for p in free) != want:
                    continue
                for d in _build(combo, types, slots, pairs, free, xi, coll):
                    emit(d)
    out.sort(key=lambda d: (len(d.shape.vertices), d.code()))
    return out


def _matchings(slots, colors, npairs):
    """Sets of ``npairs`` disjoint slot pairs whose leg colors are mutually daggered."""
    n = len(slots)

    def rec(start, used, acc):
        if len(acc) == npairs:
            yield list(acc)
            return
        for p in range(start, n):
            if p in used:
                continue
            # p is either left free or matched with a later slot
            for q in range(p + 1, n):
                if q in used or slots[q][3] != colors.dagger(slots[p][3]):
                    continue
                acc.append((p, q))
                yield from rec(p + 1, used | {p, q}, acc)
                acc.pop()
        return

    yield from rec(0, frozenset(), [])


def _build(combo, types, slots, pairs, free, xi, coll):
    dname = [f"d{k}.{j}" for k, j, _, _ in slots]
    bname = [f"b{k}.{j}" for k, j, _, _ in slots]
    arc_pairs, incidence, zeta = [], {}, {}
    partner = {}
    for p, q in pairs:
        arc_pairs.append((dname[p], dname[q]))
        partner[p], partner[q] = dname[q], dname[p]
    for p in free:
        arc_pairs.append((dname[p], bname[p]))
        partner[p] = bname[p]
    for p, (k, j, l, c) in enumerate(slots):
        incidence[dname[p]] = f"w{k}"
        zeta[partner[p]] = c
        zeta[dname[p]] = coll.colors.dagger(c)
    verts = [f"w{k}" for k in range(len(combo))]
    shape = build_graph(arc_pairs, incidence, vertices=verts)
    if not shape.is_connected():
        return
    deco = {}
    for k, t in enumerate(combo):
        x, legs, _, _ = types[t]
        bij = {}
        for p, (kk, j, l, c) in enumerate(slots):
            if kk == k:
                bij[l] = partner[p]
        deco[f"w{k}"] = coll.relabel(x, bij)
    bd = ColoredObject({bname[p]: slots[p][3] for p in free})
    for g in bij_morphisms(ColoredObject(xi), bd):
        yield DecoratedGraph(shape, zeta, g, deco, coll)
