"""Finite tabulated operads and biased evaluation by single-edge steps.

Fibers are stored on representative colorings: for a sorted color profile
``p = (c_0, ..., c_{n-1})`` the representative carrier is the positions
``0..n-1``.  An element over arbitrary legs is ``TabElem(p, name, pos)``,
meaning the representative element ``name`` transported along ``k -> pos[k]``.
Two such triples denote the same element iff they differ by a stabilizer
permutation, which :meth:`TabulatedOperad.key` quotients out.
"""
from __future__ import annotations

from itertools import combinations_with_replacement, permutations, product
from typing import Callable, Mapping, NamedTuple

from ..errors import ArityBoundExceeded, FiberMismatch, OrderDependence
from ..graph import build_graph
from ..involutive import InvolutiveSet, atom_str, skey, sort_atoms
from .concrete import Operad
from .decorated import DecoratedGraph


class TabElem(NamedTuple):
    profile: tuple
    name: object
    pos: tuple


def profile_of(colors) -> tuple:
    return tuple(sorted(colors, key=skey))


def stabilizer(profile: tuple) -> list[tuple]:
    """Color-preserving permutations of positions, as tuples ``sigma[k]``."""
    blocks: dict = {}
    for k, c in enumerate(profile):
        blocks.setdefault(c, []).append(k)
    out = []
    keys = list(blocks)
    for choice in product(*(permutations(blocks[c]) for c in keys)):
        sigma = [0] * len(profile)
        for c, img in zip(keys, choice):
            for k, j in zip(blocks[c], img):
                sigma[k] = j
        out.append(tuple(sigma))
    return out


def arrange(xi: Mapping) -> tuple[tuple, tuple]:
    """Sort legs by (color, name): the profile and the position tuple."""
    legs = sorted(xi, key=lambda s: (skey(xi[s]), skey(s)))
    return tuple(xi[s] for s in legs), tuple(legs)


class TabulatedOperad(Operad):
    def __init__(self, colors: InvolutiveSet, max_arity: int, names: Mapping, act: Mapping,
                 unit=None, loop=None, compose=None, contract=None,
                 gamma_fn: Callable | None = None, name: str = "tabulated"):
        self.colors = colors
        self.max_arity = max_arity
        self.names = {p: list(ns) for p, ns in names.items()}
        self.act = act            # profile -> sigma -> {name: name}
        self.unit_table = dict(unit or {})
        self.loop_table = dict(loop or {})
        self.compose_table = dict(compose or {})
        self.contract_table = dict(contract or {})
        self.gamma_fn = gamma_fn
        self.name = name
        self._stab = {p: stabilizer(p) for p in self.names}

    # -- collection interface -------------------------------------------
    def fiber(self, xi: Mapping) -> list:
        p, pos = arrange(xi)
        if p not in self.names:
            if len(p) > self.max_arity:
                raise ArityBoundExceeded(f"arity {len(p)} exceeds the table bound {self.max_arity}")
            return []
        return [TabElem(p, n, pos) for n in self.names[p]]

    def relabel(self, x: TabElem, bij):
        return TabElem(x.profile, x.name, tuple(bij[l] for l in x.pos))

    def normal(self, x: TabElem, ordered_legs=None):
        """Canonical representative of ``x`` relative to an ordering of its legs."""
        order = sort_atoms(x.pos) if ordered_legs is None else list(ordered_legs)
        idx = {l: k for k, l in enumerate(order)}
        best = None
        for sigma in self._stab.get(x.profile) or [tuple(range(len(x.pos)))]:
            inv = [0] * len(sigma)
            for k, j in enumerate(sigma):
                inv[j] = k
            nm = self.act[x.profile][sigma][x.name] if x.profile in self.act else x.name
            pos = tuple(x.pos[inv[j]] for j in range(len(sigma)))
            cand = (tuple(idx[l] for l in pos), skey(nm), nm, pos)
            if best is None or cand[:2] < best[:2]:
                best = cand
        return TabElem(x.profile, best[2], best[3])

    def key(self, x: TabElem, ordered_legs):
        n = self.normal(x, ordered_legs)
        idx = {l: k for k, l in enumerate(ordered_legs)}
        return (x.profile, tuple(idx[l] for l in n.pos), skey(n.name))

    def show(self, x: TabElem):
        legs = ",".join(atom_str(l) for l in x.pos)
        return f"{atom_str(x.name)}({legs})"

    def element(self, xi: Mapping, name) -> TabElem:
        p, pos = arrange(xi)
        return TabElem(p, name, pos)

    # -- structure map ----------------------------------------------------
    def gamma(self, d: DecoratedGraph):
        if self.gamma_fn is not None:
            return self.gamma_fn(d)
        return biased_gamma(self, d)

    def fibers(self):
        """All representative fibers as ``(profile, names)``."""
        return sorted(self.names.items(), key=lambda kv: (len(kv[0]), [skey(c) for c in kv[0]]))


def tabulate(P, max_arity: int, colors: InvolutiveSet | None = None, biased: bool = True,
             name: str | None = None) -> TabulatedOperad:
    """Tabulate an operad with a native ``gamma`` up to ``max_arity``.

    The result evaluates ``γ`` through ``P`` and also carries the biased
    tables (units, loops, two-vertex compositions, contractions).
    """
    colors = colors or P.colors
    cols = list(colors.elements)
    names, act, reps, lookup = {}, {}, {}, {}
    for n in range(max_arity + 1):
        for prof in combinations_with_replacement(sorted(cols, key=skey), n):
            prof = tuple(prof)
            legs = list(range(n))
            elems = P.fiber({k: prof[k] for k in legs})
            reps[prof] = elems
            names[prof] = list(range(len(elems)))
            lookup[prof] = {P.key(e, legs): k for k, e in enumerate(elems)}
            act[prof] = {}
            for sigma in stabilizer(prof):
                table = {}
                for k, e in enumerate(elems):
                    moved = P.relabel(e, {j: sigma[j] for j in legs})
                    table[k] = lookup[prof][P.key(moved, legs)]
                act[prof][sigma] = table
    T = TabulatedOperad(colors, max_arity, names, act, name=name or f"tab({getattr(P, 'name', 'P')})")
    T.source = P
    T.reps = reps
    T.lookup = lookup

    def to_P(x: TabElem):
        return P.relabel(reps[x.profile][x.name], {k: x.pos[k] for k in range(len(x.pos))})

    def from_P(y, xi):
        prof, pos = arrange(xi)
        if prof not in lookup:
            raise ArityBoundExceeded(f"arity {len(prof)} exceeds the table bound {max_arity}")
        moved = P.relabel(y, {l: k for k, l in enumerate(pos)})
        k = lookup[prof].get(P.key(moved, list(range(len(pos)))))
        if k is None:
            raise FiberMismatch("value outside the tabulated fiber")
        return TabElem(prof, k, pos)

    T.to_source = to_P
    T.from_source = from_P

    def gamma_fn(d: DecoratedGraph):
        dd = d.with_decorations({w: to_P(x) for w, x in d.deco.items()}, P)
        return from_P(P.gamma(dd), d.xi())

    T.gamma_fn = gamma_fn
    if biased:
        fill_biased_tables(T, gamma_fn)
    return T


def _two_vertex(prof1, n1, k1, prof2, n2, k2, T):
    """Decorated shape: x at vertex 'x' and y at vertex 'y' joined along legs k1 and k2."""
    arcs, inc, zeta = [], {}, {}
    legs_x = {}
    for j, c in enumerate(prof1):
        if j == k1:
            continue
        arcs.append((("x", j), ("dx", j)))
        inc[("dx", j)] = "x"
        zeta[("x", j)] = c
        zeta[("dx", j)] = T.colors.dagger(c)
        legs_x[j] = ("x", j)
    legs_y = {}
    for j, c in enumerate(prof2):
        if j == k2:
            continue
        arcs.append((("y", j), ("dy", j)))
        inc[("dy", j)] = "y"
        zeta[("y", j)] = c
        zeta[("dy", j)] = T.colors.dagger(c)
        legs_y[j] = ("y", j)
    # the joining edge: leg k1 of x is the dart at y, leg k2 of y is the dart at x
    arcs.append((("dx", k1), ("dy", k2)))
    inc[("dx", k1)] = "x"
    inc[("dy", k2)] = "y"
    zeta[("dy", k2)] = prof1[k1]
    zeta[("dx", k1)] = prof2[k2]
    legs_x[k1] = ("dy", k2)
    legs_y[k2] = ("dx", k1)
    k = build_graph(arcs, inc, vertices=["x", "y"])
    f = {b: b for b in k.boundary}
    deco = {"x": TabElem(prof1, n1, tuple(legs_x[j] for j in range(len(prof1)))),
            "y": TabElem(prof2, n2, tuple(legs_y[j] for j in range(len(prof2))))}
    return DecoratedGraph(k, zeta, f, deco, T)


def _one_vertex(prof, n, k1, k2, T):
    arcs, inc, zeta, legs = [], {}, {}, {}
    for j, c in enumerate(prof):
        if j in (k1, k2):
            continue
        arcs.append((("x", j), ("dx", j)))
        inc[("dx", j)] = "x"
        zeta[("x", j)] = c
        zeta[("dx", j)] = T.colors.dagger(c)
        legs[j] = ("x", j)
    arcs.append((("dx", k1), ("dx", k2)))
    inc[("dx", k1)] = inc[("dx", k2)] = "x"
    zeta[("dx", k2)] = prof[k1]
    zeta[("dx", k1)] = prof[k2]
    legs[k1] = ("dx", k2)
    legs[k2] = ("dx", k1)
    k = build_graph(arcs, inc, vertices=["x"])
    deco = {"x": TabElem(prof, n, tuple(legs[j] for j in range(len(prof))))}
    return DecoratedGraph(k, zeta, {b: b for b in k.boundary}, deco, T)


def fill_biased_tables(T: TabulatedOperad, gamma_fn: Callable):
    C = T.colors
    for c in C.elements:
        k = build_graph([("e", "e*")], {}, vertices=[])
        d = DecoratedGraph(k, {"e": c, "e*": C.dagger(c)}, {0: "e", 1: "e*"}, {}, T)
        T.unit_table[c] = gamma_fn(d)
        lp = build_graph([("l", "l*")], {}, vertices=[], boundary=[])
        T.loop_table[c] = gamma_fn(DecoratedGraph(lp, {"l": c, "l*": C.dagger(c)}, {}, {}, T))
    profs = list(T.names)
    for p1 in profs:
        for p2 in profs:
            if len(p1) + len(p2) - 2 > T.max_arity:
                continue
            for k1, c in enumerate(p1):
                for k2, c2 in enumerate(p2):
                    if c2 != C.dagger(c):
                        continue
                    for n1 in T.names[p1]:
                        for n2 in T.names[p2]:
                            d = _two_vertex(p1, n1, k1, p2, n2, k2, T)
                            T.compose_table[(p1, n1, k1, p2, n2, k2)] = gamma_fn(d)
    for p in profs:
        for k1 in range(len(p)):
            for k2 in range(len(p)):
                if k1 == k2 or p[k2] != C.dagger(p[k1]):
                    continue
                for n in T.names[p]:
                    T.contract_table[(p, n, k1, k2)] = gamma_fn(_one_vertex(p, n, k1, k2, T))


# -- biased evaluation -------------------------------------------------------

def _compose_step(T, x: TabElem, leg_x, y: TabElem, leg_y) -> TabElem:
    k1, k2 = x.pos.index(leg_x), y.pos.index(leg_y)
    key = (x.profile, x.name, k1, y.profile, y.name, k2)
    if key not in T.compose_table:
        if len(x.pos) + len(y.pos) - 2 > T.max_arity:
            raise ArityBoundExceeded("composite exceeds the table arity")
        raise FiberMismatch(f"no composition entry for {key!r}")
    r = T.compose_table[key]
    ren = {}
    for j, l in enumerate(x.pos):
        ren[("x", j)] = l
    for j, l in enumerate(y.pos):
        ren[("y", j)] = l
    return TabElem(r.profile, r.name, tuple(ren[l] for l in r.pos))


def _contract_step(T, x: TabElem, leg_a, leg_b) -> TabElem:
    k1, k2 = x.pos.index(leg_a), x.pos.index(leg_b)
    key = (x.profile, x.name, k1, k2)
    if key not in T.contract_table:
        raise FiberMismatch(f"no contraction entry for {key!r}")
    r = T.contract_table[key]
    ren = {("x", j): l for j, l in enumerate(x.pos)}
    return TabElem(r.profile, r.name, tuple(ren[l] for l in r.pos))


def _evaluate(T, d: DecoratedGraph, order) -> TabElem | None:
    k = d.shape
    blob = {w: w for w in k.vertices}
    val = {w: d.deco[w] for w in k.vertices}

    def find(w):
        while blob[w] != w:
            w = blob[w]
        return w

    for x1, x2 in order:
        u, w = find(k.t[x1]), find(k.t[x2])
        # the edge is leg x2 of u's blob and leg x1 of w's blob
        if u != w:
            if len(val[u].pos) + len(val[w].pos) - 2 > T.max_arity:
                return None
            val[u] = _compose_step(T, val[u], x2, val[w], x1)
            blob[w] = u
            del val[w]
        else:
            val[u] = _contract_step(T, val[u], x2, x1)
    (root,) = {find(w) for w in k.vertices}
    res = val[root]
    inv_f = {b: s for s, b in d.f.items()}
    return TabElem(res.profile, res.name, tuple(inv_f[b] for b in res.pos))


def biased_gamma(T: TabulatedOperad, d: DecoratedGraph, all_orders: bool = False,
                 max_orders: int = 720):
    """Evaluate ``γ`` by iterated single-edge composition and contraction.

    With ``all_orders`` every feasible ordering of the internal edges is
    tried and disagreement raises :class:`OrderDependence`.
    """
    k = d.shape
    if not k.vertices:
        a = k.arcs[0]
        if not k.boundary:
            c = min(d.zeta[a], d.zeta[k.i(a)], key=skey)
            return T.loop_table[c]
        inv_f = {b: s for s, b in d.f.items()}
        u = T.unit_table[d.zeta[a]]
        legs = {0: inv_f[a], 1: inv_f[k.i(a)]}
        return TabElem(u.profile, u.name, tuple(legs[l] for l in u.pos))
    edges = k.internal_edges()
    results = []
    for n, order in enumerate(permutations(edges)):
        if n >= max_orders:
            break
        r = _evaluate(T, d, order)
        if r is None:
            continue
        results.append((order, r))
        if not all_orders:
            break
    if not results:
        raise ArityBoundExceeded("no contraction order stays within the table arity")
    legs = sort_atoms(d.f)
    first = T.key(results[0][1], legs)
    for order, r in results[1:]:
        if T.key(r, legs) != first:
            raise OrderDependence(f"contraction orders {results[0][0]!r} and {order!r} disagree")
    return results[0][1]


def gamma_orders(T: TabulatedOperad, d: DecoratedGraph) -> list:
    """Keys of the values of every feasible contraction order (for diagnostics)."""
    legs = sort_atoms(d.f)
    out = []
    for order in permutations(d.shape.internal_edges()):
        r = _evaluate(T, d, order)
        if r is not None:
            out.append(T.key(r, legs))
    return out


# -- reindexing --------------------------------------------------------------

class ReindexedOperad(Operad):
    """``f*P``: fibers ``P(S, f∘xi)`` with ``γ`` computed after recoloring."""

    def __init__(self, f0: Mapping, colors: InvolutiveSet, P):
        for c in colors.elements:
            if f0[colors.dagger(c)] != P.colors.dagger(f0[c]):
                raise FiberMismatch("color map is not involutive")
        self.f0, self.colors, self.P = dict(f0), colors, P
        self.name = f"reindex({getattr(P, 'name', 'P')})"

    def fiber(self, xi):
        return self.P.fiber({s: self.f0[c] for s, c in xi.items()})

    def relabel(self, x, bij):
        return self.P.relabel(x, bij)

    def key(self, x, legs):
        return self.P.key(x, legs)

    def show(self, x):
        return self.P.show(x)

    def gamma(self, d):
        return self.P.gamma(d.recolor(self.f0, self.P))


def reindex(f0: Mapping, colors: InvolutiveSet, P) -> ReindexedOperad:
    return ReindexedOperad(f0, colors, P)
