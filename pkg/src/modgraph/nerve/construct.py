"""The modular operad of a Segal presheaf, and the two roundtrips with the nerve."""
from __future__ import annotations

import random
from typing import NamedTuple

from ..errors import MissingActiveMap, MissingCoreObject, SegalFailure
from ..etale import identity_class, vertex_class
from ..graph import Graph, exceptional_edge, loop_graph, star
from ..graphical import GraphicalMap
from ..involutive import InvolutiveSet, skey, sort_atoms
from ..modops.decorated import DecoratedGraph
from ..modops.maps import J, OperadMap, compose_operad_maps, maps_to_operad
from ..modops.tabulated import TabElem, TabulatedOperad, arrange, profile_of, stabilizer
from .nerve import NervePresheaf, nerve_presheaf
from .presheaf import Presheaf
from .segal import is_segal


def edge_into(g: Graph, a) -> GraphicalMap:
    """``↕ -> g`` sending the major arc to ``a``."""
    return GraphicalMap(exceptional_edge(), g, {"e": a, "e*": g.i(a)}, {})


def star_into(g: Graph, legs, cls) -> GraphicalMap:
    """``★_k -> g`` sending boundary position ``j`` to ``legs[j]`` and the vertex to ``cls``."""
    phi0 = {}
    for j, leg in enumerate(legs):
        phi0[f"{j + 1}*"] = leg
        phi0[str(j + 1)] = g.i(leg)
    return GraphicalMap(star(len(legs)), g, phi0, {"v": cls})


def star_permutation(k: int, sigma) -> GraphicalMap:
    """The automorphism of ``★_k`` moving position ``j`` to ``sigma[j]``."""
    s = star(k)
    return star_into(s, [f"{sigma[j] + 1}*" for j in range(k)], vertex_class(s, "v"))


class SegalOperad(TabulatedOperad):
    """``Ł_X``: fibers are pullbacks of star values over edge values.

    The element ``TabElem(p, x, pos)`` is ``x ∈ X_{★_k}`` read with boundary
    position ``j`` placed at the leg ``pos[j]``.
    """

    def __init__(self, X: Presheaf):
        site = X.site
        self.presheaf = X
        self.site = site
        try:
            self.edge_name = site.locate(exceptional_edge())[0]
        except MissingCoreObject:
            raise MissingCoreObject("the site has no exceptional edge") from None
        edge = site.objects[self.edge_name]
        tau = site.transport(GraphicalMap(edge, edge, {"e": "e*", "e*": "e"}, {}))
        dag = X.act(tau)
        colors = InvolutiveSet({c: dag[c] for c in X.values[self.edge_name]})
        self.star_names = {}
        k = 0
        while site.name_of(star(k)) is not None:
            self.star_names[k] = site.name_of(star(k))
            k += 1
        max_arity = k - 1
        names, act = {}, {}
        self.colors_of = {}
        for k, sn in self.star_names.items():
            emaps = [X.act(site.transport(edge_into(star(k), f"{j + 1}*"))) for j in range(k)]
            for x in X.values[sn]:
                cols = tuple(t[x] for t in emaps)
                self.colors_of[(k, x)] = cols
                if cols == profile_of(cols):
                    names.setdefault(cols, []).append(x)
            for p in list(names):
                if len(p) != k:
                    continue
                act[p] = {}
                for sigma in stabilizer(p):
                    inv = [0] * k
                    for j, i in enumerate(sigma):
                        inv[i] = j
                    t = X.act(site.transport(star_permutation(k, inv)))
                    act[p][sigma] = {x: t[x] for x in names[p]}
        super().__init__(colors, max_arity, names, act, name=f"L({X.name})")
        self._solve_cache: dict = {}
        self.gamma_fn = self._gamma

    # -- γ through the site ---------------------------------------------------
    def _locate(self, k: Graph):
        try:
            return self.site.locate(k)
        except MissingCoreObject:
            raise MissingActiveMap(f"shape {k!r} is not in the site") from None

    def _solve(self, rep, constraints) -> object:
        """The unique ``x ∈ X_rep`` with prescribed restrictions."""
        X = self.presheaf
        keys = tuple(self.site.key(m) for m, _ in constraints)
        ck = (rep, keys)
        if ck not in self._solve_cache:
            tabs = [X.action[k] for k in keys]
            idx: dict = {}
            for x in X.values[rep]:
                idx.setdefault(tuple(t[x] for t in tabs), []).append(x)
            self._solve_cache[ck] = idx
        hits = self._solve_cache[ck].get(tuple(v for _, v in constraints), [])
        if len(hits) != 1:
            raise SegalFailure(f"{len(hits)} elements of X_{rep} restrict to the given data")
        return hits[0]

    def _gamma(self, d: DecoratedGraph):
        X, site = self.presheaf, self.site
        k = d.shape
        prof, pos = arrange(d.xi())
        if not k.vertices and not k.boundary:
            return self._gamma_loop(d)
        rep, _ = self._locate(k)
        if k.vertices:
            cons = []
            for w in k.vertices:
                x = d.deco[w]
                m = site.transport(star_into(k, x.pos, vertex_class(k, w)))
                cons.append((m, x.name))
        else:
            a = k.arcs[0]
            cons = [(site.transport(edge_into(k, a)), d.zeta[a])]
        x = self._solve(rep, cons)
        try:
            alpha = site.transport(star_into(k, [d.f[s] for s in pos], identity_class(k)))
        except MissingCoreObject:
            raise MissingActiveMap(f"no star of arity {len(pos)} in the site") from None
        return TabElem(prof, X.act(alpha)[x], pos)

    def _gamma_loop(self, d: DecoratedGraph):
        """Nodeless loop: the one-vertex loop decorated by a unit."""
        a = d.shape.arcs[0]
        c = d.zeta[a]
        l1 = loop_graph()
        try:
            self.site.locate(l1)
        except MissingCoreObject:
            raise MissingActiveMap("nodeless loops need the one-vertex loop in the site") from None
        x, y = l1.arcs
        zeta = {x: c, y: self.colors.dagger(c)}
        u = self.unit_element({x: zeta[x], y: zeta[y]})
        return self._gamma(DecoratedGraph(l1, zeta, {}, {l1.vertices[0]: u}, self))


def operad_from_segal(X: Presheaf, check: bool = True) -> SegalOperad:
    if check:
        ok, why = is_segal(X)
        if not ok:
            raise SegalFailure(why)
    return SegalOperad(X)


# -- roundtrips ---------------------------------------------------------------

class Report(NamedTuple):
    ok: bool
    checked: int
    witness: str | None = None


def comparison_element(L: SegalOperad, name, x) -> OperadMap:
    """``X_G -> N(Ł_X)_G``: colors from edge restrictions, vertices from star restrictions."""
    X, site = L.presheaf, L.site
    g = site.objects[name]
    f0 = {a: X.act(site.transport(edge_into(g, a)))[x] for a in g.arcs}
    f1 = {}
    for v in g.vertices:
        prof, pos = arrange({l: f0[l] for l in g.legs(v)})
        m = site.transport(star_into(g, pos, vertex_class(g, v)))
        f1[v] = TabElem(prof, X.act(m)[x], pos)
    return OperadMap(g, L, f0, f1)


def roundtrip_presheaf(X: Presheaf, L: SegalOperad | None = None) -> Report:
    """``N(Ł_X)_G ≅ X_G`` at every object, naturally in the site maps."""
    ok, why = is_segal(X)
    if not ok:
        return Report(False, 0, f"input is not Segal: {why}")
    L = L or SegalOperad(X)
    site = X.site
    n = 0
    comp = {}
    for name in site.names:
        g = site.objects[name]
        target = {y.key() for y in maps_to_operad(g, L)}
        imgs = {}
        for x in X.values[name]:
            y = comparison_element(L, name, x)
            k = y.key()
            if k in imgs:
                return Report(False, n, f"{name}: {imgs[k]!r} and {x!r} have the same image")
            imgs[k] = x
            comp[(name, x)] = y
            n += 1
        if set(imgs) != target:
            return Report(False, n, f"{name}: image has {len(imgs)} of {len(target)} nerve elements")
    for m in site.morphisms():
        a, b = site.ends(m)
        jm = J(m, site._free[b])
        t = X.act(m)
        for x in X.values[b]:
            n += 1
            lhs = compose_operad_maps(comp[(b, x)], jm).key()
            if lhs != comp[(a, t[x])].key():
                return Report(False, n, f"naturality fails for a map {a} -> {b} at {x!r}")
    return Report(True, n)


def nerve_star_element(P, NP: NervePresheaf, L: SegalOperad, e: TabElem):
    """An element of ``Ł_{N(P)}`` read back as an element of ``P``."""
    k = len(e.pos)
    y = NP.elements[L.star_names[k]][e.name]
    return P.relabel(y.f1["v"], {f"{j + 1}*": e.pos[j] for j in range(k)})


def roundtrip_operad(P, site, samples: int = 30, seed: int = 0) -> Report:
    """``Ł_{N(P)} ≅ P``: fiberwise bijection and agreement of ``γ`` on site shapes."""
    NP = nerve_presheaf(P, site)
    L = SegalOperad(NP)
    edge = L.edge_name
    col = {}
    for c in L.colors:
        col[c] = NP.elements[edge][c].f0["e"]
    back = {v: c for c, v in col.items()}
    if len(back) != len(col) or set(back) != set(P.colors.elements):
        return Report(False, 0, "colors do not match")
    for c in L.colors:
        if col[L.colors.dagger(c)] != P.colors.dagger(col[c]):
            return Report(False, 0, f"involution differs at {c!r}")
    n = 0
    from itertools import combinations_with_replacement
    for ar in range(L.max_arity + 1):
        for prof in combinations_with_replacement(sorted(P.colors.elements, key=skey), ar):
            xi = {j: c for j, c in enumerate(prof)}
            legs = list(xi)
            want = sorted(P.key(e, legs) for e in P.fiber(xi))
            got = sorted(P.key(nerve_star_element(P, NP, L, e), legs)
                         for e in L.fiber({j: back[c] for j, c in xi.items()}))
            n += 1
            if want != got:
                return Report(False, n, f"fiber over {prof!r}: {len(got)} vs {len(want)}")
    # γ on decorated shapes drawn from the site objects, plus ↕ and the nodeless loop
    rng = random.Random(seed)
    shapes = [g for g in site.objects.values() if len(g.vertices) != 1 or g == loop_graph()]
    from ..graph import nodeless_loop
    shapes.append(nodeless_loop())
    for g in shapes:
        maps = maps_to_operad(g, P)
        rng.shuffle(maps)
        for y in maps[:samples]:
            n += 1
            d = DecoratedGraph(g, y.f0, {b: b for b in g.boundary}, y.f1, P)
            lhs = P.gamma(d)
            dl = _to_segal(d, P, NP, L, back)
            rhs = nerve_star_element(P, NP, L, L.gamma(dl))
            legs = sort_atoms(g.boundary)
            if P.key(lhs, legs) != P.key(rhs, legs):
                return Report(False, n, f"gamma differs on a decoration of {g!r}")
    return Report(True, n)


def _to_segal(d: DecoratedGraph, P, NP, L, back) -> DecoratedGraph:
    k = d.shape
    deco = {}
    for w in k.vertices:
        legs = k.legs(w)
        xi = {l: back[d.zeta[l]] for l in legs}
        x = d.deco[w]
        want = P.key(x, sort_atoms(legs))
        hit = [e for e in L.fiber(xi)
               if P.key(nerve_star_element(P, NP, L, e), sort_atoms(legs)) == want]
        deco[w] = hit[0]
    return DecoratedGraph(k, {a: back[c] for a, c in d.zeta.items()}, d.f, deco, L)


def site_decorations(P, site, limit: int | None = None, seed: int = 0) -> list[DecoratedGraph]:
    """Decorated graphs over ``P`` whose shapes are site objects (optionally sampled)."""
    rng = random.Random(seed)
    out = []
    for g in site.objects.values():
        if not g.vertices:
            continue
        ds = [DecoratedGraph(g, y.f0, {b: b for b in g.boundary}, y.f1, P)
              for y in maps_to_operad(g, P)]
        if limit is not None and len(ds) > limit:
            ds = rng.sample(ds, limit)
        out.extend(ds)
    return out


def check_segal_operad_laws(L: SegalOperad, limit: int | None = None) -> Report:
    """Unit law on all fibers and the heart square on decorations of site shapes."""
    from ..modops.laws import check_heart_square, check_unit_law
    u = check_unit_law(L, L.max_arity)
    if not u.ok:
        return Report(False, u.checked, u.witness)
    h = check_heart_square(L, site_decorations(L, L.site, limit))
    return Report(h.ok, u.checked + h.checked, h.witness)


def comparison_morphism(L: SegalOperad, X: Presheaf, NL: NervePresheaf) -> dict:
    """Components of ``X -> N(Ł)`` at every object of ``X``'s site."""
    return {n: {x: NL.index_of(comparison_element(L, n, x)) for x in X.values[n]}
            for n in X.site.names}
