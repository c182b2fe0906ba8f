"""Nerves of modular operads: ``NP_G = csm(𝕄(G), P)``."""
from __future__ import annotations

from ..graph import Graph
from ..graphical import segal_core_data
from ..modops.maps import J, OperadMap, compose_operad_maps, involutive_maps, maps_to_operad
from .presheaf import Presheaf
from .site import JK, TruncatedSite


def nerve(P, g: Graph) -> list[OperadMap]:
    """Direct computation: an involutive ``f0`` and one fiber element per vertex."""
    return sorted(maps_to_operad(g, P), key=OperadMap.key)


def nerve_equalizer(P, g: Graph) -> list[OperadMap]:
    """The same set assembled from the stars of ``g`` glued along internal edges."""
    if not g.vertices:
        return sorted((OperadMap(g, P, f0, {}) for f0 in involutive_maps(g, P.colors)),
                      key=OperadMap.key)
    core = segal_core_data(g)
    stars = {v: (h, iota, maps_to_operad(h, P)) for v, h, iota in core.stars}
    # restriction of each star element to the edges meeting it
    edge_maps = []
    for (x1, x2), maj, mnr in core.edges:
        edge_maps.append((g.t[x1], J(maj), g.t[x2], J(mnr)))
    vs = list(g.vertices)
    pos = {v: k for k, v in enumerate(vs)}
    colour = {}

    def col(ys, v, jm):
        k = (v, id(jm), id(ys))
        if k not in colour:
            colour[k] = compose_operad_maps(ys, jm).f0["e"]
        return colour[k]

    out = []

    def rec(k, picked):
        if k == len(vs):
            out.append(_assemble(g, P, stars, picked))
            return
        v = vs[k]
        for y in stars[v][2]:
            ok = True
            for u, jmaj, w, jmnr in edge_maps:
                if v not in (u, w) or max(pos[u], pos[w]) != k:
                    continue
                yu = y if u == v else picked[u]
                yw = y if w == v else picked[w]
                if col(yu, u, jmaj) != col(yw, w, jmnr):
                    ok = False
                    break
            if ok:
                picked[v] = y
                rec(k + 1, picked)
                del picked[v]

    rec(0, {})
    return sorted(out, key=OperadMap.key)


def _assemble(g, P, stars, picked) -> OperadMap:
    f0, f1 = {}, {}
    for v, y in picked.items():
        h, iota, _ = stars[v]
        for a in h.arcs:
            f0[iota.phi0[a]] = y.f0[a]
        f1[v] = P.relabel(y.f1[v], {a: iota.phi0[a] for a in h.legs(v)})
    return OperadMap(g, P, f0, f1)


class NervePresheaf(Presheaf):
    """``N(P)`` on a site, values indexed ``0..n-1`` in key order; ``elements`` keeps the maps."""

    def __init__(self, P, site: TruncatedSite, values, action, elements, lookup):
        super().__init__(site, values, action, name=f"N({getattr(P, 'name', 'P')})")
        self.operad = P
        self.elements = elements
        self.lookup = lookup

    def index_of(self, y: OperadMap) -> int:
        return self.lookup[self.site.name_of(y.graph)][y.key()]


def nerve_presheaf(P, site: TruncatedSite) -> NervePresheaf:
    """Action by precomposition with ``J(phi)`` (U sites) or the JK map itself."""
    elements, lookup, values = {}, {}, {}
    for n in site.names:
        els = nerve(P, site.objects[n])
        elements[n] = els
        lookup[n] = {y.key(): k for k, y in enumerate(els)}
        values[n] = list(range(len(els)))
    action = {}
    for m in site.morphisms():
        a, b = site.ends(m)
        jm = m if site.mode == JK else J(m, site._free[b])
        action[site.key(m)] = {k: lookup[a][compose_operad_maps(y, jm).key()]
                               for k, y in enumerate(elements[b])}
    return NervePresheaf(P, site, values, action, elements, lookup)
