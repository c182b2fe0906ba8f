"""Graph substitution ``G{H_v}`` computed as a quotient of the disjoint union of plugs."""
from __future__ import annotations

from typing import Mapping, NamedTuple

from .errors import BaseHasNoVertices, ColorMismatch, NotBijection
from .graph import Graph, star_of_vertex
from .involutive import skey, sort_atoms


class Substituted(NamedTuple):
    graph: Graph
    arc: dict        # (v, arc of H_v) -> arc of the result
    vertex: dict     # (v, vertex of H_v) -> vertex of the result
    boundary: dict   # boundary arc of the base -> boundary arc of the result
    coloring: dict | None = None


def _check_bijection(v, m, dom, cod):
    if set(m) != set(dom):
        raise NotBijection(f"identification at {v!r} must be defined exactly on {sort_atoms(dom)!r}")
    img = list(m.values())
    if len(set(img)) != len(img) or set(img) != set(cod):
        raise NotBijection(f"identification at {v!r} is not a bijection onto the plug boundary")


def substitute(g: Graph, plugs: Mapping, ms: Mapping, *, base_colors: Mapping | None = None,
               plug_colors: Mapping | None = None, colors=None) -> Substituted:
    """Replace each vertex ``v`` of ``g`` by ``plugs[v]`` glued along ``ms[v]``.

    ``ms[v]`` maps ``i(nbhd(v))`` bijectively onto the plug boundary.  With
    colorings (``plug_colors[v]`` on the plug arcs and ``base_colors`` on
    ``g``) the result carries the induced coloring.
    """
    if not g.vertices:
        raise BaseHasNoVertices("substitution needs a base graph with vertices")
    for v in g.vertices:
        _check_bijection(v, ms[v], g.legs(v), plugs[v].boundary)
        if plug_colors is not None and base_colors is not None:
            for a, b in ms[v].items():
                if base_colors[a] != plug_colors[v][b]:
                    raise ColorMismatch(f"color of {a!r} differs from that of plug arc {b!r}")
    for b in g.boundary:
        if g.i(b) not in g.darts:
            raise BaseHasNoVertices(f"boundary arc {b!r} is not attached to a vertex")

    # keep plug names when they are globally disjoint, else tag by vertex
    arc_names = [a for v in g.vertices for a in plugs[v].arcs]
    vert_names = [w for v in g.vertices for w in plugs[v].vertices]
    tag_arcs = len(set(arc_names)) != len(arc_names)
    tag_verts = len(set(vert_names)) != len(vert_names)

    def an(v, a):
        return (v, a) if tag_arcs else a

    parent: dict = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry

    for v in g.vertices:
        for a in plugs[v].arcs:
            parent[(v, a)] = (v, a)
    for x1, x2 in g.internal_edges():
        u, w = g.t[x1], g.t[x2]
        hu, hw = plugs[u], plugs[w]
        p = (u, ms[u][x2])          # leg of H_u towards w
        q = (w, ms[w][x1])          # leg of H_w towards u
        union(p, (w, hw.i(q[1])))
        union((u, hu.i(p[1])), q)

    classes: dict = {}
    for x in parent:
        classes.setdefault(find(x), []).append(x)
    name_of = {}
    for members in classes.values():
        nm = min((an(v, a) for v, a in members), key=skey)
        for x in members:
            name_of[x] = nm
    inv, t = {}, {}
    vname = {}
    for v in g.vertices:
        for w in plugs[v].vertices:
            vname[(v, w)] = (v, w) if tag_verts else w
    for (v, a), nm in name_of.items():
        inv[nm] = name_of[(v, plugs[v].i(a))]
        if a in plugs[v].darts:
            if nm in t and t[nm] != vname[(v, plugs[v].t[a])]:
                raise ValueError("substitution glued two darts")
            t[nm] = vname[(v, plugs[v].t[a])]
    bmap = {}
    for b in g.boundary:
        v = g.t[g.i(b)]
        bmap[b] = name_of[(v, ms[v][b])]
    res = Graph(inv, t, vname.values(), bmap.values())
    coloring = None
    if plug_colors is not None:
        coloring = {}
        for (v, a), nm in name_of.items():
            c = plug_colors[v][a]
            if coloring.setdefault(nm, c) != c:
                raise ColorMismatch(f"glued arcs carry different colors at {nm!r}")
    return Substituted(res, name_of, vname, bmap, coloring)


def star_plugs(g: Graph):
    """The unit plugs: ``★_v`` at each vertex with its canonical identification."""
    plugs, ms = {}, {}
    for v in g.vertices:
        h, arc_map, _ = star_of_vertex(g, v)
        plugs[v] = h
        back = {b: a for a, b in arc_map.items() if a in h.boundary}
        ms[v] = {leg: back[leg] for leg in g.legs(v)}
    return plugs, ms
