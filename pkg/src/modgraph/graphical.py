"""Graphical maps: validation, composition, hom-sets, active maps and factorization."""
from __future__ import annotations

from itertools import permutations
from typing import Mapping, NamedTuple

from .errors import (BoundaryMismatch, CollapseViolation, NoVertices, NotComposable,
                     NotInvolutive, VertexDoubleCover)
from .etale import (EmbeddingClass, EtaleMap, check_etale, embedding_class, enumerate_embeddings,
                    identity_class, representative, vertex_class)
from .graph import Graph, exceptional_edge, star_of, star_of_vertex
from .involutive import atom_str, formal_daggers, skey, sort_atoms
from .substitution import substitute

STRICT, EXTENDED = "strict", "extended"


class GraphicalMap:
    __slots__ = ("source", "target", "phi0", "phi1", "mode")

    def __init__(self, source: Graph, target: Graph, phi0: Mapping, phi1: Mapping, mode=STRICT):
        self.source, self.target = source, target
        self.phi0, self.phi1 = dict(phi0), dict(phi1)
        self.mode = mode

    def key(self):
        return (tuple((skey(a), skey(self.phi0[a])) for a in self.source.arcs),
                tuple((skey(v), tuple(_rec_key(self.phi1[v]))) for v in self.source.vertices))

    def __eq__(self, other):
        return (isinstance(other, GraphicalMap) and self.source == other.source
                and self.target == other.target and self.key() == other.key())

    def __hash__(self):
        return hash(self.key())

    def text(self, name="f", src="G", tgt="H") -> str:
        lines = [f"map {name} : {src} -> {tgt}",
                 "phi0: " + ", ".join(f"{atom_str(a)} -> {atom_str(self.phi0[a])}"
                                      for a in self.source.arcs)]
        for v in self.source.vertices:
            lines.append(f"phi1 {atom_str(v)}: {self.phi1[v].text()}")
        return "\n".join(lines)

    def __repr__(self):
        return f"<GraphicalMap {self.source!r} -> {self.target!r}>"


def _rec_key(c: EmbeddingClass):
    return [tuple(skey(x) for x in sort_atoms(s)) for s in (c.W, c.B, c.bd)]


def make_graphical_map(source: Graph, target: Graph, phi0: Mapping, phi1: Mapping,
                       mode=STRICT) -> GraphicalMap:
    if mode == STRICT:
        for g in (source, target):
            if not g.is_connected() or not g.is_safe():
                raise CollapseViolation("strict maps need connected safe graphs")
    elif not source.is_connected() or not target.is_connected():
        raise CollapseViolation("graphs must be connected")
    if set(phi0) != set(source.arcs) or any(b not in target.inv for b in phi0.values()):
        raise NotInvolutive("phi0 must be total into the target arcs")
    for a in source.arcs:
        if phi0[source.i(a)] != target.i(phi0[a]):
            raise NotInvolutive(f"phi0 does not commute with the involution at {a!r}")
    if set(phi1) != set(source.vertices):
        raise BoundaryMismatch("phi1 must be defined on every vertex")
    seen: dict = {}
    for v in source.vertices:
        c = phi1[v]
        if c.target != target:
            raise BoundaryMismatch(f"class at {v!r} is not over the target")
        for w in c.W:
            if w in seen:
                raise VertexDoubleCover(f"vertex {w!r} is covered by both {seen[w]!r} and {v!r}")
            seen[w] = v
        img = [phi0[a] for a in source.legs(v)]
        if len(set(img)) != len(img) or set(img) != set(c.bd):
            raise BoundaryMismatch(f"phi0 on i(nbhd({v!r})) is not a bijection onto the class "
                                   "boundary")
    if not source.boundary:
        all_edges = all(phi1[v].is_edge() for v in source.vertices)
        if mode == STRICT:
            if source.vertices and all_edges:
                raise CollapseViolation("closed source with every vertex sent to an edge")
        elif all_edges and not target.is_nodeless_loop():
            raise CollapseViolation("closed source collapses onto edges but target is not "
                                    "a nodeless loop")
    return GraphicalMap(source, target, phi0, phi1, mode)


def identity(g: Graph, mode=STRICT) -> GraphicalMap:
    return GraphicalMap(g, g, {a: a for a in g.arcs}, {v: vertex_class(g, v) for v in g.vertices},
                        mode)


def map_of_embedding(f: EtaleMap, mode=STRICT) -> GraphicalMap:
    """The graphical map induced by an embedding: vertices go to their stars."""
    return GraphicalMap(f.source, f.target, f.arcs,
                        {v: vertex_class(f.target, f.vertices[v]) for v in f.source.vertices}, mode)


def map_of_iso(g: Graph, h: Graph, arcs: Mapping, vertices: Mapping, mode=STRICT) -> GraphicalMap:
    return GraphicalMap(g, h, arcs, {v: vertex_class(h, vertices[v]) for v in g.vertices}, mode)


def _assemble(psi: GraphicalMap, c: EmbeddingClass) -> EmbeddingClass:
    """Class of ``K{H_w} -> G''`` for a representative ``K`` of ``c``."""
    k, am, vm = representative(c)
    g2 = psi.target
    if not k.vertices:
        f = EtaleMap(k, g2, {a: psi.phi0[am[a]] for a in k.arcs}, {})
        return embedding_class(f)
    plugs, ms, reps = {}, {}, {}
    for w in k.vertices:
        h, hm, hv = representative(psi.phi1[vm[w]])
        back = {hm[b]: b for b in h.boundary}
        plugs[w], reps[w] = h, (hm, hv)
        ms[w] = {leg: back[psi.phi0[am[leg]]] for leg in k.legs(w)}
    sub = substitute(k, plugs, ms)
    arcs, verts = {}, {}
    for (w, a), nm in sub.arc.items():
        arcs[nm] = reps[w][0][a]
    for (w, u), nm in sub.vertex.items():
        verts[nm] = reps[w][1][u]
    f = check_etale(sub.graph, g2, arcs, verts)
    return embedding_class(f)


def compose(psi: GraphicalMap, phi: GraphicalMap) -> GraphicalMap:
    """``psi ∘ phi``."""
    if phi.target != psi.source:
        raise NotComposable("middle objects differ")
    phi0 = {a: psi.phi0[b] for a, b in phi.phi0.items()}
    phi1 = {v: _assemble(psi, phi.phi1[v]) for v in phi.source.vertices}
    mode = EXTENDED if EXTENDED in (phi.mode, psi.mode) else STRICT
    return GraphicalMap(phi.source, psi.target, phi0, phi1, mode)


def compose_by_records(psi: GraphicalMap, phi: GraphicalMap) -> GraphicalMap:
    """Composite computed from image records only (independent of substitution)."""
    g2 = psi.target
    phi0 = {a: psi.phi0[b] for a, b in phi.phi0.items()}
    phi1 = {}
    for v in phi.source.vertices:
        c = phi.phi1[v]
        bd = {psi.phi0[b] for b in c.bd}
        W = set()
        for w in c.W:
            W |= psi.phi1[w].W
        if W:
            nb = {d for u in W for d in g2.nbhd(u)}
            phi1[v] = EmbeddingClass(g2, W, nb | {g2.i(d) for d in nb}, bd)
        elif bd:
            phi1[v] = EmbeddingClass(g2, (), bd, bd)
        else:
            phi1[v] = EmbeddingClass(g2, (), g2.arcs, ())
    mode = EXTENDED if EXTENDED in (phi.mode, psi.mode) else STRICT
    return GraphicalMap(phi.source, g2, phi0, phi1, mode)


def validate_map(phi: GraphicalMap) -> GraphicalMap:
    return make_graphical_map(phi.source, phi.target, phi.phi0, phi.phi1, phi.mode)


def homset(g: Graph, h: Graph, mode=STRICT) -> list[GraphicalMap]:
    """All graphical maps ``g -> h``, sorted."""
    out = []
    if not g.vertices:
        if g.is_nodeless_loop() and not h.is_nodeless_loop():
            return out
        a = g.arcs[0]
        for b in h.arcs:
            phi0 = {a: b, g.i(a): h.i(b)}
            try:
                out.append(make_graphical_map(g, h, phi0, {}, mode))
            except (CollapseViolation, NotInvolutive, BoundaryMismatch, VertexDoubleCover):
                pass
        out.sort(key=GraphicalMap.key)
        return out
    classes = enumerate_embeddings(h)
    vs = list(g.vertices)

    def assign(k, used, phi1, phi0):
        if k == len(vs):
            yield dict(phi0), dict(phi1)
            return
        v = vs[k]
        legs = g.legs(v)
        for c in classes:
            if len(c.bd) != len(legs) or (c.W & used):
                continue
            for perm in permutations(sort_atoms(c.bd)):
                p0 = dict(phi0)
                good = True
                for leg, b in zip(legs, perm):
                    for x, y in ((leg, b), (g.i(leg), h.i(b))):
                        if p0.setdefault(x, y) != y:
                            good = False
                            break
                    if not good:
                        break
                if good:
                    phi1[v] = c
                    yield from assign(k + 1, used | c.W, phi1, p0)
                    del phi1[v]

    for phi0, phi1 in assign(0, frozenset(), {}, {}):
        if set(phi0) != set(g.arcs):
            continue
        try:
            out.append(make_graphical_map(g, h, phi0, phi1, mode))
        except CollapseViolation:
            pass
    out.sort(key=GraphicalMap.key)
    return out


def is_active(phi: GraphicalMap) -> bool:
    img = [phi.phi0[b] for b in phi.source.boundary]
    return len(set(img)) == len(img) and set(img) == set(phi.target.boundary)


def star_active(g: Graph, S, xi: Mapping | None = None, mode=STRICT) -> GraphicalMap:
    """The active map ``★_S -> g`` determined by a bijection ``xi: S -> ∂(g)``."""
    S = sort_atoms(S)
    if xi is None:
        xi = {s: s for s in S}
    star = star_of(S)
    dag = formal_daggers(S)
    phi0 = {}
    for s in S:
        phi0[s] = xi[s]
        phi0[dag[s]] = g.i(xi[s])
    return make_graphical_map(star, g, phi0, {"v": identity_class(g)}, mode)


def canonical_active(g: Graph, mode=STRICT) -> GraphicalMap:
    return star_active(g, g.boundary, None, mode)


class Factorization(NamedTuple):
    middle: Graph
    active: GraphicalMap
    embedding: GraphicalMap


def factorize(phi: GraphicalMap) -> Factorization:
    """``phi = embedding ∘ active`` through ``G{K_v}``."""
    g, g1 = phi.source, phi.target
    if not g.vertices:
        # vertexless sources: the map is already an embedding of an edge/loop
        m = g
        act = identity(g, phi.mode)
        return Factorization(m, act, phi)
    plugs, ms, reps = {}, {}, {}
    for v in g.vertices:
        k, am, vm = representative(phi.phi1[v])
        back = {am[b]: b for b in k.boundary}
        plugs[v], reps[v] = k, (am, vm)
        ms[v] = {leg: back[phi.phi0[leg]] for leg in g.legs(v)}
    sub = substitute(g, plugs, ms)
    m = sub.graph
    a0 = {}
    for v in g.vertices:
        for leg in g.legs(v):
            a0[leg] = sub.arc[(v, ms[v][leg])]
        for d in g.nbhd(v):
            a0[d] = m.i(sub.arc[(v, ms[v][g.i(d)])])
    a1 = {}
    for v in g.vertices:
        k = plugs[v]
        a1[v] = EmbeddingClass(m, {sub.vertex[(v, w)] for w in k.vertices},
                               {sub.arc[(v, a)] for a in k.arcs},
                               {sub.arc[(v, b)] for b in k.boundary})
    act = GraphicalMap(g, m, a0, a1, phi.mode)
    e0, ev = {}, {}
    for (v, a), nm in sub.arc.items():
        e0[nm] = reps[v][0][a]
    for (v, w), nm in sub.vertex.items():
        ev[nm] = reps[v][1][w]
    emb = GraphicalMap(m, g1, e0, {u: vertex_class(g1, ev[u]) for u in m.vertices}, phi.mode)
    return Factorization(m, act, emb)


def compatible_isos(f1: Factorization, f2: Factorization) -> list:
    """Isomorphisms ``theta`` of middle objects with ``theta∘act1 = act2`` and ``emb2∘theta = emb1``."""
    from .canon import isomorphisms
    out = []
    for iso in isomorphisms(f1.middle, f2.middle):
        th = map_of_iso(f1.middle, f2.middle, iso.arcs, iso.vertices, f1.active.mode)
        if compose(th, f1.active) == f2.active and compose(f2.embedding, th) == f1.embedding:
            out.append(iso)
    return out


class SegalCore(NamedTuple):
    stars: list      # (v, star graph, graphical map iota_v)
    edges: list      # ((x1, x2), map into star at t(x1), map into star at t(x2))


def segal_core_data(g: Graph, mode=STRICT) -> SegalCore:
    if not g.vertices:
        raise NoVertices("the Segal core map of a vertexless graph is the identity")
    stars, by_v = [], {}
    for v in g.vertices:
        h, am, vm = star_of_vertex(g, v)
        iota = GraphicalMap(h, g, am, {v: vertex_class(g, v)}, mode)
        stars.append((v, h, iota))
        by_v[v] = (h, am)
    edge = exceptional_edge()
    out = []
    for x1, x2 in g.internal_edges():
        h1, _ = by_v[g.t[x1]]
        h2, _ = by_v[g.t[x2]]
        d1 = next(b for b in h1.boundary if h1.i(b) == x1)
        d2 = next(b for b in h2.boundary if h2.i(b) == x2)
        # major arc to x1's formal dagger, minor arc to x2's formal dagger
        maj = GraphicalMap(edge, h1, {"e": d1, "e*": x1}, {}, mode)
        mnr = GraphicalMap(edge, h2, {"e": x2, "e*": d2}, {}, mode)
        out.append(((x1, x2), maj, mnr))
    return SegalCore(stars, out)
