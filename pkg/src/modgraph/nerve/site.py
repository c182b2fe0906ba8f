"""Finite truncated sites standing in for the graphical category and its JK extension."""
from __future__ import annotations

from typing import Mapping

from ..canon import GraphIso, certificate, isomorphisms
from ..errors import MissingActiveMap, MissingCoreObject, NotComposable
from ..etale import enumerate_embeddings, representative
from ..graph import (Graph, cycle_graph, exceptional_edge, linear_graph, loop_graph, star,
                     graph_from_nbhds)
from ..graphical import GraphicalMap, compose, homset, map_of_iso, segal_core_data
from ..modops.free import FreeModularOperad
from ..modops.maps import J, OperadMap, compose_operad_maps, jk_homset

U, JK = "U", "JK"


def h_graph() -> Graph:
    """Two trivalent vertices joined by one edge, four legs."""
    edges = [("m", "m*"), ("p1", "p1*"), ("p2", "p2*"), ("q1", "q1*"), ("q2", "q2*")]
    nbhds = {"u": ["m", "p1*", "p2*"], "w": ["m*", "q1*", "q2*"]}
    return graph_from_nbhds(edges, nbhds, name="h")


def standard_objects(max_star: int = 4, composites=None) -> dict:
    """``↕``, ``★_0 .. ★_max_star`` and a few composite graphs, keyed by name."""
    objs = {"edge": exceptional_edge().with_name("edge")}
    for k in range(max_star + 1):
        objs[f"star{k}"] = star(k)
    if composites is None:
        composites = [linear_graph(2), h_graph(), loop_graph(), cycle_graph(2)]
    for g in composites:
        objs[str(g.name)] = g
    return objs


class TruncatedSite:
    """Representative graphs with complete hom-sets between them.

    In ``U`` mode morphisms are graphical maps; in ``JK`` mode they are maps of
    free modular operads whose vertex values have at most ``vertex_bound``
    vertices.  Elements of presheaves are looked up by :meth:`key`.
    """

    def __init__(self, objects: Mapping, mode: str = U, vertex_bound: int | None = None):
        self.objects = dict(objects)
        self.mode = mode
        self.vertex_bound = vertex_bound
        if mode == JK and vertex_bound is None:
            raise ValueError("a JK site needs a vertex bound")
        self.names = list(self.objects)
        self._name_of = {g: n for n, g in self.objects.items()}
        self._cert = {}
        for n, g in self.objects.items():
            self._cert.setdefault(certificate(g), []).append(n)
        self._free = {n: FreeModularOperad(g) for n, g in self.objects.items()}
        self.hom: dict = {}
        self.index: dict = {}
        for a in self.names:
            for b in self.names:
                ms = self._homset(a, b)
                self.hom[(a, b)] = ms
                for m in ms:
                    self.index[self.key(m)] = m
        self._locate_cache: dict = {}

    # -- morphisms ----------------------------------------------------------
    def _homset(self, a, b):
        g, h = self.objects[a], self.objects[b]
        if self.mode == U:
            return homset(g, h)
        return jk_homset(g, h, self.vertex_bound, self._free[b])

    def name_of(self, g: Graph):
        return self._name_of.get(g)

    def key(self, m):
        return (self._name_of[m.source if isinstance(m, GraphicalMap) else m.graph],
                self._name_of[m.target if isinstance(m, GraphicalMap) else m.target.graph],
                m.key())

    def ends(self, m) -> tuple:
        k = self.key(m)
        return k[0], k[1]

    def morphisms(self):
        for a in self.names:
            for b in self.names:
                yield from self.hom[(a, b)]

    def identity(self, name):
        from ..graphical import identity
        phi = identity(self.objects[name])
        return phi if self.mode == U else J(phi, self._free[name])

    def compose(self, psi, phi):
        """``psi ∘ phi`` in the site's morphism type."""
        if self.mode == U:
            return compose(psi, phi)
        if phi.target.graph != psi.graph:
            raise NotComposable("middle objects differ")
        return compose_operad_maps(OperadMap(psi.graph, psi.target, psi.f0, psi.f1), phi)

    def of_graphical(self, phi: GraphicalMap):
        """A graphical map between representatives as a site morphism."""
        if self.mode == U:
            return phi
        return J(phi, self._free[self._name_of[phi.target]])

    # -- representatives ----------------------------------------------------
    def locate(self, g: Graph) -> tuple:
        """``(name, iso g -> representative)``; the identity when ``g`` is itself listed."""
        if g in self._locate_cache:
            return self._locate_cache[g]
        n = self._name_of.get(g)
        if n is not None:
            res = (n, GraphIso({a: a for a in g.arcs}, {v: v for v in g.vertices}))
        else:
            res = None
            for cand in self._cert.get(certificate(g), []):
                isos = isomorphisms(g, self.objects[cand], first=True)
                if isos:
                    res = (cand, isos[0])
                    break
            if res is None:
                raise MissingCoreObject(f"no site object is isomorphic to {g!r}")
        self._locate_cache[g] = res
        return res

    def transport(self, phi: GraphicalMap):
        """The site morphism ``c_tgt ∘ phi ∘ c_src⁻¹`` between representatives."""
        sn, si = self.locate(phi.source)
        tn, ti = self.locate(phi.target)
        src, tgt = self.objects[sn], self.objects[tn]
        inv = si.inverse()
        phi0 = {a: ti.arcs[phi.phi0[inv.arcs[a]]] for a in src.arcs}
        phi1 = {}
        for v in src.vertices:
            c = phi.phi1[inv.vertices[v]]
            from ..etale import EmbeddingClass
            phi1[v] = EmbeddingClass(tgt, {ti.vertices[w] for w in c.W}, {ti.arcs[a] for a in c.B},
                                     {ti.arcs[a] for a in c.bd})
        m = self.of_graphical(GraphicalMap(src, tgt, phi0, phi1, phi.mode))
        k = self.key(m)
        if k not in self.index:
            raise MissingActiveMap(f"map {sn} -> {tn} is not in the site")
        return self.index[k]

    # -- adequacy -------------------------------------------------------------
    def adequacy(self) -> list[str]:
        """Problems that would make Segal checks or evaluations leave the site."""
        bad = []
        if "edge" not in self.objects and not any(g.is_exceptional_edge() for g in self.objects.values()):
            bad.append("no exceptional edge")
        for n, g in self.objects.items():
            if not g.vertices:
                continue
            try:
                core = segal_core_data(g)
                for _, h, iota in core.stars:
                    self.transport(iota)
                for _, maj, mnr in core.edges:
                    self.transport(maj)
                    self.transport(mnr)
            except (MissingCoreObject, MissingActiveMap) as exc:
                bad.append(f"{n}: {exc}")
            for c in enumerate_embeddings(g):
                k = representative(c)[0]
                if k.vertices or k.boundary:
                    try:
                        self.locate(k)
                    except MissingCoreObject:
                        bad.append(f"{n}: embedded shape {k!r} is not listed")
        return bad

    def composition_failures(self, limit: int | None = None) -> list[str]:
        """Composable pairs whose composite is not a listed morphism."""
        bad = []
        for a in self.names:
            for b in self.names:
                for phi in self.hom[(a, b)]:
                    for c in self.names:
                        for psi in self.hom[(b, c)]:
                            if self.key(self.compose(psi, phi)) not in self.index:
                                bad.append(f"{a} -> {b} -> {c}")
                                if limit and len(bad) >= limit:
                                    return bad
        return bad

    def summary(self) -> str:
        lines = [f"site mode={self.mode}" + (f" vertex-bound={self.vertex_bound}"
                                              if self.vertex_bound else "")]
        for n in self.names:
            g = self.objects[n]
            lines.append(f"object {n}: |V|={len(g.vertices)} |A|={len(g.arcs)} "
                         f"|bd|={len(g.boundary)}")
        lines.append(f"morphisms {len(self.index)}")
        return "\n".join(lines)


def standard_site(mode: str = U, max_star: int = 4, vertex_bound: int | None = None,
                  composites=None) -> TruncatedSite:
    return TruncatedSite(standard_objects(max_star, composites), mode, vertex_bound)


def iso_map(site: TruncatedSite, g: Graph):
    """``c: g -> representative`` as a graphical map."""
    n, iso = site.locate(g)
    return map_of_iso(g, site.objects[n], iso.arcs, iso.vertices)
