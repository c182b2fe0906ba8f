"""Graphs with boundary: arcs with a free involution, darts pointing at vertices,
and a designated boundary among the undarted arcs."""
from __future__ import annotations

from typing import Iterable, Mapping

from .errors import (AxiomC, AxiomD, BoundaryMeetsDarts, BoundaryNotArc, DartAssignedTwice,
                     DartNotArc, DuplicateElement, FixedArc, UnknownVertex)
from .involutive import InvolutiveSet, atom_str, formal_daggers, skey, sort_atoms


class Graph:
    """An immutable graph ``A <-s- D -t-> V`` with involution on ``A`` and boundary."""

    __slots__ = ("arcs", "inv", "darts", "t", "vertices", "boundary", "name", "_nbhd", "_hash")

    def __init__(self, inv: Mapping, t: Mapping, vertices: Iterable, boundary: Iterable, name=None):
        # unchecked constructor; use build_graph() for validated input
        self.inv = dict(inv)
        self.arcs = tuple(sort_atoms(self.inv))
        self.t = dict(t)
        self.darts = frozenset(self.t)
        self.vertices = tuple(sort_atoms(vertices))
        self.boundary = frozenset(boundary)
        self.name = name
        nb: dict = {v: [] for v in self.vertices}
        for d in sort_atoms(self.t):
            nb[self.t[d]].append(d)
        self._nbhd = {v: tuple(ds) for v, ds in nb.items()}
        self._hash = None

    # -- basic structure -------------------------------------------------
    def i(self, a):
        return self.inv[a]

    def nbhd(self, v) -> tuple:
        return self._nbhd[v]

    def legs(self, v) -> tuple:
        """``i(nbhd(v))``, sorted: the arcs pointing away from ``v``."""
        return tuple(sort_atoms(self.inv[d] for d in self._nbhd[v]))

    def valence(self, v) -> int:
        return len(self._nbhd[v])

    def involution(self) -> InvolutiveSet:
        return InvolutiveSet(self.inv)

    def edges(self) -> list[tuple]:
        seen, out = set(), []
        for a in self.arcs:
            if a in seen:
                continue
            pair = tuple(sort_atoms((a, self.inv[a])))
            seen.update(pair)
            out.append(pair)
        return out

    def internal_edges(self) -> list[tuple]:
        """Edges with neither arc on the boundary, as ``(x1, x2)`` with ``x1`` the smaller name."""
        return [e for e in self.edges() if e[0] not in self.boundary and e[1] not in self.boundary]

    def is_safe(self) -> bool:
        return self.boundary == frozenset(a for a in self.arcs if a not in self.darts)

    def is_connected(self) -> bool:
        if not self.arcs and not self.vertices:
            return False
        parent: dict = {}

        def find(x):
            while parent.setdefault(x, x) != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(x, y):
            parent[find(x)] = find(y)

        for a in self.arcs:
            union(("a", a), ("a", self.inv[a]))
        for d, v in self.t.items():
            union(("a", d), ("v", v))
        nodes = [("a", a) for a in self.arcs] + [("v", v) for v in self.vertices]
        roots = {find(n) for n in nodes}
        return len(roots) == 1

    def is_nodeless_loop(self) -> bool:
        return not self.vertices and len(self.arcs) == 2 and not self.boundary

    def is_exceptional_edge(self) -> bool:
        return not self.vertices and len(self.arcs) == 2 and len(self.boundary) == 2

    def is_star(self) -> bool:
        return len(self.vertices) == 1 and not self.internal_edges()

    def is_elementary(self) -> bool:
        return self.is_exceptional_edge() or self.is_star()

    def relabel(self, arc_map: Mapping, vertex_map: Mapping, name=None) -> "Graph":
        inv = {arc_map[a]: arc_map[b] for a, b in self.inv.items()}
        t = {arc_map[d]: vertex_map[v] for d, v in self.t.items()}
        return Graph(inv, t, [vertex_map[v] for v in self.vertices],
                     [arc_map[b] for b in self.boundary], name=name)

    def with_name(self, name) -> "Graph":
        return Graph(self.inv, self.t, self.vertices, self.boundary, name=name)

    # -- identity ----------------------------------------------------------
    def _key(self):
        return (tuple((a, self.inv[a]) for a in self.arcs),
                tuple(sorted(((d, self.t[d]) for d in self.t), key=skey)),
                self.vertices,
                tuple(sort_atoms(self.boundary)))

    def __eq__(self, other):
        return isinstance(other, Graph) and self._key() == other._key()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._key())
        return self._hash

    def __repr__(self):
        label = f" {atom_str(self.name)}" if self.name is not None else ""
        return (f"<Graph{label} |V|={len(self.vertices)} |A|={len(self.arcs)} "
                f"|bd|={len(self.boundary)}>")

    def summary(self) -> str:
        parts = [f"arcs: {' ; '.join(' '.join(atom_str(x) for x in e) for e in self.edges())}",
                 f"vertices: {' '.join(atom_str(v) for v in self.vertices)}"]
        for v in self.vertices:
            parts.append(f"nbhd {atom_str(v)}: {' '.join(atom_str(d) for d in self.nbhd(v))}")
        parts.append(f"boundary: {' '.join(atom_str(b) for b in sort_atoms(self.boundary))}")
        return "\n".join(parts)


def build_graph(arc_pairs: Iterable, incidence: Mapping, vertices: Iterable | None = None,
                boundary: Iterable | None = None, name=None) -> Graph:
    """Validate and build a graph.

    ``arc_pairs`` lists the involution classes (must all have size two),
    ``incidence`` maps each dart to its vertex.  Omitting ``boundary`` yields
    the safe graph with boundary ``A \\ D``.
    """
    inv: dict = {}
    for pair in arc_pairs:
        pair = tuple(pair)
        if len(pair) == 1 or (len(pair) == 2 and pair[0] == pair[1]):
            raise FixedArc(f"arc {pair[0]!r} would be fixed by the involution")
        if len(pair) != 2:
            raise DuplicateElement(f"arc class {pair!r} must have exactly two arcs")
        a, b = pair
        for x in pair:
            if x in inv:
                raise DuplicateElement(f"arc {x!r} appears in two classes")
        inv[a], inv[b] = b, a
    if vertices is None:
        vertices = set(incidence.values())
    vertices = list(vertices)
    if len(set(vertices)) != len(vertices):
        raise DuplicateElement("duplicate vertex")
    vset = set(vertices)
    t: dict = {}
    for d, v in incidence.items():
        if d not in inv:
            raise DartNotArc(f"dart {d!r} is not an arc")
        if v not in vset:
            raise UnknownVertex(f"dart {d!r} points at unknown vertex {v!r}")
        t[d] = v
    darts = set(t)
    if boundary is None:
        bd = {a for a in inv if a not in darts}
    else:
        bd = set(boundary)
        for b in bd:
            if b not in inv:
                raise BoundaryNotArc(f"boundary element {b!r} is not an arc")
        meet = bd & darts
        if meet:
            raise BoundaryMeetsDarts(f"boundary contains darts {sort_atoms(meet)!r}")
    g = Graph(inv, t, vertices, bd, name=name)
    validate(g)
    return g


def validate(g: Graph) -> Graph:
    """Check axioms A-D and boundary containment; return ``g``."""
    for a, b in g.inv.items():
        if a == b:
            raise FixedArc(f"arc {a!r} is fixed by the involution")
        if g.inv.get(b) != a:
            raise FixedArc(f"involution not self-inverse at {a!r}")
    for d, v in g.t.items():
        if d not in g.inv:
            raise DartNotArc(f"dart {d!r} is not an arc")
        if v not in g._nbhd:
            raise UnknownVertex(f"dart {d!r} points at unknown vertex {v!r}")
    if g.boundary & g.darts:
        raise BoundaryMeetsDarts("boundary meets darts")
    for b in g.boundary:
        if b not in g.inv:
            raise BoundaryNotArc(f"boundary element {b!r} is not an arc")
    idarts = {g.inv[d] for d in g.darts}
    loose = idarts - g.darts
    if not loose <= g.boundary:
        raise AxiomC(f"arcs {sort_atoms(loose - g.boundary)!r} are involutes of darts but "
                     "neither darts nor boundary")
    rest = g.boundary - idarts
    for b in rest:
        if g.inv[b] not in rest:
            raise AxiomD(f"boundary minus i(D) is not closed under the involution at {b!r}")
    return g


def graph_from_nbhds(edges: Iterable[tuple], nbhds: Mapping, boundary=None, name=None) -> Graph:
    """Convenience: ``nbhds`` maps vertex -> list of darts."""
    incidence: dict = {}
    for v, ds in nbhds.items():
        for d in ds:
            if d in incidence:
                raise DartAssignedTwice(f"dart {d!r} is listed at {incidence[d]!r} and {v!r}")
            incidence[d] = v
    return build_graph(edges, incidence, vertices=list(nbhds), boundary=boundary, name=name)


# -- standard graphs -------------------------------------------------------

EDGE_MAJOR = "e"
EDGE_MINOR = "e*"


def exceptional_edge(major=EDGE_MAJOR, minor=EDGE_MINOR) -> Graph:
    return build_graph([(major, minor)], {}, vertices=[], name="edge")


def nodeless_loop(a="l", b="l*") -> Graph:
    return build_graph([(a, b)], {}, vertices=[], boundary=[], name="nodeless-loop")


def star_of(S: Iterable, vertex="v", name=None) -> Graph:
    """``★_S``: one vertex, arcs ``2S``, darts ``S†``, boundary ``S``."""
    S = sort_atoms(S)
    dag = formal_daggers(S)
    return build_graph([(s, dag[s]) for s in S], {dag[s]: vertex for s in S},
                       vertices=[vertex], name=name)


def star(n: int, vertex="v") -> Graph:
    """``★_n`` with darts ``1..n`` and boundary ``1*..n*``."""
    labels = [str(k) for k in range(1, n + 1)]
    return build_graph([(s, s + "*") for s in labels], {s: vertex for s in labels},
                       vertices=[vertex], name=f"star{n}")


def star_of_vertex(g: Graph, v):
    """``★_v`` and its canonical embedding data ``(arc_map, vertex_map)`` into ``g``."""
    if v not in g.vertices:
        raise UnknownVertex(f"{v!r} is not a vertex")
    nb = g.nbhd(v)
    dag = formal_daggers(nb)
    h = build_graph([(d, dag[d]) for d in nb], {d: v for d in nb}, vertices=[v],
                    name=("star", v))
    arc_map = {}
    for d in nb:
        arc_map[d] = d
        arc_map[dag[d]] = g.i(d)
    return h, arc_map, {v: v}


def star_of_graph(g: Graph) -> Graph:
    """``★_G = ★_{∂(G)}``."""
    return star_of(g.boundary, name=("star-of", g.name))


def linear_graph(n: int) -> Graph:
    """``n`` vertices in a row with a leg at each end (``n >= 1``)."""
    if n < 1:
        raise ValueError("linear graph needs a vertex")
    edges = [("l0", "l0*")]
    nbhds = {f"v{k}": [] for k in range(1, n + 1)}
    nbhds["v1"].append("l0*")
    for k in range(1, n):
        a, b = f"e{k}", f"e{k}*"
        edges.append((a, b))
        nbhds[f"v{k}"].append(b)
        nbhds[f"v{k + 1}"].append(a)
    edges.append(("r0", "r0*"))
    nbhds[f"v{n}"].append("r0*")
    return graph_from_nbhds(edges, nbhds, name=f"linear{n}")


def cycle_graph(n: int, legs: int = 0) -> Graph:
    """A closed cycle on ``n`` vertices; ``legs`` extra legs at the first vertex."""
    if n < 1:
        raise ValueError("cycle needs a vertex")
    edges, nbhds = [], {f"v{k}": [] for k in range(1, n + 1)}
    for k in range(1, n + 1):
        a, b = f"c{k}", f"c{k}*"
        edges.append((a, b))
        nbhds[f"v{k}"].append(a)
        nbhds[f"v{k % n + 1}"].append(b)
    for j in range(legs):
        edges.append((f"x{j}", f"x{j}*"))
        nbhds["v1"].append(f"x{j}*")
    return graph_from_nbhds(edges, nbhds, name=f"cycle{n}" + (f"+{legs}" if legs else ""))


def loop_graph(legs: int = 0) -> Graph:
    """One vertex carrying one loop (and optional legs)."""
    return cycle_graph(1, legs).with_name("loop" + (f"+{legs}" if legs else ""))


def double_cover() -> Graph:
    """The 4-cycle that double covers :func:`cover_base` (closed, 4 vertices)."""
    edges = [("v0.1", "w0.1"), ("v1.1", "w1.1"), ("v1.2", "w0.2"), ("v0.2", "w1.2")]
    nbhds = {"v0": ["v0.1", "v0.2"], "w0": ["w0.1", "w0.2"],
             "v1": ["v1.1", "v1.2"], "w1": ["w1.1", "w1.2"]}
    return graph_from_nbhds(edges, nbhds, name="double-cover")


def cover_base() -> Graph:
    """Two vertices joined by two parallel edges (closed)."""
    edges = [("v.1", "w.1"), ("v.2", "w.2")]
    nbhds = {"v": ["v.1", "v.2"], "w": ["w.1", "w.2"]}
    return graph_from_nbhds(edges, nbhds, name="cover-base")


def double_cover_map() -> tuple[dict, dict]:
    """Arc and vertex maps of the étale double cover ``double_cover -> cover_base``."""
    arcs = {}
    for j in (0, 1):
        for k in (1, 2):
            arcs[f"v{j}.{k}"] = f"v.{k}"
            arcs[f"w{j}.{k}"] = f"w.{k}"
    return arcs, {"v0": "v", "v1": "v", "w0": "w", "w1": "w"}


def disjoint_edges() -> Graph:
    return build_graph([("a", "a*"), ("b", "b*")], {}, vertices=[], name="two-edges")
