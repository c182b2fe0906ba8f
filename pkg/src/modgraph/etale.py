"""Étale maps, embeddings and embedding classes."""
from __future__ import annotations

from itertools import combinations
from typing import Mapping

from .errors import InteriorLeak, NotEmbedding, NotInvolutive, PullbackFails
from .graph import Graph, build_graph, exceptional_edge, nodeless_loop
from .involutive import atom_str, skey, sort_atoms


class EtaleMap:
    __slots__ = ("source", "target", "arcs", "vertices")

    def __init__(self, source: Graph, target: Graph, arcs: Mapping, vertices: Mapping):
        self.source, self.target = source, target
        self.arcs, self.vertices = dict(arcs), dict(vertices)

    def is_embedding(self) -> bool:
        vs = list(self.vertices.values())
        return (self.source.is_connected() and self.target.is_connected()
                and len(set(vs)) == len(vs))

    def then(self, other: "EtaleMap") -> "EtaleMap":
        """``other ∘ self``; étale maps compose."""
        return EtaleMap(self.source, other.target,
                        {a: other.arcs[b] for a, b in self.arcs.items()},
                        {v: other.vertices[w] for v, w in self.vertices.items()})

    def __repr__(self):
        return f"EtaleMap({self.source!r} -> {self.target!r})"


def check_etale(source: Graph, target: Graph, arcs: Mapping, vertices: Mapping) -> EtaleMap:
    """Validate a natural transformation of graphs and the two étale conditions."""
    if set(arcs) != set(source.arcs) or any(b not in target.inv for b in arcs.values()):
        raise NotInvolutive("arc map must be total into the target arcs")
    if set(vertices) != set(source.vertices) or any(w not in target._nbhd for w in vertices.values()):
        raise PullbackFails("vertex map must be total into the target vertices")
    for a in source.arcs:
        if arcs[source.i(a)] != target.i(arcs[a]):
            raise NotInvolutive(f"arc map does not commute with the involution at {a!r}")
    for d in source.darts:
        b = arcs[d]
        if b not in target.darts:
            raise PullbackFails(f"dart {d!r} maps to the non-dart {b!r}")
        if target.t[b] != vertices[source.t[d]]:
            raise PullbackFails(f"incidence not preserved at dart {d!r}")
    for v in source.vertices:
        image = [arcs[d] for d in source.nbhd(v)]
        if len(set(image)) != len(image) or set(image) != set(target.nbhd(vertices[v])):
            raise PullbackFails(f"neighborhood of {v!r} does not map bijectively onto that of "
                                f"{vertices[v]!r}")
    for a in source.arcs:
        if a in source.boundary or a in source.darts:
            continue
        b = arcs[a]
        if b in target.boundary or b in target.darts:
            raise InteriorLeak(f"interior arc {a!r} maps to {b!r}, which is a dart or boundary")
    return EtaleMap(source, target, arcs, vertices)


def is_etale(source, target, arcs, vertices) -> bool:
    try:
        check_etale(source, target, arcs, vertices)
    except (NotInvolutive, PullbackFails, InteriorLeak):
        return False
    return True


class EmbeddingClass:
    """An embedding into ``target`` up to isomorphism of its source, stored by image."""

    __slots__ = ("target", "W", "B", "bd")

    def __init__(self, target: Graph, W, B, bd):
        self.target = target
        self.W, self.B, self.bd = frozenset(W), frozenset(B), frozenset(bd)

    def record(self):
        return (self.W, self.B, self.bd)

    def __eq__(self, other):
        return (isinstance(other, EmbeddingClass) and self.record() == other.record()
                and self.target == other.target)

    def __hash__(self):
        return hash(self.record())

    def is_edge(self) -> bool:
        return not self.W and len(self.bd) == 2

    def sort_key(self):
        return (len(self.W), tuple(sort_key_set(self.W)), tuple(sort_key_set(self.bd)),
                tuple(sort_key_set(self.B)))

    def text(self) -> str:
        def fmt(xs):
            return "{" + ",".join(atom_str(x) for x in sort_atoms(xs)) + "}"
        return f"W={fmt(self.W)} B={fmt(self.B)} bd={fmt(self.bd)}"

    def __repr__(self):
        return f"<Emb {self.text()}>"


def sort_key_set(xs):
    return [skey(x) for x in sort_atoms(xs)]


def vertex_sum(c: EmbeddingClass) -> frozenset:
    return c.W


def boundary_of(c: EmbeddingClass) -> frozenset:
    return c.bd


def embedding_class(f: EtaleMap) -> EmbeddingClass:
    if not f.is_embedding():
        raise NotEmbedding("source must be connected and the vertex map injective")
    return EmbeddingClass(f.target, f.vertices.values(), f.arcs.values(),
                          {f.arcs[b] for b in f.source.boundary})


def identity_class(g: Graph) -> EmbeddingClass:
    return EmbeddingClass(g, g.vertices, g.arcs, g.boundary)


def vertex_class(g: Graph, v) -> EmbeddingClass:
    """Class of the canonical embedding of the star at ``v``."""
    nb = g.nbhd(v)
    return EmbeddingClass(g, {v}, set(nb) | {g.i(d) for d in nb}, {g.i(d) for d in nb})


def edge_class(g: Graph, a) -> EmbeddingClass:
    return EmbeddingClass(g, (), {a, g.i(a)}, {a, g.i(a)})


def representative(c: EmbeddingClass):
    """A source graph and embedding ``(source, arc_map, vertex_map)`` for the class.

    Darts keep their target names; a boundary arc is named by its image when
    that name is free, else ``('†', x)`` for the dart ``x`` it is attached to.
    """
    g = c.target
    if not c.W:
        a, b = sort_atoms(c.B)
        if c.bd:
            src = exceptional_edge()
            return src, {src.arcs[0]: a, src.i(src.arcs[0]): b}, {}
        src = nodeless_loop()
        return src, {src.arcs[0]: a, src.i(src.arcs[0]): b}, {}
    darts = [d for v in sort_atoms(c.W) for d in g.nbhd(v)]
    dset = set(darts)
    pairs, arc_map, done = [], {}, set()
    for d in darts:
        if d in done:
            continue
        j = g.i(d)
        if j in dset and j not in c.bd:
            pairs.append((d, j))
            done.update((d, j))
            arc_map[d], arc_map[j] = d, j
        else:
            name = j if j not in dset else ("†", d)
            pairs.append((d, name))
            done.add(d)
            arc_map[d], arc_map[name] = d, j
    src = build_graph(pairs, {d: g.t[d] for d in darts}, vertices=sort_atoms(c.W))
    return src, arc_map, {v: v for v in c.W}


def representative_map(c: EmbeddingClass) -> EtaleMap:
    src, am, vm = representative(c)
    return EtaleMap(src, c.target, am, vm)


def enumerate_embeddings(g: Graph) -> list[EmbeddingClass]:
    """``Emb(g)``: vertex subsets with a choice of cut internal edges, plus edges."""
    out = []
    for a, b in g.edges():
        out.append(edge_class(g, a))
    if g.is_nodeless_loop():
        out.append(identity_class(g))
    vs = list(g.vertices)
    for k in range(1, len(vs) + 1):
        for W in combinations(vs, k):
            Wset = set(W)
            darts = [d for v in W for d in g.nbhd(v)]
            dset = set(darts)
            inner = [e for e in g.edges() if e[0] in dset and e[1] in dset]
            for r in range(len(inner) + 1):
                for cut in combinations(inner, r):
                    if not _connected_after_cut(g, Wset, inner, set(cut)):
                        continue
                    bd = set()
                    cutset = {x for e in cut for x in e}
                    for d in darts:
                        j = g.i(d)
                        if j not in dset or j in cutset:
                            bd.add(j)
                    out.append(EmbeddingClass(g, Wset, dset | {g.i(d) for d in darts}, bd))
    out.sort(key=EmbeddingClass.sort_key)
    return out


def _connected_after_cut(g, W, inner, cut) -> bool:
    W = sort_atoms(W)
    parent = {v: v for v in W}

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for e in inner:
        if e in cut:
            continue
        x, y = find(g.t[e[0]]), find(g.t[e[1]])
        if x != y:
            parent[x] = y
    return len({find(v) for v in W}) == 1


def embeddings_between(src: Graph, tgt: Graph) -> list[EtaleMap]:
    """All embeddings ``src -> tgt`` (brute force over vertex injections and dart bijections)."""
    from itertools import permutations
    out = []
    if not src.is_connected() or not tgt.is_connected():
        return out
    vs = list(src.vertices)
    for image in permutations(tgt.vertices, len(vs)):
        vm = dict(zip(vs, image))
        if any(src.valence(v) != tgt.valence(vm[v]) for v in vs):
            continue
        choices = [[]]
        for v in vs:
            nxt = []
            for perm in permutations(tgt.nbhd(vm[v])):
                for ch in choices:
                    nxt.append(ch + list(zip(src.nbhd(v), perm)))
            choices = nxt
        for ch in choices:
            am = dict(ch)
            for found in _extend_arcs(src, tgt, am):
                if is_etale(src, tgt, found, vm):
                    out.append(EtaleMap(src, tgt, found, vm))
    return out


def _extend_arcs(src, tgt, am):
    # darts fix their involutes; remaining arcs lie on vertexless edges
    am = dict(am)
    for d in list(am):
        j = src.i(d)
        b = tgt.i(am[d])
        if j in am and am[j] != b:
            return
        am[j] = b
    rest = [e for e in src.edges() if e[0] not in am]
    if not rest:
        yield am
        return
    from itertools import product
    opts = [[(x, tgt.i(x)) for x in tgt.arcs] for _ in rest]
    for pick in product(*opts):
        m = dict(am)
        for (a, b), (x, y) in zip(rest, pick):
            m[a], m[b] = x, y
        yield m
