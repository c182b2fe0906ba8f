"""Isomorphism search and canonical forms for graphs.

Two independent routes: :func:`isomorphisms` is a backtracking search that
returns explicit maps, while :func:`certificate` / :func:`canonical_code`
compute invariants that are complete for the structures they describe.
Tests play one against the other.
"""
from __future__ import annotations

from collections import deque
from itertools import permutations, product
from typing import Callable, NamedTuple

from .graph import Graph
from .involutive import skey


class GraphIso(NamedTuple):
    arcs: dict
    vertices: dict

    def inverse(self) -> "GraphIso":
        return GraphIso({b: a for a, b in self.arcs.items()},
                        {b: a for a, b in self.vertices.items()})

    def then(self, other: "GraphIso") -> "GraphIso":
        """``other ∘ self``."""
        return GraphIso({a: other.arcs[b] for a, b in self.arcs.items()},
                        {v: other.vertices[w] for v, w in self.vertices.items()})

    def key(self):
        return (tuple(sorted(((skey(a), skey(b)) for a, b in self.arcs.items()))),
                tuple(sorted(((skey(a), skey(b)) for a, b in self.vertices.items()))))


def identity_iso(g: Graph) -> GraphIso:
    return GraphIso({a: a for a in g.arcs}, {v: v for v in g.vertices})


def is_graph_iso(g: Graph, h: Graph, arcs: dict, vertices: dict) -> bool:
    """Direct definition check; used as an oracle."""
    if set(arcs) != set(g.arcs) or set(arcs.values()) != set(h.arcs) or len(g.arcs) != len(h.arcs):
        return False
    if set(vertices) != set(g.vertices) or set(vertices.values()) != set(h.vertices):
        return False
    if len(g.vertices) != len(h.vertices):
        return False
    for a in g.arcs:
        if arcs[g.i(a)] != h.i(arcs[a]):
            return False
        if (a in g.darts) != (arcs[a] in h.darts) or (a in g.boundary) != (arcs[a] in h.boundary):
            return False
        if a in g.darts and vertices[g.t[a]] != h.t[arcs[a]]:
            return False
    return True


def _bfs_order(g: Graph) -> list:
    order, seen = [], set()
    for root in g.vertices:
        if root in seen:
            continue
        seen.add(root)
        q = deque([root])
        while q:
            v = q.popleft()
            order.append(v)
            for d in g.nbhd(v):
                j = g.i(d)
                if j in g.darts and g.t[j] not in seen:
                    seen.add(g.t[j])
                    q.append(g.t[j])
    return order


def isomorphisms(g: Graph, h: Graph, *, arc_ok: Callable | None = None,
                 fixed: dict | None = None, final_ok: Callable | None = None,
                 first: bool = False) -> list[GraphIso]:
    """All isomorphisms ``g -> h`` satisfying the optional constraints.

    ``arc_ok(a, b)`` filters arc assignments (colors), ``fixed`` pins some
    arcs, ``final_ok(iso)`` filters complete isomorphisms (decorations).
    """
    if (len(g.arcs), len(g.vertices), len(g.darts), len(g.boundary)) != \
            (len(h.arcs), len(h.vertices), len(h.darts), len(h.boundary)):
        return []
    if sorted(g.valence(v) for v in g.vertices) != sorted(h.valence(v) for v in h.vertices):
        return []
    fixed = fixed or {}
    out: list[GraphIso] = []
    order = _bfs_order(g)
    g_free = [e for e in g.edges() if e[0] not in g.darts and e[1] not in g.darts]
    h_free = [e for e in h.edges() if e[0] not in h.darts and e[1] not in h.darts]
    if len(g_free) != len(h_free):
        return []

    def ok1(a, b, amap, used):
        if a in amap:
            return amap[a] == b
        if b in used:
            return False
        if (a in g.darts) != (b in h.darts) or (a in g.boundary) != (b in h.boundary):
            return False
        if a in fixed and fixed[a] != b:
            return False
        return arc_ok is None or arc_ok(a, b)

    def put(a, b, amap, used):
        """Assign ``a -> b`` and its involute; returns False on conflict."""
        for x, y in ((a, b), (g.i(a), h.i(b))):
            if not ok1(x, y, amap, used):
                return False
            if x not in amap:
                amap[x] = y
                used.add(y)
        return True

    def darts_at(k, amap, used, vmap, vused, ds, targets):
        # bijection from remaining darts ds to targets
        if not ds:
            yield amap, used
            return
        d, rest = ds[0], ds[1:]
        for idx, b in enumerate(targets):
            a2, u2 = dict(amap), set(used)
            if not put(d, b, a2, u2):
                continue
            # involute dart must land at the right vertex if already placed
            j = g.i(d)
            if j in g.darts and g.t[j] in vmap and vmap[g.t[j]] != h.t[h.i(b)]:
                continue
            yield from darts_at(k, a2, u2, vmap, vused, rest, targets[:idx] + targets[idx + 1:])

    def vert(k, amap, used, vmap, vused):
        if k == len(order):
            for a2 in free(0, amap, used):
                yield a2, vmap
            return
        u = order[k]
        cands = None
        for d in g.nbhd(u):
            if d in amap:
                cands = [h.t[amap[d]]]
                break
        if cands is None:
            cands = [w for w in h.vertices if w not in vused and h.valence(w) == g.valence(u)]
        for w in cands:
            if w in vused or h.valence(w) != g.valence(u):
                continue
            pre = [d for d in g.nbhd(u) if d in amap]
            if any(h.t[amap[d]] != w for d in pre):
                continue
            rest = [d for d in g.nbhd(u) if d not in amap]
            targets = [b for b in h.nbhd(w) if b not in used]
            if len(rest) != len(targets):
                continue
            vm2 = dict(vmap)
            vm2[u] = w
            vu2 = vused | {w}
            for a2, u2 in darts_at(k, amap, used, vm2, vu2, rest, targets):
                # darts whose involute is a dart at an already placed vertex
                bad = False
                for d in g.nbhd(u):
                    j = g.i(d)
                    if j in g.darts and g.t[j] in vm2 and h.t[a2[j]] != vm2[g.t[j]]:
                        bad = True
                        break
                if not bad:
                    yield from vert(k + 1, a2, u2, vm2, vu2)

    def free(k, amap, used):
        if k == len(g_free):
            yield amap
            return
        a, _ = g_free[k]
        for e in h_free:
            for b in e:
                a2, u2 = dict(amap), set(used)
                if put(a, b, a2, u2):
                    yield from free(k + 1, a2, u2)

    for amap, vmap in vert(0, {}, set(), {}, frozenset()):
        cand = GraphIso(dict(amap), dict(vmap))
        if not is_graph_iso(g, h, cand.arcs, cand.vertices):
            continue
        if final_ok is None or final_ok(cand):
            out.append(cand)
            if first:
                return out
    out.sort(key=GraphIso.key)
    return out


def is_isomorphic(g: Graph, h: Graph, **kw) -> bool:
    return bool(isomorphisms(g, h, first=True, **kw))


def automorphisms(g: Graph, **kw) -> list[GraphIso]:
    return isomorphisms(g, g, **kw)


# -- uncolored certificate -------------------------------------------------

def certificate(g: Graph) -> tuple:
    """Complete isomorphism invariant of an uncolored, unpinned graph.

    A graph is a multigraph with legs plus vertexless edges, so minimising the
    (legs, multiplicity matrix) description over vertex orderings suffices.
    """
    free_bd = free_closed = 0
    for a, b in g.edges():
        if a not in g.darts and b not in g.darts:
            if a in g.boundary:
                free_bd += 1
            else:
                free_closed += 1
    vs = list(g.vertices)
    idx = {v: k for k, v in enumerate(vs)}
    n = len(vs)
    legs = [0] * n
    mult = [[0] * n for _ in range(n)]
    for a, b in g.edges():
        da, db = a in g.darts, b in g.darts
        if da and db:
            x, y = idx[g.t[a]], idx[g.t[b]]
            mult[x][y] += 1
            if x != y:
                mult[y][x] += 1
        elif da:
            legs[idx[g.t[a]]] += 1
        elif db:
            legs[idx[g.t[b]]] += 1
    local = [(g.valence(v), legs[k], mult[k][k]) for k, v in enumerate(vs)]
    groups: dict = {}
    for k in range(n):
        groups.setdefault(local[k], []).append(k)
    keys = sorted(groups)
    best = None
    for choice in product(*(permutations(groups[k]) for k in keys)):
        perm = [x for block in choice for x in block]
        code = (tuple(legs[x] for x in perm),
                tuple(mult[perm[r]][perm[c]] for r in range(n) for c in range(r, n)))
        if best is None or code < best:
            best = code
    return (n, tuple(keys), best, free_bd, free_closed)


# -- canonical code for colored / pinned / decorated connected graphs -----

def canonical_code(g: Graph, color: Callable | None = None, pin: Callable | None = None,
                   vertex_key: Callable | None = None) -> tuple:
    """Canonical code of a connected graph with optional extra structure.

    ``color(a)`` colors arcs, ``pin(b)`` labels boundary arcs (boundary
    orderings), ``vertex_key(v, legs)`` encodes a decoration of ``v`` relative
    to the given ordering of ``i(nbhd(v))``.  Equal codes iff isomorphic
    respecting all supplied structure.
    """
    col = (lambda a: skey(color(a))) if color else (lambda a: ())
    pn = (lambda b: skey(pin(b))) if pin else (lambda b: ())
    if not g.vertices:
        codes = []
        for a in g.arcs:
            b = g.i(a)
            codes.append(("novertex", a in g.boundary, col(a), pn(a) if a in g.boundary else (),
                          col(b), pn(b) if b in g.boundary else ()))
        return min(codes) if codes else ("empty",)

    def local(d):
        j = g.i(d)
        if j in g.darts:
            return (col(d), col(j), 0, ())
        return (col(d), col(j), 1, pn(j))

    def blocks(v):
        # candidate dart orders at v: sort by local key, permute inside ties
        ds = sorted(g.nbhd(v), key=lambda d: (local(d), skey(d)))
        groups, cur = [], []
        for d in ds:
            if cur and local(cur[-1]) != local(d):
                groups.append(cur)
                cur = []
            cur.append(d)
        if cur:
            groups.append(cur)
        for choice in product(*(permutations(gr) for gr in groups)):
            yield [d for gr in choice for d in gr]

    best = [None]

    def run(queue, vidx, aidx, code):
        if best[0] is not None and tuple(code) > best[0][:len(code)]:
            return
        if not queue:
            c = tuple(code)
            if best[0] is None or c < best[0]:
                best[0] = c
            return
        v, rest = queue[0], queue[1:]
        for order in blocks(v):
            vidx2, aidx2, q2 = dict(vidx), dict(aidx), list(rest)
            toks = []
            for d in order:
                if d not in aidx2:
                    aidx2[d] = len(aidx2)
                j = g.i(d)
                if j in g.darts:
                    u = g.t[j]
                    if u not in vidx2:
                        vidx2[u] = len(vidx2)
                        q2.append(u)
                    if j not in aidx2:
                        aidx2[j] = len(aidx2)
                    toks.append(local(d) + (aidx2[d], vidx2[u], aidx2[j]))
                else:
                    toks.append(local(d) + (aidx2[d], -1, -1))
            vk = skey(vertex_key(v, [g.i(d) for d in order])) if vertex_key else ()
            block = (vidx2[v], tuple(toks), vk)
            run(q2, vidx2, aidx2, code + [block])

    for s in g.vertices:
        run([s], {s: 0}, {}, [])
    return ("graph", len(g.vertices), len(g.arcs), best[0])
