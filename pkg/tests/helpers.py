"""Shared builders and brute-force oracles for the test suite."""
from __future__ import annotations

from itertools import combinations_with_replacement, permutations

from modgraph import errors as E
from modgraph.canon import certificate, is_isomorphic
from modgraph.graph import (Graph, build_graph, cycle_graph, exceptional_edge, cover_base,
                            double_cover, graph_from_nbhds, linear_graph, loop_graph,
                            nodeless_loop, star, validate)
from modgraph.involutive import make_involutive_set
from modgraph.modops import FreeModularOperad, GenusOperad, LinearRelationOperad, tabulate


CONSTRUCTED = [exceptional_edge(), nodeless_loop(), *[star(n) for n in range(7)],
               *[linear_graph(n) for n in range(1, 4)], *[cycle_graph(n) for n in range(1, 4)],
               loop_graph(), loop_graph(2), cover_base(), double_cover()]

# hand-built inputs violating one axiom each, with the error they must raise
INVALID = [
    ("fixed-pair", lambda: build_graph([("a", "a")], {}), E.FixedArc),
    ("singleton-class", lambda: build_graph([("a",)], {}), E.FixedArc),
    ("three-class", lambda: build_graph([("a", "b", "c")], {}), E.DuplicateElement),
    ("arc-twice", lambda: build_graph([("a", "b"), ("a", "c")], {}), E.DuplicateElement),
    ("dart-not-arc", lambda: build_graph([("a", "a*")], {"z": "v"}, vertices=["v"]),
     E.DartNotArc),
    ("unknown-vertex", lambda: build_graph([("a", "a*")], {"a": "w"}, vertices=["v"]),
     E.UnknownVertex),
    ("boundary-meets-darts",
     lambda: build_graph([("a", "a*")], {"a": "v"}, vertices=["v"], boundary=["a", "a*"]),
     E.BoundaryMeetsDarts),
    ("boundary-not-arc",
     lambda: build_graph([("a", "a*")], {"a": "v"}, vertices=["v"], boundary=["a*", "q"]),
     E.BoundaryNotArc),
    ("axiom-c", lambda: build_graph([("a", "a*")], {"a": "v"}, vertices=["v"], boundary=[]),
     E.AxiomC),
    ("axiom-d", lambda: build_graph([("a", "a*"), ("b", "b*")], {"a": "v"}, vertices=["v"],
                                    boundary=["a*", "b"]), E.AxiomD),
    ("dart-listed-twice", lambda: graph_from_nbhds([("a", "a*")], {"v": ["a"], "w": ["a"]}),
     E.DartAssignedTwice),
    ("not-self-inverse", lambda: validate(Graph({"a": "b", "b": "c", "c": "a"}, {}, [], [])),
     E.FixedArc),
]

def two_colors():
    return make_involutive_set(["a", "b"], [["a"], ["b"]])


def tab(P, arity=4):
    return tabulate(P, arity, biased=False)


def operads():
    """The three tabulated operads used throughout: genus mod 2, linear relations, M(star_2)."""
    return {"genus2": tab(GenusOperad(2)), "linrel": tab(LinearRelationOperad()),
            "free-star2": tab(FreeModularOperad(star(2), 1))}


def _build(n, internal, legs):
    edges, nbhds, k = [], {f"v{j}": [] for j in range(n)}, 0
    for u, w in internal:
        a, b = f"a{k}", f"a{k}*"
        edges.append((a, b))
        nbhds[f"v{u}"].append(a)
        nbhds[f"v{w}"].append(b)
        k += 1
    for u, m in enumerate(legs):
        for _ in range(m):
            a, b = f"a{k}", f"a{k}*"
            edges.append((a, b))
            nbhds[f"v{u}"].append(b)
            k += 1
    return graph_from_nbhds(edges, nbhds)


def connected_safe_graphs(max_vertices=3, max_arcs=10):
    """Every connected safe graph within the bounds, one per isomorphism class."""
    found = {}
    out = [exceptional_edge()]
    max_edges = max_arcs // 2
    for n in range(1, max_vertices + 1):
        pairs = [(u, w) for u in range(n) for w in range(u, n)]
        for ni in range(max_edges + 1):
            for internal in combinations_with_replacement(pairs, ni):
                rest = max_edges - ni
                for nl in range(rest + 1):
                    for legs_combo in combinations_with_replacement(range(n), nl):
                        legs = [legs_combo.count(u) for u in range(n)]
                        g = _build(n, internal, legs)
                        if not g.is_connected():
                            continue
                        bucket = found.setdefault(certificate(g), [])
                        if any(is_isomorphic(g, h) for h in bucket):
                            continue
                        bucket.append(g)
                        out.append(g)
    return out


def brute_bijections(xs, ys):
    xs, ys = list(xs), list(ys)
    if len(xs) != len(ys):
        return []
    return [dict(zip(xs, p)) for p in permutations(ys)]


def local_maps(k, g, bijective=False):
    return list(iter_local_maps(k, g, bijective))


def iter_local_maps(k, g, bijective=False):
    """Étale maps ``k -> g`` injective on vertices, by backtracking over darts.

    Vertices go to vertices of the same valence, the darts at a vertex go
    bijectively onto the darts at its image, and the involution is respected.
    Yields ``(arc map, vertex map)`` pairs.
    """
    kv = list(k.vertices)
    if bijective and len(kv) != len(g.vertices):
        return
    if not kv:
        # a vertexless source: the exceptional edge goes onto any edge, either way round
        a = k.arcs[0]
        for x in g.arcs:
            yield {a: x, k.i(a): g.i(x)}, {}
        return
    darts = [d for v in kv for d in k.nbhd(v)]
    for image in permutations(g.vertices, len(kv)):
        vm = dict(zip(kv, image))
        if any(k.valence(v) != g.valence(vm[v]) for v in kv):
            continue

        def rec(j, am, used):
            if j == len(darts):
                yield dict(am)
                return
            d = darts[j]
            want = vm[k.t[d]]
            if d in am:
                x = am[d]
                if x in used or x not in g.darts or g.t[x] != want:
                    return
                used.add(x)
                yield from rec(j + 1, am, used)
                used.discard(x)
                return
            for x in g.nbhd(want):
                if x in used:
                    continue
                jd, jx = k.i(d), g.i(x)
                if jd in am and am[jd] != jx:
                    continue
                fresh = jd not in am
                am[d] = x
                if fresh:
                    am[jd] = jx
                used.add(x)
                yield from rec(j + 1, am, used)
                used.discard(x)
                del am[d]
                if fresh:
                    del am[jd]

        for am in rec(0, {}, set()):
            yield am, vm


def brute_isos(k1, k2):
    """All isomorphisms ``k1 -> k2``."""
    if (len(k1.vertices), len(k1.arcs), len(k1.boundary)) != \
            (len(k2.vertices), len(k2.arcs), len(k2.boundary)):
        return []
    return [(am, vm) for am, vm in local_maps(k1, k2, bijective=True) if _is_iso(k1, k2, am, vm)]


def _is_iso(k1, k2, am, vm):
    if set(am) != set(k1.arcs) or set(am.values()) != set(k2.arcs):
        return False
    for a in k1.arcs:
        if am[k1.i(a)] != k2.i(am[a]):
            return False
    for d in k1.darts:
        if am[d] not in k2.darts or k2.t[am[d]] != vm[k1.t[d]]:
            return False
    return {am[b] for b in k1.boundary} == set(k2.boundary)


def factor_through(f, kf, h, kh):
    """An isomorphism ``z: kf -> kh`` with ``f = h∘z``, or None.

    ``h`` is injective on darts, so ``z`` is forced on darts; vertexless
    sources have only the two orientations to try.
    """
    fa, fv = f
    ha, hv = h
    if not kf.vertices:
        if kh.vertices:
            return None
        a, b = kf.arcs[0], kh.arcs[0]
        cands = [{a: b, kf.i(a): kh.i(b)}, {a: kh.i(b), kf.i(a): b}]
        zv = {}
    else:
        back = {ha[d]: d for d in kh.darts}
        vback = {w: v for v, w in hv.items()}
        z = {}
        for d in kf.darts:
            if fa[d] not in back:
                return None
            z[d] = back[fa[d]]
        for d in kf.darts:
            z.setdefault(kf.i(d), kh.i(z[d]))
        if any(fv[v] not in vback for v in kf.vertices):
            return None
        zv = {v: vback[fv[v]] for v in kf.vertices}
        cands = [z]
    for z in cands:
        if _is_iso(kf, kh, z, zv) and all(fa[a] == ha[z[a]] for a in kf.arcs):
            return z, zv
    return None
