"""Random decorated graphs for fuzzing operad laws."""
from __future__ import annotations

import random

from ..graph import build_graph
from .decorated import DecoratedGraph


def random_shape(rng: random.Random, colors, n_vertices: int, max_valence: int = 3,
                 max_boundary: int = 3, extra_edges: int = 1, tries: int = 50):
    """A random connected colored shape as ``(graph, zeta, f)`` or ``None``."""
    cols = list(colors.elements)
    for _ in range(tries):
        arcs, inc, zeta = [], {}, {}
        val = [0] * n_vertices
        count = [0]

        def edge(u, w):
            c = rng.choice(cols)
            a, b = f"a{count[0]}", f"b{count[0]}"
            count[0] += 1
            # dart a at u colored c, its involute b (a dart at w) colored c†
            arcs.append((a, b))
            inc[a], inc[b] = f"w{u}", f"w{w}"
            zeta[a], zeta[b] = c, colors.dagger(c)
            val[u] += 1
            val[w] += 1

        for k in range(1, n_vertices):
            edge(rng.randrange(k), k)
        for _ in range(rng.randint(0, extra_edges)):
            u, w = rng.randrange(n_vertices), rng.randrange(n_vertices)
            edge(u, w)
        if max(val, default=0) > max_valence:
            continue
        nlegs = rng.randint(0, max_boundary)
        legs = []
        for j in range(nlegs):
            u = rng.randrange(n_vertices)
            if val[u] >= max_valence:
                continue
            c = rng.choice(cols)
            d, b = f"d{j}", f"s{j}"
            arcs.append((d, b))
            inc[d] = f"w{u}"
            zeta[b], zeta[d] = c, colors.dagger(c)
            val[u] += 1
            legs.append(b)
        g = build_graph(arcs, inc, vertices=[f"w{k}" for k in range(n_vertices)])
        return g, zeta, {b: b for b in legs}
    return None


def random_decorated(rng: random.Random, P, n_vertices: int, **kw) -> DecoratedGraph | None:
    shape = random_shape(rng, P.colors, n_vertices, **kw)
    if shape is None:
        return None
    g, zeta, f = shape
    deco = {}
    for w in g.vertices:
        fib = P.fiber({a: zeta[a] for a in g.legs(w)})
        if not fib:
            return None
        deco[w] = rng.choice(fib)
    return DecoratedGraph(g, zeta, {("s", b): b for b in f}, deco, P)
