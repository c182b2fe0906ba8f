"""Checks of the monad laws and of the algebra laws of an operad."""
from __future__ import annotations

import random
from itertools import combinations_with_replacement
from typing import NamedTuple

from ..graph import Graph
from ..involutive import skey, sort_atoms
from .decorated import (DecoratedGraph, FreeCollection, eta_at_vertices, eta_outside,
                        monad_mult, monad_T, monad_unit)
from .sampling import random_decorated


class LawReport(NamedTuple):
    ok: bool
    checked: int
    witness: str | None = None


def connected_partitions(g: Graph) -> list[list[frozenset]]:
    """Partitions of the vertices into blocks that are connected through internal edges."""
    vs = list(g.vertices)
    adj = {v: set() for v in vs}
    for a, b in g.internal_edges():
        u, w = g.t[a], g.t[b]
        adj[u].add(w)
        adj[w].add(u)

    def connected(block):
        block = set(block)
        start = next(iter(block))
        seen, stack = {start}, [start]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y in block and y not in seen:
                    seen.add(y)
                    stack.append(y)
        return seen == block

    out = []

    def rec(rest, acc):
        if not rest:
            out.append(list(acc))
            return
        first, others = rest[0], rest[1:]
        n = len(others)
        for mask in range(1 << n):
            block = frozenset([first] + [others[k] for k in range(n) if mask >> k & 1])
            if connected(block):
                rec([x for x in others if x not in block], acc + [block])

    rec(vs, [])
    return out


def nest(d: DecoratedGraph, blocks: list) -> DecoratedGraph:
    """The two-level decorated graph whose flattening is ``d``, grouped by ``blocks``.

    Each block becomes an outer vertex decorated by the sub-decorated graph it
    spans; legs of an outer vertex keep their arc names.
    """
    k = d.shape
    block_of = {v: n for n, b in enumerate(blocks) for v in b}
    inner_edges = set()
    for a, b in k.internal_edges():
        if block_of[k.t[a]] == block_of[k.t[b]]:
            inner_edges.update((a, b))
    # outer shape: every arc not inside a block
    arcs = [e for e in k.edges() if e[0] not in inner_edges]
    inc = {a: ("B", block_of[k.t[a]]) for a in k.darts if a not in inner_edges}
    from ..graph import build_graph
    outer = build_graph(arcs, inc, vertices=[("B", n) for n in range(len(blocks))],
                        boundary=k.boundary)
    fc = FreeCollection(d.coll)
    deco = {}
    for n, b in enumerate(blocks):
        darts = [a for v in sort_atoms(b) for a in k.nbhd(v)]
        pairs, done = [], set()
        for a in darts:
            if a in done:
                continue
            j = k.i(a)
            pairs.append((a, j))
            done.update((a, j))
        inner = build_graph(pairs, {a: k.t[a] for a in darts}, vertices=sort_atoms(b))
        zeta = {a: d.zeta[a] for a in inner.arcs}
        f = {leg: leg for leg in outer.legs(("B", n))}
        deco[("B", n)] = DecoratedGraph(inner, zeta, f, {v: d.deco[v] for v in b}, d.coll)
    return DecoratedGraph(outer, {a: d.zeta[a] for a in outer.arcs}, d.f, deco, fc)


def monad_law_failures(d: DecoratedGraph, three_level: bool = True) -> list[str]:
    """Check unit and associativity laws on ``d`` and every nesting of it."""
    bad = []
    if monad_mult(eta_at_vertices(d)) != d:
        bad.append("mu . T eta != id")
    if monad_mult(eta_outside(d)) != d:
        bad.append("mu . eta T != id")
    if not d.shape.vertices:
        return bad
    for blocks in connected_partitions(d.shape):
        dd = nest(d, blocks)
        if monad_mult(dd) != d:
            bad.append(f"mu(nest) != d for blocks {blocks!r}")
            continue
        if not three_level:
            continue
        for groups in connected_partitions(dd.shape):
            ddd = nest(dd, groups)
            inner_first = monad_mult(monad_T(ddd, lambda x, legs: monad_mult(x), dd.coll))
            outer_first = monad_mult(monad_mult(ddd))
            if inner_first != outer_first:
                bad.append(f"associativity fails for blocks {blocks!r} groups {groups!r}")
    return bad


def check_monad_laws(elements, three_level: bool = True) -> LawReport:
    n = 0
    for d in elements:
        n += 1
        bad = monad_law_failures(d, three_level)
        if bad:
            return LawReport(False, n, bad[0] + "\n" + d.text())
    return LawReport(True, n)


def _gamma_of_nest(P, dd):
    """``γ ∘ T γ`` on a two-level decorated graph."""
    return P.gamma(monad_T(dd, lambda x, legs: P.gamma(x), P))


def check_heart_square(P, decorated) -> LawReport:
    """``γ ∘ μ = γ ∘ Tγ`` on every connected nesting of each given decorated graph."""
    n = 0
    for d in decorated:
        legs = sort_atoms(d.f)
        try:
            whole = P.gamma(d)
        except Exception as exc:  # arity bounds of tabulated evaluators
            if type(exc).__name__ == "ArityBoundExceeded":
                continue
            raise
        for blocks in connected_partitions(d.shape) if d.shape.vertices else []:
            n += 1
            dd = nest(d, blocks)
            try:
                lhs = P.gamma(monad_mult(dd))
                rhs = _gamma_of_nest(P, dd)
            except Exception as exc:
                if type(exc).__name__ == "ArityBoundExceeded":
                    continue
                raise
            if P.key(lhs, legs) != P.key(rhs, legs) or P.key(lhs, legs) != P.key(whole, legs):
                return LawReport(False, n, "heart square fails on\n" + d.text()
                                 + f"\nblocks {blocks!r}")
    return LawReport(True, n)


def check_unit_law(P, max_arity: int) -> LawReport:
    """``γ ∘ η = id`` on every fiber up to ``max_arity``."""
    n = 0
    cols = sorted(P.colors.elements, key=skey)
    for ar in range(max_arity + 1):
        for prof in combinations_with_replacement(cols, ar):
            xi = {k: c for k, c in enumerate(prof)}
            legs = list(xi)
            for x in P.fiber(xi):
                n += 1
                y = P.gamma(monad_unit(x, xi, P))
                if P.key(y, legs) != P.key(x, legs):
                    return LawReport(False, n, f"unit law fails at {P.show(x)} over {prof!r}")
    return LawReport(True, n)


def check_algebra_laws(P, max_arity: int, size_bound: int = 3, samples: int = 40,
                       seed: int = 0, shape_kw: dict | None = None) -> LawReport:
    """Unit law on every fiber up to ``max_arity``; heart square on sampled nestings."""
    rep = check_unit_law(P, max_arity)
    if not rep.ok:
        return rep
    rng = random.Random(seed)
    kw = dict(max_valence=3, max_boundary=3, extra_edges=1)
    kw.update(shape_kw or {})
    sample, attempts = [], 0
    while len(sample) < samples and attempts < samples * 20:
        attempts += 1
        d = random_decorated(rng, P, rng.randint(1, size_bound), **kw)
        if d is not None:
            sample.append(d)
    heart = check_heart_square(P, sample)
    return LawReport(heart.ok, rep.checked + heart.checked, heart.witness)
