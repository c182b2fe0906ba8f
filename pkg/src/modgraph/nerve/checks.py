"""Fully-faithfulness of the nerve and the checks transferring the Segal condition to JK sites."""
from __future__ import annotations

from collections import deque
from itertools import combinations_with_replacement, product
from typing import Mapping, NamedTuple

from ..graph import exceptional_edge, nodeless_loop
from ..involutive import skey
from ..modops.decorated import DecoratedGraph
from ..modops.maps import OperadMap, maps_to_operad
from ..modops.tabulated import TabElem, arrange, stabilizer
from .nerve import NervePresheaf
from .presheaf import Presheaf
from .segal import segal_check
from .site import TruncatedSite


class CheckReport(NamedTuple):
    ok: bool
    detail: str
    counts: tuple = ()


def object_order(site: TruncatedSite) -> list:
    return sorted(site.names, key=lambda n: (len(site.objects[n].vertices) > 1,
                                             len(site.objects[n].vertices),
                                             len(site.objects[n].arcs), n))


# -- morphisms of presheaves ---------------------------------------------------

def natural_failures(X: Presheaf, Y: Presheaf, alpha: Mapping) -> list[str]:
    S, bad = X.site, []
    for n in S.names:
        if set(alpha[n]) != set(X.values[n]) or not set(alpha[n].values()) <= set(Y.values[n]):
            bad.append(f"component at {n} is not a function X_{n} -> Y_{n}")
    if bad:
        return bad
    for m in S.morphisms():
        a, b = S.ends(m)
        tx, ty = X.act(m), Y.act(m)
        for x in X.values[b]:
            if alpha[a][tx[x]] != ty[alpha[b][x]]:
                bad.append(f"naturality fails for a map {a} -> {b} at {x!r}")
                break
    return bad


def natural_transformations(X: Presheaf, Y: Presheaf, limit: int | None = None) -> list[dict]:
    """All morphisms ``X -> Y`` by backtracking over elements with forward checking."""
    S = X.site
    order = [(n, x) for n in object_order(S) for x in X.values[n]]
    rank = {v: k for k, v in enumerate(order)}
    # constraint (G, x) ~ (H, X(m)(x)) : alpha_H(X(m)(x)) = Y(m)(alpha_G(x))
    cons: dict = {v: [] for v in order}
    for m in S.morphisms():
        a, b = S.ends(m)
        tx, ty = X.act(m), Y.act(m)
        for x in X.values[b]:
            src, tgt = (b, x), (a, tx[x])
            later = src if rank[src] >= rank[tgt] else tgt
            cons[later].append((src, tgt, ty))
    out: list = []
    val: dict = {}

    def rec(k):
        if limit is not None and len(out) >= limit:
            return
        if k == len(order):
            alpha = {n: {} for n in S.names}
            for (n, x), z in val.items():
                alpha[n][x] = z
            out.append(alpha)
            return
        v = order[k]
        for z in Y.values[v[0]]:
            val[v] = z
            if all(val[tgt] == ty[val[src]] for src, tgt, ty in cons[v]):
                rec(k + 1)
            del val[v]

    rec(0)
    return out


def alpha_key(alpha: Mapping) -> tuple:
    return tuple((n, tuple(sorted(((skey(x), skey(z)) for x, z in t.items()))))
                 for n, t in sorted(alpha.items(), key=lambda kv: skey(kv[0])))


# -- maps of tabulated operads ------------------------------------------------

class OperadMorphism(NamedTuple):
    f0: dict
    f1: dict        # (profile, name) -> element of Q over positions 0..k-1

    def on(self, P, Q, x: TabElem):
        y = self.f1[(x.profile, x.name)]
        return Q.relabel(y, {j: x.pos[j] for j in range(len(x.pos))})

    def key(self, Q):
        return (tuple(sorted((skey(c), skey(d)) for c, d in self.f0.items())),
                tuple(sorted((skey(k), Q.key(y, list(range(len(k[0])))))
                             for k, y in self.f1.items())))


def gamma_constraints(P, site: TruncatedSite) -> list[DecoratedGraph]:
    """Decorated graphs over ``P`` with shapes in the site, plus units and nodeless loops."""
    out = []
    for g in site.objects.values():
        if not g.vertices:
            continue
        for y in maps_to_operad(g, P):
            out.append(DecoratedGraph(g, y.f0, {b: b for b in g.boundary}, y.f1, P))
    e, l = exceptional_edge(), nodeless_loop()
    for c in P.colors.elements:
        c2 = P.colors.dagger(c)
        out.append(DecoratedGraph(e, {"e": c, "e*": c2}, {"s": "e", "t": "e*"}, {}, P))
        out.append(DecoratedGraph(l, {"l": c, "l*": c2}, {}, {}, P))
    return out


def operad_maps(P, Q, max_arity: int, site: TruncatedSite | None = None) -> list[OperadMorphism]:
    """Maps ``P -> Q`` of tabulated operads up to ``max_arity``.

    Equivariance is imposed fiberwise; compatibility with ``γ`` is checked on
    :func:`gamma_constraints` of the site (or on units and loops alone).
    """
    cols = sorted(P.colors.elements, key=skey)
    profiles = [tuple(p) for ar in range(max_arity + 1)
                for p in combinations_with_replacement(cols, ar) if tuple(p) in P.names]
    pidx = {p: k for k, p in enumerate(profiles)}
    tests = gamma_constraints(P, site) if site is not None else gamma_constraints(P, _NoSite())
    staged: list = [[] for _ in range(len(profiles) + 1)]
    for d in tests:
        need = {pidx.get(x.profile, -1) for x in d.deco.values()}
        out_p = arrange(d.xi())[0]
        if len(out_p) > max_arity or -1 in need:
            continue
        need.add(pidx.get(out_p, -1))
        staged[max(need) + 1 if need else 0].append(d)
    out = []
    for f0 in _involutive_color_maps(P.colors, Q.colors):
        if any(not _gamma_ok(P, Q, OperadMorphism(f0, {}), d) for d in staged[0]):
            continue
        f1: dict = {}

        def rec(k):
            if k == len(profiles):
                out.append(OperadMorphism(dict(f0), dict(f1)))
                return
            p = profiles[k]
            for choice in _equivariant_choices(P, Q, p, f0):
                f1.update({(p, n): y for n, y in choice.items()})
                F = OperadMorphism(f0, f1)
                if all(_gamma_ok(P, Q, F, d) for d in staged[k + 1]):
                    rec(k + 1)
                for n in choice:
                    del f1[(p, n)]

        rec(0)
    return out


class _NoSite:
    objects: dict = {}


def _involutive_color_maps(C, D) -> list[dict]:
    out = []
    reps = [c for c in C.elements if skey(c) <= skey(C.dagger(c))]
    for pick in product(D.elements, repeat=len(reps)):
        f0, ok = {}, True
        for c, d in zip(reps, pick):
            if C.dagger(c) == c and D.dagger(d) != d:
                ok = False
                break
            f0[c], f0[C.dagger(c)] = d, D.dagger(d)
        if ok:
            out.append(f0)
    return out


def _equivariant_choices(P, Q, p, f0):
    """Stabilizer-equivariant assignments ``name -> Q element`` on the fiber over ``p``."""
    k = len(p)
    legs = list(range(k))
    xi = {j: f0[p[j]] for j in legs}
    targets = Q.fiber(xi)
    stab = stabilizer(p)
    names = list(P.names[p])
    orbits, seen = [], set()
    for n in names:
        if n in seen:
            continue
        orb = {}
        for s in stab:
            orb.setdefault(P.act[p][s][n], s)
        seen.update(orb)
        orbits.append((n, orb))

    def rec(i, acc):
        if i == len(orbits):
            yield dict(acc)
            return
        n, orb = orbits[i]
        for y in targets:
            # y must be fixed by the stabilizer of n, transported to the rest of the orbit
            good = True
            for s in stab:
                if P.act[p][s][n] == n and \
                        Q.key(Q.relabel(y, {j: s[j] for j in legs}), legs) != Q.key(y, legs):
                    good = False
                    break
            if not good:
                continue
            for m, s in orb.items():
                acc[m] = Q.relabel(y, {j: s[j] for j in legs})
            yield from rec(i + 1, acc)
            for m in orb:
                del acc[m]

    yield from rec(0, {})


def _push(P, Q, F: OperadMorphism, d: DecoratedGraph) -> DecoratedGraph:
    return DecoratedGraph(d.shape, {a: F.f0[c] for a, c in d.zeta.items()}, d.f,
                          {w: F.on(P, Q, x) for w, x in d.deco.items()}, Q)


def _gamma_ok(P, Q, F: OperadMorphism, d: DecoratedGraph) -> bool:
    legs = sorted(d.f, key=skey)
    lhs = P.gamma(d)
    q = Q.gamma(_push(P, Q, F, d))
    return Q.key(F.on(P, Q, lhs), legs) == Q.key(q, legs)


def induced_transformation(F: OperadMorphism, NP: NervePresheaf, NQ: NervePresheaf) -> dict:
    """``N(F)``: postcomposition with ``F``."""
    P, Q = NP.operad, NQ.operad
    alpha = {}
    for n in NP.site.names:
        t = {}
        for k, y in enumerate(NP.elements[n]):
            z = OperadMap(y.graph, Q, {a: F.f0[c] for a, c in y.f0.items()},
                          {v: F.on(P, Q, x) for v, x in y.f1.items()})
            t[k] = NQ.index_of(z)
        alpha[n] = t
    return alpha


def fullyfaithful_check(NP: NervePresheaf, NQ: NervePresheaf) -> CheckReport:
    """Presheaf maps ``N(P) -> N(Q)`` versus operad maps ``P -> Q`` within the site's arities."""
    site = NP.site
    P, Q = NP.operad, NQ.operad
    max_ar = max(len(site.objects[n].boundary) for n in site.names
                 if site.objects[n].is_star())
    nats = natural_transformations(NP, NQ)
    maps = operad_maps(P, Q, max_ar, site)
    nat_keys = {alpha_key(a) for a in nats}
    induced = {}
    for F in maps:
        k = alpha_key(induced_transformation(F, NP, NQ))
        induced.setdefault(k, []).append(F)
    counts = (len(nats), len(maps))
    multi = [k for k, fs in induced.items() if len(fs) > 1]
    if multi:
        return CheckReport(False, "two operad maps induce the same presheaf map", counts)
    if set(induced) != nat_keys:
        extra = len(nat_keys - set(induced))
        return CheckReport(False, f"{extra} presheaf maps are not induced by an operad map",
                           counts)
    return CheckReport(True, f"{len(nats)} presheaf maps, {len(maps)} operad maps", counts)


# -- JK sites -------------------------------------------------------------------

def restrict_to_u(X: Presheaf, usite: TruncatedSite) -> Presheaf:
    """``ι*X`` for a presheaf on a JK site with the same objects."""
    J = X.site
    return X.restrict(usite, lambda m: J.index[J.key(J.of_graphical(m))])


def segal_transfer(X: Presheaf, usite: TruncatedSite) -> CheckReport:
    """``X`` Segal on the JK site iff ``ι*X`` is Segal on the U site, object by object."""
    Y = restrict_to_u(X, usite)
    rows, sx, sy = [], True, True
    for n in X.site.names:
        a, b = segal_check(X, n).ok, segal_check(Y, n).ok
        sx, sy = sx and a, sy and b
        rows.append(f"{n}:{int(a)}{int(b)}")
    agree = all(r[-1] == r[-2] for r in rows)
    return CheckReport(agree and sx == sy, " ".join(rows), (sx, sy))


def counit_check(X: Presheaf, usite: TruncatedSite, K) -> CheckReport:
    """The bounded limit of ``ι*X`` over ``K ↓ ι^op`` compared with ``X_K``."""
    J = X.site
    Y = restrict_to_u(X, usite)
    objs = [(h, m) for h in J.names for m in J.hom[(h, K)]]
    okey = {(h, J.key(m)): i for i, (h, m) in enumerate(objs)}
    # arrows (H, g) -> (H', g') given by u: H' -> H with g ∘ J(u) = g'
    arrows = []
    for i, (h, g) in enumerate(objs):
        for h2 in J.names:
            for u in usite.hom[(h2, h)]:
                comp = J.compose(g, J.of_graphical(u))
                j = okey.get((h2, J.key(comp)))
                if j is None:
                    return CheckReport(False, f"composite into {K} leaves the bounded site")
                arrows.append((i, j, Y.act(u)))
    n_id = okey[(K, J.key(J.identity(K)))]
    count = _count_limit(objs, arrows, lambda i: X.values[objs[i][0]], n_id,
                         cap=len(X.values[K]) + 1)
    # the comparison map X_K -> lim
    for x in X.values[K]:
        fam = [X.act(g)[x] for _, g in objs]
        for i, j, t in arrows:
            if t[fam[i]] != fam[j]:
                return CheckReport(False, f"{K}: the image of {x!r} is not a cone")
    ok = count == len(X.values[K])
    return CheckReport(ok, f"{K}: |lim| {'>' if count > len(X.values[K]) else '='}"
                           f" {min(count, len(X.values[K]))} over {len(objs)} objects and "
                           f"{len(arrows)} arrows", (count, len(X.values[K])))


def _count_limit(objs, arrows, dom, start, cap):
    """Number of compatible families, stopping once ``cap`` is reached."""
    n = len(objs)
    adj = [[] for _ in range(n)]
    for i, j, t in arrows:
        adj[i].append(j)
        adj[j].append(i)
    order, seen = [], set()
    for root in [start] + list(range(n)):
        if root in seen:
            continue
        seen.add(root)
        q = deque([root])
        while q:
            i = q.popleft()
            order.append(i)
            for j in adj[i]:
                if j not in seen:
                    seen.add(j)
                    q.append(j)
    rank = {v: k for k, v in enumerate(order)}
    cons = [[] for _ in range(n)]
    for i, j, t in arrows:
        cons[order[max(rank[i], rank[j])]].append((i, j, t))
    val: dict = {}
    found = [0]

    def rec(k):
        if found[0] >= cap:
            return
        if k == n:
            found[0] += 1
            return
        v = order[k]
        for y in dom(v):
            val[v] = y
            if all(t[val[i]] == val[j] for i, j, t in cons[v]):
                rec(k + 1)
            del val[v]

    rec(0)
    return found[0]


def elementary_names(site: TruncatedSite) -> list:
    return [n for n in site.names if site.objects[n].is_elementary()]


def bijective_transfer(X: Presheaf, Y: Presheaf, alpha: Mapping) -> CheckReport:
    """A map of Segal presheaves bijective on elementary objects is bijective everywhere."""
    bad = natural_failures(X, Y, alpha)
    if bad:
        return CheckReport(False, "not natural: " + bad[0])
    S = X.site

    def bij(n):
        t = alpha[n]
        return len(set(t.values())) == len(t) and set(t.values()) == set(Y.values[n])

    elem = elementary_names(S)
    if not all(bij(n) for n in elem):
        return CheckReport(True, "premise fails: not bijective on elementary objects", (0,))
    for n in S.names:
        if not bij(n):
            return CheckReport(False, f"bijective on elementary objects but not at {n}")
    return CheckReport(True, f"bijective at all {len(S.names)} objects", (1,))


def jk_checks(X: Presheaf, usite: TruncatedSite, morphisms=()) -> list[CheckReport]:
    """(a) Segal transfer, (b) elementary counit, (c) bijectivity transfer for given maps."""
    out = [segal_transfer(X, usite)]
    for K in elementary_names(X.site):
        out.append(counit_check(X, usite, K))
    for Y, alpha in morphisms:
        out.append(bijective_transfer(X, Y, alpha))
    return out
