"""The Segal condition for presheaves on a truncated site."""
from __future__ import annotations

from typing import NamedTuple

from ..graphical import segal_core_data
from .presheaf import Presheaf


class SegalResult(NamedTuple):
    ok: bool
    witness: str | None
    core_size: int


class CoreMaps(NamedTuple):
    stars: list     # (v, star name, site morphism ★ -> G)
    edges: list     # (u, major map ↕ -> ★_u, w, minor map ↕ -> ★_w)


def core_maps(site, name) -> CoreMaps:
    g = site.objects[name]
    core = segal_core_data(g)
    stars = [(v, site.locate(h)[0], site.transport(iota)) for v, h, iota in core.stars]
    edges = [(g.t[x1], site.transport(maj), g.t[x2], site.transport(mnr))
             for (x1, x2), maj, mnr in core.edges]
    return CoreMaps(stars, edges)


def core_equalizer(X: Presheaf, cm: CoreMaps) -> list[tuple]:
    """Tuples in ``∏_v X_{★_v}`` agreeing on every internal edge."""
    vs = [v for v, _, _ in cm.stars]
    pos = {v: k for k, v in enumerate(vs)}
    doms = [X.values[s] for _, s, _ in cm.stars]
    tabs = [(pos[u], X.act(mu), pos[w], X.act(mw)) for u, mu, w, mw in cm.edges]
    out = []

    def rec(k, acc):
        if k == len(vs):
            out.append(tuple(acc))
            return
        for y in doms[k]:
            acc.append(y)
            if all(ta[acc[iu]] == tb[acc[iw]] for iu, ta, iw, tb in tabs if max(iu, iw) == k):
                rec(k + 1, acc)
            acc.pop()

    rec(0, [])
    return out


def segal_check(X: Presheaf, name) -> SegalResult:
    """Is ``X_G -> X_{Sc[G]}`` a bijection?"""
    site = X.site
    g = site.objects[name]
    if not g.vertices:
        return SegalResult(True, None, len(X.values[name]))
    cm = core_maps(site, name)
    eq = core_equalizer(X, cm)
    tabs = [X.act(m) for _, _, m in cm.stars]
    seen = {}
    for x in X.values[name]:
        img = tuple(t[x] for t in tabs)
        if img in seen:
            return SegalResult(False, f"{name}: elements {seen[img]!r} and {x!r} have the same "
                                      f"restriction {img!r}", len(eq))
        seen[img] = x
    missing = [t for t in eq if t not in seen]
    if missing:
        return SegalResult(False, f"{name}: core element {missing[0]!r} has no preimage",
                           len(eq))
    return SegalResult(True, None, len(eq))


def is_segal(X: Presheaf) -> tuple[bool, str | None]:
    for n in X.site.names:
        r = segal_check(X, n)
        if not r.ok:
            return False, r.witness
    return True, None
