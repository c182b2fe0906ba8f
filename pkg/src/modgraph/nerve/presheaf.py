"""Presheaves of finite sets on a truncated site."""
from __future__ import annotations

from typing import Mapping

from ..errors import NotFunctorial
from ..involutive import skey
from .site import TruncatedSite


class Presheaf:
    """Value sets ``X_G`` per site object and contravariant actions per morphism.

    ``action[key(m)]`` for ``m: H -> G`` is a dict ``X_G -> X_H``.
    """

    def __init__(self, site: TruncatedSite, values: Mapping, action: Mapping, name: str = "X"):
        self.site = site
        self.values = {n: list(vs) for n, vs in values.items()}
        self.action = {k: dict(t) for k, t in action.items()}
        self.name = name

    def act(self, m) -> dict:
        return self.action[self.site.key(m)]

    def apply(self, m, x):
        return self.action[self.site.key(m)][x]

    def size(self, name) -> int:
        return len(self.values[name])

    def check(self) -> list[str]:
        """Totality, identities and composites that stay inside the site."""
        S, bad = self.site, []
        for m in S.morphisms():
            a, b = S.ends(m)
            t = self.action.get(S.key(m))
            if t is None or set(t) != set(self.values[b]) or not set(t.values()) <= set(self.values[a]):
                bad.append(f"action of a map {a} -> {b} is not a function X_{b} -> X_{a}")
        if bad:
            return bad
        for n in S.names:
            t = self.act(S.identity(n))
            if any(t[x] != x for x in self.values[n]):
                bad.append(f"identity of {n} acts nontrivially")
        for a in S.names:
            for b in S.names:
                for phi in S.hom[(a, b)]:
                    tphi = self.act(phi)
                    for c in S.names:
                        for psi in S.hom[(b, c)]:
                            k = S.key(S.compose(psi, phi))
                            if k not in S.index:
                                continue
                            tpsi, tc = self.act(psi), self.action[k]
                            for x in self.values[c]:
                                if tc[x] != tphi[tpsi[x]]:
                                    bad.append(f"composite {a} -> {b} -> {c} at {x!r}")
                                    break
        return bad

    def require_functor(self):
        bad = self.check()
        if bad:
            raise NotFunctorial(bad[0])
        return self

    def restrict(self, site: TruncatedSite, along) -> "Presheaf":
        """``along*`` of this presheaf: ``along`` sends morphisms of ``site`` to ours."""
        action = {}
        for m in site.morphisms():
            action[site.key(m)] = self.act(along(m))
        values = {n: self.values[n] for n in site.names}
        return Presheaf(site, values, action, name=f"restricted {self.name}")

    def summary(self) -> str:
        return "\n".join(f"{n}: {len(self.values[n])}" for n in self.site.names)


def relabel_values(X: Presheaf, bij: Mapping) -> Presheaf:
    """Transport ``X`` along bijections ``bij[name][x]`` of its value sets."""
    S = X.site
    values = {n: sorted((bij[n][x] for x in X.values[n]), key=skey) for n in S.names}
    action = {}
    for m in S.morphisms():
        a, b = S.ends(m)
        t = X.act(m)
        action[S.key(m)] = {bij[b][x]: bij[a][y] for x, y in t.items()}
    return Presheaf(S, values, action, name=f"relabeled {X.name}")


def automorphism_keys(site: TruncatedSite, name) -> set:
    ident = site.key(site.identity(name))
    ms = site.hom[(name, name)]
    return {site.key(m) for m in ms
            if any(site.key(site.compose(n, m)) == ident for n in ms)}


def _orbit(X: Presheaf, name, x) -> set:
    S = X.site
    auts = [S.index[k] for k in automorphism_keys(S, name)]
    orb, stack = {x}, [x]
    while stack:
        y = stack.pop()
        for m in auts:
            z = X.act(m)[y]
            if z not in orb:
                orb.add(z)
                stack.append(z)
    return orb


def _only_automorphisms_out(X: Presheaf, name) -> bool:
    S = X.site
    return all(not S.hom[(name, b)] for b in S.names if b != name)


def delete_orbit(X: Presheaf, name, x) -> Presheaf:
    """Remove the automorphism orbit of ``x`` from ``X_name``.

    Only legal at an object with no outgoing maps to other objects, so that
    no action lands in the removed elements.
    """
    if not _only_automorphisms_out(X, name):
        raise ValueError(f"{name} has maps to other objects; deletion would break functoriality")
    S = X.site
    orb = _orbit(X, name, x)
    values = dict(X.values)
    values[name] = [y for y in X.values[name] if y not in orb]
    action = {}
    for m in S.morphisms():
        a, b = S.ends(m)
        t = X.act(m)
        if b == name:
            t = {y: z for y, z in t.items() if y not in orb}
        action[S.key(m)] = t
    return Presheaf(S, values, action, name=f"{X.name} minus orbit at {name}")


def duplicate_orbit(X: Presheaf, name, x) -> Presheaf:
    """Add a tagged copy ``("dup", y)`` of every ``y`` in the orbit of ``x`` in ``X_name``."""
    S = X.site
    orb = _orbit(X, name, x)
    auts = automorphism_keys(S, name)
    values = dict(X.values)
    values[name] = list(X.values[name]) + [("dup", y) for y in sorted(orb, key=skey)]
    action = {}
    for m in S.morphisms():
        a, b = S.ends(m)
        k = S.key(m)
        t = dict(X.act(m))
        if b == name:
            for y in orb:
                # copies go to copies along automorphisms, to the original elsewhere
                t[("dup", y)] = ("dup", t[y]) if k in auts else t[y]
        action[k] = t
    return Presheaf(S, values, action, name=f"{X.name} plus orbit copy at {name}")
