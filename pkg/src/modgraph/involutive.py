"""Finite involutive sets, colored finite sets and their bijections.

Identifiers ("atoms") are strings, ints, or nested tuples of atoms.  Every
collection is iterated in the order given by :func:`skey` so enumeration
output is reproducible.
"""
from __future__ import annotations

from itertools import permutations
from typing import Hashable, Iterable, Mapping

from .errors import DuplicateElement, MissingElement

Atom = Hashable


def skey(x):
    """Total order on atoms: ints < strings < tuples (recursively)."""
    if isinstance(x, bool):
        return (0, int(x))
    if isinstance(x, int):
        return (0, x)
    if isinstance(x, str):
        return (1, x)
    if isinstance(x, tuple):
        return (2, tuple(skey(e) for e in x))
    if isinstance(x, frozenset):
        return (3, tuple(sorted(skey(e) for e in x)))
    return (4, repr(x))


def sort_atoms(xs: Iterable) -> list:
    return sorted(xs, key=skey)


def atom_str(x) -> str:
    if isinstance(x, str):
        return x
    if isinstance(x, tuple):
        return "(" + ",".join(atom_str(e) for e in x) + ")"
    return str(x)


def formal_daggers(S: Iterable, taken: Iterable = ()) -> dict:
    """Fresh names for the formal involutes ``s†`` of the elements of ``S``.

    A string ``s`` gets ``s + '*'`` when that name is free, otherwise the
    tagged tuple ``('†', s)``.
    """
    S = list(S)
    used = set(S) | set(taken)
    out = {}
    for s in sort_atoms(S):
        cand = s + "*" if isinstance(s, str) else None
        if cand is None or cand in used:
            cand = ("†", s)
        used.add(cand)
        out[s] = cand
    return out


class InvolutiveSet:
    """A finite set with a self-inverse map ``dagger``.  Fixed points allowed."""

    __slots__ = ("_dagger", "_elements", "_hash")

    def __init__(self, dagger: Mapping):
        d = dict(dagger)
        for x, y in d.items():
            if y not in d or d[y] != x:
                raise ValueError(f"dagger is not an involution at {x!r}")
        self._dagger = d
        self._elements = tuple(sort_atoms(d))
        self._hash = None

    def dagger(self, x):
        return self._dagger[x]

    __call__ = dagger

    @property
    def elements(self) -> tuple:
        return self._elements

    def as_dict(self) -> dict:
        return dict(self._dagger)

    def __iter__(self):
        return iter(self._elements)

    def __len__(self):
        return len(self._elements)

    def __contains__(self, x):
        return x in self._dagger

    def __eq__(self, other):
        return isinstance(other, InvolutiveSet) and self._dagger == other._dagger

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple((x, self._dagger[x]) for x in self._elements))
        return self._hash

    def fixed_points(self) -> list:
        return [x for x in self._elements if self._dagger[x] == x]

    def classes(self) -> list[tuple]:
        """Involution orbits, each as a sorted tuple, in sorted order."""
        seen, out = set(), []
        for x in self._elements:
            if x in seen:
                continue
            orbit = tuple(sort_atoms({x, self._dagger[x]}))
            seen.update(orbit)
            out.append(orbit)
        return out

    def is_free(self) -> bool:
        return not self.fixed_points()

    def __repr__(self):
        parts = []
        for c in self.classes():
            parts.append(" ".join(atom_str(x) for x in c))
        return f"InvolutiveSet({' ; '.join(parts)})"


def make_involutive_set(elements: Iterable, pairing: Iterable[Iterable]) -> InvolutiveSet:
    """Build an involutive set from 1- and 2-element classes covering ``elements``."""
    elements = list(elements)
    if len(set(elements)) != len(elements):
        raise DuplicateElement("duplicate element in element list")
    universe = set(elements)
    dagger: dict = {}
    for cls in pairing:
        cls = list(cls)
        if len(cls) not in (1, 2) or len(set(cls)) != len(cls):
            raise DuplicateElement(f"bad involution class {cls!r}")
        for x in cls:
            if x in dagger:
                raise DuplicateElement(f"element {x!r} appears in two classes")
            if x not in universe:
                raise MissingElement(f"element {x!r} of pairing not among elements")
        if len(cls) == 1:
            dagger[cls[0]] = cls[0]
        else:
            a, b = cls
            dagger[a], dagger[b] = b, a
    missing = universe - set(dagger)
    if missing:
        raise MissingElement(f"elements missing from pairing: {sort_atoms(missing)!r}")
    return InvolutiveSet(dagger)


def trivial_involution(elements: Iterable) -> InvolutiveSet:
    return InvolutiveSet({x: x for x in elements})


class ColoredObject:
    """An object ``(S, xi)`` of the groupoid of finite sets over a color set."""

    __slots__ = ("carrier", "coloring")

    def __init__(self, coloring: Mapping):
        self.coloring = dict(coloring)
        self.carrier = tuple(sort_atoms(self.coloring))

    def __eq__(self, other):
        return isinstance(other, ColoredObject) and self.coloring == other.coloring

    def __hash__(self):
        return hash(tuple((s, self.coloring[s]) for s in self.carrier))

    def __len__(self):
        return len(self.carrier)

    def profile(self) -> tuple:
        """Sorted color multiset; two objects are isomorphic iff profiles agree."""
        return tuple(sort_atoms(self.coloring.values()))

    def __repr__(self):
        inner = ", ".join(f"{atom_str(s)}:{atom_str(self.coloring[s])}" for s in self.carrier)
        return f"({inner})"


def is_bij_morphism(f: Mapping, src: ColoredObject, dst: ColoredObject) -> bool:
    """True iff ``f`` is a color-preserving bijection ``src.carrier -> dst.carrier``."""
    if set(f) != set(src.carrier):
        return False
    image = [f[s] for s in src.carrier]
    if len(set(image)) != len(image) or set(image) != set(dst.carrier):
        return False
    return all(src.coloring[s] == dst.coloring[f[s]] for s in src.carrier)


def bij_morphisms(src: ColoredObject, dst: ColoredObject) -> list[dict]:
    """All morphisms ``src -> dst``, generated block by block over colors."""
    if src.profile() != dst.profile():
        return []
    blocks: dict = {}
    for s in src.carrier:
        blocks.setdefault(src.coloring[s], [[], []])[0].append(s)
    for s in dst.carrier:
        blocks[dst.coloring[s]][1].append(s)
    out = [{}]
    for color in sort_atoms(blocks):
        a, b = blocks[color]
        out = [_merge(f, a, p) for f in out for p in permutations(b)]
    return out


def _merge(f, keys, values):
    g = dict(f)
    g.update(zip(keys, values))
    return g


def involutive_extension(xi: Mapping, colors: InvolutiveSet, daggers: Mapping | None = None) -> dict:
    """The unique involutive map on ``2S`` extending ``xi: S -> colors``.

    ``daggers`` names the formal involutes ``s†``; by default the names used
    by :func:`formal_daggers` (and so by ``star_of``).
    """
    if daggers is None:
        daggers = formal_daggers(xi)
    out = {}
    for s, c in xi.items():
        out[s] = c
        out[daggers[s]] = colors.dagger(c)
    return out
