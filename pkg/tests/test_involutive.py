from itertools import product

import pytest

from modgraph.errors import DuplicateElement, MissingElement
from modgraph.involutive import (ColoredObject, bij_morphisms, formal_daggers,
                                 involutive_extension, make_involutive_set, skey)


def test_dagger_is_an_involution():
    C = make_involutive_set(["c", "c*", "d"], [["c", "c*"], ["d"]])
    assert all(C.dagger(C.dagger(x)) == x for x in C)
    assert C.fixed_points() == ["d"]
    assert not C.is_free()


@pytest.mark.parametrize("elements,pairing,err", [
    (["a", "a"], [["a"]], DuplicateElement),
    (["a", "b"], [["a", "b"], ["b"]], DuplicateElement),
    (["a", "b"], [["a"]], MissingElement),
    (["a"], [["a", "z"]], MissingElement),
])
def test_bad_pairings(elements, pairing, err):
    with pytest.raises(err):
        make_involutive_set(elements, pairing)


def test_order_is_total_across_types():
    xs = [("t", 1), "b", 3, "a", 0, ("s",)]
    assert sorted(xs, key=skey) == [0, 3, "a", "b", ("s",), ("t", 1)]


def test_formal_daggers_avoid_collisions():
    d = formal_daggers(["a", "a*"])
    assert d["a"] != "a*" and len(set(d.values())) == 2


def test_extension_is_the_unique_involutive_map():
    C = make_involutive_set(["c", "c*", "d"], [["c", "c*"], ["d"]])
    for n in range(4):
        S = list(range(n))
        for xi in product(C.elements, repeat=n):
            xi = dict(zip(S, xi))
            ext = involutive_extension(xi, C)
            dag = formal_daggers(S)
            # brute force: every map on 2S that restricts to xi and commutes with the involutions
            doms = S + [dag[s] for s in S]
            hits = 0
            for vals in product(C.elements, repeat=len(doms)):
                f = dict(zip(doms, vals))
                if all(f[s] == xi[s] and f[dag[s]] == C.dagger(f[s]) for s in S):
                    hits += 1
                    assert f == ext
            assert hits == 1


def test_bij_morphisms_count():
    src = ColoredObject({1: "c", 2: "c", 3: "d"})
    dst = ColoredObject({"x": "c", "y": "d", "z": "c"})
    assert len(bij_morphisms(src, dst)) == 2
