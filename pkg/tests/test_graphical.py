import random

import pytest

from helpers import connected_safe_graphs
from modgraph import errors as E
from modgraph.etale import EmbeddingClass, enumerate_embeddings, vertex_class
from modgraph.graph import (cycle_graph, exceptional_edge, cover_base, double_cover,
                            double_cover_map, linear_graph, loop_graph, nodeless_loop, star)
from modgraph.graphical import (EXTENDED, compatible_isos, compose, compose_by_records,
                                factorize, homset, identity, is_active, make_graphical_map,
                                segal_core_data, star_active, validate_map)

CATALOG = [exceptional_edge(), star(0), star(1), star(2), star(3), linear_graph(2),
           loop_graph(), loop_graph(1), cover_base()]


def test_identity_is_valid():
    for g in CATALOG:
        validate_map(identity(g))


def test_identity_laws():
    for g in CATALOG:
        for h in CATALOG:
            for f in homset(g, h):
                assert compose(identity(h), f) == f
                assert compose(f, identity(g)) == f


def test_star_to_edge():
    maps = homset(star(2), exceptional_edge())
    assert len(maps) == 2
    assert all(m.phi1["v"].is_edge() for m in maps)


def test_star0_has_no_strict_maps_to_edge():
    assert homset(star(0), exceptional_edge()) == []


def test_composition_matches_records():
    rng = random.Random(7)
    gs = [g for g in connected_safe_graphs(2, 6)]
    done = 0
    for _ in range(1500):
        a, b, c = rng.choice(gs), rng.choice(gs), rng.choice(gs)
        f, g = homset(a, b), homset(b, c)
        if not f or not g:
            continue
        f, g = rng.choice(f), rng.choice(g)
        h = compose(g, f)
        validate_map(h)
        assert h == compose_by_records(g, f)
        done += 1
    assert done > 100


def test_associativity_small():
    gs = [star(1), star(2), linear_graph(2), loop_graph(1)]
    for a in gs:
        for b in gs:
            for c in gs:
                for d in gs[:2]:
                    for f in homset(a, b)[:3]:
                        for g in homset(b, c)[:3]:
                            for h in homset(c, d)[:2]:
                                assert compose(h, compose(g, f)) == compose(compose(h, g), f)


def test_factorization():
    for g in [star(2), linear_graph(2), loop_graph(1)]:
        for h in [linear_graph(2), cycle_graph(2, 1), loop_graph(1)]:
            for phi in homset(g, h):
                fac = factorize(phi)
                assert is_active(fac.active)
                assert compose(fac.embedding, fac.active) == phi
                assert len(compatible_isos(fac, fac)) == 1


def test_active_maps():
    g = linear_graph(2)
    f = star_active(g, ["a", "b"], {"a": "l0", "b": "r0"})
    assert is_active(f) and f.phi1["v"].W == {"v1", "v2"}
    assert not is_active(homset(star(2), g)[0])


def test_vertex_double_cover():
    arcs, vm = double_cover_map()
    base = cover_base()
    cov = double_cover()
    phi1 = {v: vertex_class(base, vm[v]) for v in cov.vertices}
    with pytest.raises(E.VertexDoubleCover):
        make_graphical_map(cov, base, arcs, phi1)


def test_boundary_mismatch():
    g = star(1)
    with pytest.raises(E.BoundaryMismatch):
        make_graphical_map(g, g, {"1": "1", "1*": "1*"},
                           {"v": EmbeddingClass(g, (), {"1", "1*"}, {"1"})})


def test_closed_collapse_rejected():
    g = loop_graph()
    e = exceptional_edge()
    cls = EmbeddingClass(e, (), e.arcs, ("e", "e*"))
    with pytest.raises(E.CollapseViolation):
        make_graphical_map(g, e, {"c1": "e", "c1*": "e*"}, {"v1": cls})


def test_extended_mode_collapse_onto_nodeless_loop():
    g = loop_graph()
    lp = nodeless_loop()
    cls = EmbeddingClass(lp, (), lp.arcs, ("l", "l*"))
    f = make_graphical_map(g, lp, {"c1": "l", "c1*": "l*"}, {"v1": cls}, EXTENDED)
    assert f.mode == EXTENDED


def test_not_involutive():
    g = star(1)
    with pytest.raises(E.NotInvolutive):
        make_graphical_map(g, g, {"1": "1", "1*": "1"}, {"v": vertex_class(g, "v")})


def test_not_composable():
    with pytest.raises(E.NotComposable):
        compose(identity(star(1)), identity(star(2)))


def test_homset_counts_embeddings():
    # maps from star2 are a class with two boundary arcs plus an ordering of them
    g = linear_graph(2)
    classes = enumerate_embeddings(g)
    expect = sum(2 for c in classes if len(c.bd) == 2)
    assert len(homset(star(2), g)) == expect


def test_segal_core():
    core = segal_core_data(linear_graph(3))
    assert len(core.stars) == 3 and len(core.edges) == 2
    for _, h, iota in core.stars:
        validate_map(iota)
    with pytest.raises(E.NoVertices):
        segal_core_data(exceptional_edge())
