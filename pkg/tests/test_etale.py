import pytest

from helpers import brute_isos, connected_safe_graphs, factor_through, local_maps
from modgraph import errors as E
from modgraph.canon import automorphisms, canonical_code, is_isomorphic, isomorphisms
from modgraph.etale import (EmbeddingClass, EtaleMap, check_etale, embedding_class,
                            embeddings_between, enumerate_embeddings, identity_class,
                            representative, representative_map)
from modgraph.graph import (cycle_graph, exceptional_edge, cover_base, double_cover,
                            linear_graph, loop_graph, star)
from modgraph.graph import double_cover_map


@pytest.mark.parametrize("n", range(5))
def test_star_embedding_count(n):
    assert len(enumerate_embeddings(star(n))) == n + 1


def test_edge_has_one_embedding():
    assert enumerate_embeddings(exceptional_edge()) == [identity_class(exceptional_edge())]


def test_representatives_are_embeddings():
    for g in [linear_graph(3), cycle_graph(2), loop_graph(1), cover_base()]:
        for c in enumerate_embeddings(g):
            f = representative_map(c)
            check_etale(f.source, f.target, f.arcs, f.vertices)
            assert f.is_embedding() and embedding_class(f) == c


def test_cycle_classes_cut_edges():
    # on a loop, the vertex star embeds twice: loop kept or loop cut
    ks = [c for c in enumerate_embeddings(loop_graph()) if c.W]
    assert len(ks) == 2
    assert {len(c.bd) for c in ks} == {0, 2}


def test_double_cover_is_etale_but_not_embedding():
    arcs, vm = double_cover_map()
    f = check_etale(double_cover(), cover_base(), arcs, vm)
    assert not f.is_embedding()
    with pytest.raises(E.NotEmbedding):
        embedding_class(f)


def test_pullback_failure_detected():
    s, g = star(2), star(3)
    with pytest.raises(E.PullbackFails):
        check_etale(s, g, {"1": "1", "1*": "1*", "2": "2", "2*": "2*"}, {"v": "v"})


def test_involution_failure_detected():
    e = exceptional_edge()
    with pytest.raises(E.NotInvolutive):
        check_etale(e, e, {"e": "e", "e*": "e"}, {})


def test_library_matches_brute_force_maps():
    for g in [linear_graph(2), cycle_graph(2), loop_graph(1)]:
        for k in [star(1), star(2), linear_graph(2), loop_graph()]:
            lib = {tuple(sorted(f.arcs.items())) for f in embeddings_between(k, g)}
            brute = {tuple(sorted(am.items())) for am, vm in local_maps(k, g)}
            assert lib == brute


def test_isomorphisms_match_brute_force():
    for g in connected_safe_graphs(2, 6):
        assert len(isomorphisms(g, g)) == len(brute_isos(g, g)) == len(automorphisms(g))


def test_canonical_code_is_an_invariant():
    gs = connected_safe_graphs(2, 6)
    for a in gs:
        r = a.relabel({x: ("r", x) for x in a.arcs}, {v: ("r", v) for v in a.vertices})
        assert canonical_code(a) == canonical_code(r)
    codes = [canonical_code(g) for g in gs]
    assert len(set(codes)) == len(codes)


def test_non_isomorphic_pair():
    assert not is_isomorphic(linear_graph(2), cycle_graph(2))


def test_factor_through_identity():
    g = linear_graph(2)
    c = enumerate_embeddings(g)[-1]
    k, am, vm = representative(c)
    assert factor_through((am, vm), k, (am, vm), k) is not None


def test_class_equality_by_record():
    g = star(2)
    a = EmbeddingClass(g, {"v"}, g.arcs, g.boundary)
    assert a == identity_class(g) and hash(a) == hash(identity_class(g))
    assert a.text() == "W={v} B={1,1*,2,2*} bd={1*,2*}"


def test_etale_composition():
    g = linear_graph(2)
    c = [c for c in enumerate_embeddings(g) if c.W == {"v1"}][0]
    f = representative_map(c)
    ident = EtaleMap(g, g, {a: a for a in g.arcs}, {v: v for v in g.vertices})
    h = f.then(ident)
    assert embedding_class(h) == c
