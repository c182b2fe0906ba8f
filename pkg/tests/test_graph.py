import pytest

from helpers import CONSTRUCTED, INVALID
from modgraph.graph import (build_graph, cycle_graph, exceptional_edge, linear_graph,
                            loop_graph, nodeless_loop, star, star_of, star_of_vertex, validate)

@pytest.mark.parametrize("g", CONSTRUCTED, ids=lambda g: str(g.name))
def test_constructors_validate(g):
    assert validate(g) is g


def test_star_shape():
    s = star(3)
    assert s.nbhd("v") == ("1", "2", "3")
    assert s.boundary == {"1*", "2*", "3*"}
    assert s.is_star() and s.is_elementary() and s.is_safe()


def test_elementary_predicates():
    assert exceptional_edge().is_exceptional_edge()
    assert nodeless_loop().is_nodeless_loop() and not nodeless_loop().is_safe()
    assert not loop_graph().is_star()


def test_star_of_uses_given_boundary():
    s = star_of(["x", "y"])
    assert s.boundary == {"x", "y"} and len(s.nbhd("v")) == 2


def test_star_of_vertex_embeds():
    g = linear_graph(2)
    h, am, vm = star_of_vertex(g, "v1")
    assert set(am.values()) == {"l0", "l0*", "e1", "e1*"}
    assert h.valence("v1") == 2


def test_edges_and_internal_edges():
    g = linear_graph(3)
    assert len(g.edges()) == 4 and len(g.internal_edges()) == 2


def test_connectivity():
    assert cycle_graph(3).is_connected()
    two = build_graph([("a", "a*"), ("b", "b*")], {}, vertices=[])
    assert not two.is_connected()


def test_equality_ignores_name():
    assert star(2) == star(2).with_name("other")
    assert hash(star(2)) == hash(star(2).with_name("x"))


def test_relabel():
    g = star(1).relabel({"1": "p", "1*": "q"}, {"v": "w"})
    assert g.nbhd("w") == ("p",) and g.boundary == {"q"}


@pytest.mark.parametrize("name,make,err", INVALID, ids=[c[0] for c in INVALID])
def test_invalid_inputs_raise_their_error(name, make, err):
    with pytest.raises(err):
        make()


def test_all_errors_are_value_errors():
    with pytest.raises(ValueError):
        build_graph([("a", "a")], {})
