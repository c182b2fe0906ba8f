import os

import pytest

from modgraph import errors as E
from modgraph.canon import is_isomorphic
from modgraph.graph import cover_base, linear_graph, loop_graph, star
from modgraph.graphical import homset
from modgraph.io import (format_graph, format_map, format_operad, load_map, load_operad,
                         load_presheaf, load_site, parse_atom, parse_graph, parse_manifest,
                         parse_map, parse_operad, save_presheaf)
from modgraph.modops import FreeModularOperad, GenusOperad, TabulatedOperad, check_unit_law
from modgraph.nerve import is_segal, nerve_presheaf
from modgraph.substitution import substitute

DATA = os.path.join(os.path.dirname(__file__), os.pardir, "data")


def data(name):
    return os.path.join(DATA, name)


def read(name):
    with open(data(name)) as fh:
        return fh.read()


def test_atoms():
    assert parse_atom("a*") == "a*"
    assert parse_atom("(v,(1,x))") == ("v", ("1", "x"))
    for bad in ["", "(a", "a)b", "(a))"]:
        with pytest.raises(E.ParseError):
            parse_atom(bad)


@pytest.mark.parametrize("name", ["edge", "star2", "star3", "linear2", "double-cover",
                                  "cover-base", "loop"])
def test_graph_files_round_trip(name):
    txt = read(name + ".graph")
    g, _, _ = parse_graph(txt)
    assert format_graph(g, name) == txt


def test_format_then_parse():
    for g in [star(4), linear_graph(3), loop_graph(2), cover_base()]:
        h, _, _ = parse_graph(format_graph(g))
        assert h == g


def test_colored_graph():
    txt = ("graph s\ncolors: a ; c c*\narcs: 1 1*\nvertices: v\nnbhd v: 1\nboundary: 1*\n"
           "color 1 = c\ncolor 1* = c*\n")
    g, C, zeta = parse_graph(txt)
    assert C.dagger("c") == "c*" and zeta["1*"] == "c*"
    assert format_graph(g, "s", C, zeta) == txt
    with pytest.raises(E.ParseError):
        parse_graph(txt.replace("color 1* = c*", "color 1* = c"))


def test_graph_errors_carry_lines():
    with pytest.raises(E.ParseError) as ei:
        parse_graph("graph g\narcs: a a*\nfoo: bar\n", "g.graph")
    assert ei.value.line == 3 and ei.value.path == "g.graph"
    with pytest.raises(E.DartAssignedTwice):
        parse_graph("arcs: a b\nvertices: v w\nnbhd v: a\nnbhd w: a\n")
    with pytest.raises(E.ModGraphError):
        parse_graph("arcs: a a\n")


def test_map_files():
    f = load_map(data("star2-linear2.map"))
    assert f in homset(star(2), linear_graph(2))
    txt = format_map(f, "f", "star2", "linear2")
    assert parse_map(txt, data("x.map")) == f
    ident = load_map(data("id-star3.map"))
    assert ident.source == ident.target


def test_map_errors():
    txt = read("star2-linear2.map")
    with pytest.raises(E.ParseError) as ei:
        parse_map(txt.replace("phi1 v:", "phi1 v"), data("x.map"))
    assert ei.value.line == 3
    with pytest.raises(E.BoundaryMismatch):
        parse_map(txt.replace("bd={e1,e1*}", "bd={e1}"), data("x.map"))


def test_manifest():
    plugs, ms = parse_manifest(read("linear2.manifest"), data("linear2.manifest"))
    sub = substitute(linear_graph(2), plugs, ms)
    assert is_isomorphic(sub.graph, linear_graph(3))
    with pytest.raises(E.ParseError):
        parse_manifest("v1 <- star2.graph m: 1 -> 1*\n")


def test_operad_round_trip():
    txt = read("genus2.operad")
    T = parse_operad(txt)
    assert isinstance(T, TabulatedOperad)
    assert format_operad(T) == txt
    assert check_unit_law(T, 4).ok


def test_operad_file_agrees_with_native():
    T = load_operad(data("genus2.operad"))
    P = GenusOperad(2)
    assert [len(T.fiber({k: "x" for k in range(n)})) for n in range(5)] == [2] * 5
    assert len(T.compose_table) > 0 and P.m == 2


def test_builtin_and_free_operads():
    G = load_operad(data("genus3-builtin.operad"))
    assert isinstance(G, GenusOperad) and G.m == 3
    F = load_operad(data("free-star2.operad"), vertex_bound=2)
    assert isinstance(F, FreeModularOperad)
    with pytest.raises(E.ParseError):
        load_operad(data("free-star2.operad"))


def test_operad_errors():
    with pytest.raises(E.ParseError) as ei:
        parse_operad("operad p\ncolors: x\nfiber (s0:x): 0 0\n")
    assert ei.value.line == 3
    with pytest.raises(E.ParseError):
        parse_operad("operad p\nfiber (s0:x): 0\n")


def test_site_directory():
    S = load_site(data("site-u"))
    assert S.names[0] == "edge" and S.adequacy() == []
    J = load_site(data("site-jk"))
    assert J.mode == "JK" and J.vertex_bound == 2


def test_presheaf_directory_round_trip(ops, usite, unerves, tmp_path):
    X = unerves("genus2")
    save_presheaf(X, str(tmp_path))
    Y = load_presheaf(str(tmp_path))
    assert {n: len(v) for n, v in Y.values.items()} == {n: len(v) for n, v in X.values.items()}
    assert Y.check() == [] and is_segal(Y)[0]
    # values come back as strings
    assert all(isinstance(x, str) for vs in Y.values.values() for x in vs)


def test_presheaf_directory_errors(unerves, tmp_path):
    X = unerves("genus2")
    save_presheaf(X, str(tmp_path))
    fn = sorted(p for p in os.listdir(tmp_path) if p.endswith(".fn"))[0]
    os.remove(tmp_path / fn)
    with pytest.raises(E.ParseError):
        load_presheaf(str(tmp_path))


def test_nerve_of_parsed_operad(usite):
    T = load_operad(data("genus2.operad"))
    assert is_segal(nerve_presheaf(T, usite))[0]
