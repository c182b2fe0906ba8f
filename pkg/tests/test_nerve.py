import pytest

from modgraph import errors as E
from modgraph.graph import exceptional_edge, linear_graph, loop_graph, star
from modgraph.modops import GenusOperad
from modgraph.nerve import (check_segal_operad_laws, comparison_morphism, delete_orbit,
                            duplicate_orbit, fullyfaithful_check, is_segal, natural_failures,
                            nerve, nerve_equalizer, nerve_presheaf, operad_from_segal,
                            relabel_values, restrict_to_u, roundtrip_operad,
                            roundtrip_presheaf, segal_check, standard_objects, TruncatedSite)


def test_site_is_adequate(usite):
    assert usite.adequacy() == []
    assert usite.composition_failures(limit=1) == []
    assert set(usite.names) == set(standard_objects())


def test_site_identity_and_hom(usite):
    for n in usite.names:
        ident = usite.identity(n)
        assert usite.key(ident) in usite.index
    assert len(usite.hom[("star2", "edge")]) == 2
    assert usite.hom[("star0", "edge")] == []


def test_missing_object():
    S = TruncatedSite({"edge": exceptional_edge(), "star1": star(1)})
    with pytest.raises(E.MissingCoreObject):
        S.locate(linear_graph(2))


def test_genus_nerve_sizes(unerves):
    X = unerves("genus2")
    sizes = {n: X.size(n) for n in X.site.names}
    assert sizes["edge"] == 1
    assert all(sizes[f"star{k}"] == 2 for k in range(5))
    assert sizes["linear2"] == sizes["h"] == sizes["cycle2"] == 4
    assert sizes["loop"] == 2


@pytest.mark.parametrize("name", ["genus2", "linrel", "free-star2", "genus2-2col"])
def test_equalizer_matches_direct(ops, usite, name):
    P = ops[name]
    for g in usite.objects.values():
        a = [y.key() for y in nerve(P, g)]
        b = [y.key() for y in nerve_equalizer(P, g)]
        assert a == b


@pytest.mark.parametrize("name", ["genus2", "linrel", "free-star2"])
def test_nerves_are_segal_functors(unerves, name):
    X = unerves(name)
    assert X.check() == []
    assert is_segal(X) == (True, None)


def test_mutations_break_segal(unerves):
    X = unerves("genus2")
    Y = delete_orbit(X, "h", 0)
    assert Y.check() == []
    assert not segal_check(Y, "h").ok
    Z = duplicate_orbit(X, "h", 1)
    assert Z.check() == []
    assert "same restriction" in segal_check(Z, "h").witness
    with pytest.raises(ValueError):
        delete_orbit(X, "star2", 0)


def test_non_segal_has_no_operad(unerves):
    Z = duplicate_orbit(unerves("genus2"), "linear2", 0)
    with pytest.raises(E.SegalFailure):
        operad_from_segal(Z)
    assert not roundtrip_presheaf(Z).ok


@pytest.mark.parametrize("name", ["genus2", "free-star2"])
def test_roundtrips(ops, usite, unerves, name):
    X = unerves(name)
    L = operad_from_segal(X)
    assert roundtrip_presheaf(X, L).ok
    assert roundtrip_operad(ops[name], usite, samples=10).ok
    assert check_segal_operad_laws(L, 10).ok


def test_relabeled_presheaf_roundtrip(unerves):
    X = unerves("genus2")
    bij = {n: {x: ("r", n, x) for x in X.values[n]} for n in X.site.names}
    Y = relabel_values(X, bij)
    assert Y.check() == [] and is_segal(Y)[0]
    L = operad_from_segal(Y)
    assert roundtrip_presheaf(Y, L).ok
    NL = nerve_presheaf(L, X.site)
    alpha = comparison_morphism(L, Y, NL)
    assert natural_failures(Y, NL, alpha) == []


def test_fullyfaithful_small(unerves):
    r = fullyfaithful_check(unerves("free-edge"), unerves("free-edge"))
    assert r.ok and r.counts == (2, 2)


def test_jk_restriction_is_the_u_nerve(usite, jknerves, unerves):
    X = jknerves("genus2")
    Y = restrict_to_u(X, usite)
    N = unerves("genus2")
    assert Y.values == N.values
    assert all(Y.action[k] == N.action[k] for k in N.action)


def test_vertexless_nerve():
    P = GenusOperad(2)
    assert len(nerve(P, exceptional_edge())) == 1
    assert len(nerve(P, loop_graph())) == 2
