import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from helpers import operads, tab, two_colors  # noqa: E402
from modgraph.modops import FreeModularOperad, GenusOperad  # noqa: E402
from modgraph.graph import exceptional_edge, star  # noqa: E402
from modgraph.nerve import JK, nerve_presheaf, standard_site  # noqa: E402


@pytest.fixture(scope="session")
def usite():
    return standard_site()


@pytest.fixture(scope="session")
def jksite():
    return standard_site(JK, vertex_bound=2)


@pytest.fixture(scope="session")
def ops():
    d = operads()
    d["genus2-2col"] = tab(GenusOperad(2, two_colors()))
    d["genus3-g0"] = tab(GenusOperad(3, g=0))
    d["free-edge"] = tab(FreeModularOperad(exceptional_edge(), 1))
    d["free-star0"] = tab(FreeModularOperad(star(0), 1))
    d["genus3"] = tab(GenusOperad(3))
    return d


@pytest.fixture(scope="session")
def unerves(ops, usite):
    cache = {}

    def get(name):
        if name not in cache:
            cache[name] = nerve_presheaf(ops[name], usite)
        return cache[name]
    return get


@pytest.fixture(scope="session")
def jknerves(ops, jksite):
    cache = {}

    def get(name):
        if name not in cache:
            cache[name] = nerve_presheaf(ops[name], jksite)
        return cache[name]
    return get
