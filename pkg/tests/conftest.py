"""Shared fixtures: a small zoo of hand-verified diagrams.

PD codes here are frozen copies of the bundled dataset rows (plus a few
orientations/mirrors); every polynomial, writhe, and depth claim about
them is re-derived in the tests rather than trusted.
"""

import pytest

from skeindepth import HomflyCache, parse_pd

# name -> (pd text, components)
FIXTURE_PDS = {
    "unknot": ("O", 1),
    "unlink2": ("O;O", 2),
    "kink+": ("X[2,2,1,1]", 1),
    "hopf+": ("X[1,3,2,4];X[4,2,3,1]", 2),
    "trefoil": ("X[1,4,2,5];X[3,6,4,1];X[5,2,6,3]", 1),
    "fig8": ("X[2,7,3,8];X[4,2,5,1];X[6,3,7,4];X[8,6,1,5]", 1),
    "L4a1{0}": ("X[8,2,5,1];X[2,8,3,7];X[6,4,7,3];X[4,6,1,5]", 2),
    "L4a1{1}": ("X[1,5,2,6];X[3,7,4,8];X[6,2,7,3];X[8,4,5,1]", 2),
    "K5a1": ("X[1,4,2,5];X[3,8,4,9];X[5,10,6,1];X[9,6,10,7];X[7,2,8,3]", 1),
    "K5a2": ("X[1,6,2,7];X[3,8,4,9];X[5,10,6,1];X[7,2,8,3];X[9,4,10,5]", 1),
    "L5a1": ("X[2,5,3,6];X[4,7,5,8];X[6,10,1,9];X[8,2,9,1];X[10,3,7,4]", 2),
}

# the ones with at least one crossing, for move/skein batteries
CROSSED = [k for k in FIXTURE_PDS if k not in ("unknot", "unlink2")]


@pytest.fixture(scope="session")
def diagrams():
    return {name: parse_pd(text) for name, (text, _) in FIXTURE_PDS.items()}


@pytest.fixture(scope="session")
def shared_cache():
    # one polynomial cache for the whole run keeps the batteries fast
    return HomflyCache()
