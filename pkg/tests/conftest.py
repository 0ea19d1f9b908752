# tests/conftest.py

import pytest

from grouplab.services.algebra_service import algebra_service
from grouplab.services.group_service import group_service
from grouplab.services.harness_service import harness_service
from grouplab.services.involution_service import involution_service

# Q8 indices: 0=1, 1=i, 2=-1, 3=-i, 4=j, 5=k, 6=-j, 7=-k
Q8_I, Q8_MINUS_ONE, Q8_J, Q8_K = 1, 2, 4, 5
# i -> -i, j -> j, k -> k
Q8_FIX_J_K = "map:0,3,2,1,4,5,6,7"
# D6 indices: k = r^k, 3 + k = r^k t; r fixed, t fixed, rt <-> r^2 t
D6_FIX_R_T = "map:0,1,2,3,5,4"


@pytest.fixture(scope="session")
def q8():
    return group_service.build_group("Q8")


@pytest.fixture(scope="session")
def d8():
    return group_service.build_group("D8")


@pytest.fixture(scope="session")
def d6():
    return group_service.build_group("D6")


@pytest.fixture(scope="session")
def c6():
    return group_service.build_group("C6")


@pytest.fixture(scope="session")
def c2():
    return group_service.build_group("C2")


def make_ctx(spec: str, p: int = 3, involution: str = "classical", orientation: str = "trivial"):
    G = group_service.build_group(spec)
    star, _ = involution_service.select_involution(G, involution)
    sigma, _ = involution_service.select_orientation(G, orientation)
    return algebra_service.make_context(G, p, involution_service.make_pair(star, sigma))


@pytest.fixture(scope="session")
def corpus():
    return [entry.group for entry in harness_service.build_corpus(16)]
