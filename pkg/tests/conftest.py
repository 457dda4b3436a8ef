"""Shared fixtures: pinnings, modules, and charts are expensive enough to
build once per session."""

import numpy as np
import pytest

from tnnflow.cells import enumerate_cells, face_poset
from tnnflow.chevalley import build_pinning
from tnnflow.embedding import build_rep, eigenchart, lambda_for
from tnnflow.flow import DiagonalFlow


@pytest.fixture(scope="session")
def pin3():
    return build_pinning(3)


@pytest.fixture(scope="session")
def pin4():
    return build_pinning(4)


@pytest.fixture(scope="session")
def rep3():
    """The complete-flag module of SL(3) (weight = sum of both fundamentals)."""
    return build_rep(lambda_for(3, ()))


@pytest.fixture(scope="session")
def chart3(rep3):
    return eigenchart(rep3)


@pytest.fixture(scope="session")
def flow3(chart3):
    return DiagonalFlow.from_chart(chart3)


@pytest.fixture(scope="session")
def rep42():
    """The Grassmannian-like module for n = 4, J = {2}."""
    return build_rep(lambda_for(4, (2,)))


@pytest.fixture(scope="session")
def chart42(rep42):
    return eigenchart(rep42)


@pytest.fixture(scope="session")
def census3():
    return enumerate_cells(seed=0)


@pytest.fixture(scope="session")
def poset3(census3):
    return face_poset(census3)


@pytest.fixture()
def rng():
    return np.random.default_rng(12345)
