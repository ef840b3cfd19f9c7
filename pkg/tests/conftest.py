import pytest

from kgconformal import DiffConfig, MODE_EXACT, MODE_STENCIL


@pytest.fixture
def exact_cfg():
    return DiffConfig(mode=MODE_EXACT)


@pytest.fixture
def stencil_cfg():
    return DiffConfig(mode=MODE_STENCIL)
