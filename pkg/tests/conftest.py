import pytest

from eulerqp.algebra import gamma_algebra


@pytest.fixture(params=[1, 2, 3])
def n(request):
    return request.param


@pytest.fixture
def g1():
    return gamma_algebra(1)


@pytest.fixture
def g2():
    return gamma_algebra(2)
