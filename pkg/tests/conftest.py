import pytest

from ccsinv import corpus
from ccsinv.engine import available_kernels


@pytest.fixture(scope="session")
def rem_system():
    return corpus.load("rem")


@pytest.fixture(scope="session")
def add_system():
    return corpus.load("add")


@pytest.fixture(scope="session")
def ack_system():
    return corpus.load("ack")


@pytest.fixture(scope="session")
def ack_2_system():
    return corpus.load("ack_2")


@pytest.fixture(params=available_kernels())
def kernel(request):
    """Runs the test once per evaluation kernel present in this build."""
    return request.param
