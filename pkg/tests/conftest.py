import pytest

from ncomega.groups import get_group
from ncomega.solver import available_engines

ENGINES = available_engines()


@pytest.fixture(params=ENGINES)
def engine(request):
    return request.param


@pytest.fixture(scope="session")
def grp():
    """Group factory; tables are memoized for the whole session."""
    def make(family, **params):
        return get_group(family, **params)
    return make


@pytest.fixture(scope="session")
def sz8(grp):
    return grp("suzuki", m=1)


@pytest.fixture(scope="session")
def psl33(grp):
    return grp("psl", n=3, q=3)
