import pytest

from clausen7 import make_context


@pytest.fixture(scope="session")
def ctx30():
    return make_context(30)


@pytest.fixture(scope="session")
def ctx50():
    return make_context(50)
