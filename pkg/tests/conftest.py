import pytest

from crglobal import families
from crglobal.verify import cr_members, global_sweep


@pytest.fixture(scope="session")
def corpus_members():
    return list(families.corpus())


@pytest.fixture(scope="session")
def cr6(corpus_members):
    return cr_members(corpus_members, 6)


@pytest.fixture(scope="session")
def cr5(corpus_members):
    return cr_members(corpus_members, 5)


@pytest.fixture(scope="session")
def cr4(corpus_members):
    return cr_members(corpus_members, 4)


@pytest.fixture(scope="session")
def sweep(cr5):
    return global_sweep(cr5)


@pytest.fixture(scope="session")
def named(corpus_members):
    return dict(corpus_members)
