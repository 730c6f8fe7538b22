import pytest

from proxlat import fixtures


@pytest.fixture(scope="session")
def corpus():
    return fixtures.corpus()


@pytest.fixture(scope="session")
def distributive_corpus(corpus):
    return {k: v for k, v in corpus.items() if v.distributive}
