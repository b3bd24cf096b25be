import random

import pytest

from corpus import CORPUS, SMALL_CORPUS


@pytest.fixture(scope="session")
def corpus():
    return CORPUS


@pytest.fixture(scope="session")
def small_corpus():
    return SMALL_CORPUS


@pytest.fixture()
def rng():
    return random.Random(987654321)
