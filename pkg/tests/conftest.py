import pytest
from helpers import CAL_ID

from oicmark.corpus import load_corpus
from oicmark.embed import Strategy, embed
from oicmark.verify import load_calibration


@pytest.fixture(scope="session")
def corpus():
    return load_corpus()


@pytest.fixture(scope="session")
def calibration():
    return load_calibration()


@pytest.fixture(scope="session")
def watermarked(corpus):
    """(image name, strategy name) -> image embedded with the calibration ID."""
    cache = {}

    def get(name, strategy):
        key = (name, Strategy.parse(strategy).name)
        if key not in cache:
            cache[key] = embed(corpus[name], CAL_ID, Strategy.parse(strategy)).image
        return cache[key]

    return get
