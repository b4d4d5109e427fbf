import random

import pytest

from models.report import IndexWindow
from utils.axioms import make_CW


@pytest.fixture
def cw():
    return make_CW()


@pytest.fixture
def window():
    return IndexWindow.symmetric(2)


@pytest.fixture
def rng():
    return random.Random(20240611)
