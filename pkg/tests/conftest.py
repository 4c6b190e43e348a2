import random

import pytest
from hypothesis import settings

settings.register_profile("ci", deadline=None, derandomize=True,
                          max_examples=60)
settings.load_profile("ci")


def pytest_addoption(parser):
    parser.addoption("--seed", type=int, default=20260809,
                     help="seed for the randomized property tests")


@pytest.fixture
def rng(request):
    return random.Random(request.config.getoption("--seed"))
