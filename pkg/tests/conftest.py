import os
import sys
import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from susybi.builder import Superpotential

# one seed for every randomized piece of the suite
SEED = int(os.environ.get("SUSYBI_TEST_SEED", "20240611"))

settings.register_profile(
    "susybi",
    derandomize=True,
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("susybi")


def small_fractions(span=6, den=5):
    return st.builds(Fraction, st.integers(-span, span), st.integers(1, den))


@pytest.fixture
def rng():
    return random.Random(SEED)


def random_upsilon(rng, K=4, span=9):
    values = [Fraction(rng.randint(-span, span), rng.randint(1, span)) for _ in range(K)]
    if values[0] == 0:
        values[0] = Fraction(1)
    return tuple(values)


@pytest.fixture
def upsilon_vectors(rng):
    return [random_upsilon(rng) for _ in range(3)]


@pytest.fixture
def morse():
    return Superpotential.morse()


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for index in sorted(module.RESULTS):
        terminalreporter.write_line(module.RESULTS[index])
