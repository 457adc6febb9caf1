import numpy as np
import pytest

from wcep.dense import spectral_norm
from wcep.genin import WeightedPair
from wcep.instances import gen_random_instance

E2_A = np.array([[1, 0], [0, 1], [0, 0]], dtype=complex)
E2_W = np.array([[1, 0, 0], [0, 0, 0]], dtype=complex)
E2_X = np.array([[1, 0], [0, 0], [0, 0]], dtype=complex)


def build_suite(count, seed0, max_index=3, max_m=12, max_n=9):
    """Seeded pairs with index 1..max_index, m <= max_m, n <= max_n, GAS factors attached.

    Every third pair uses complex dense factors.
    """
    rng = np.random.default_rng(seed0)
    out = []
    for i in range(count):
        t = int(rng.integers(1, max_index + 1))
        m = int(rng.integers(2 * t, max_m + 1))
        n = int(rng.integers(2 * t, max_n + 1))
        rmax = min(m, n) - (2 * t - 1)
        r = int(rng.integers(1, rmax + 1))
        pair, gas = gen_random_instance(m, n, t, seed0 + i, core_rank=r, complex_entries=(i % 3 == 0))
        out.append((pair, gas))
    return out


def agree(x, ref, rtol=1e-8):
    return np.max(np.abs(x - ref)) <= rtol * (1.0 + spectral_norm(ref))


@pytest.fixture(scope="session")
def e2():
    return WeightedPair(E2_A, E2_W)


@pytest.fixture(scope="session")
def suite50():
    return build_suite(50, 1000)


@pytest.fixture(scope="session")
def suite10():
    return build_suite(10, 5000)


ACCEPTANCE_LINES = {}


@pytest.fixture
def acceptance_line():
    """Record the one-line verdict of an acceptance criterion."""

    def record(number, ok, detail):
        ACCEPTANCE_LINES[number] = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}"
        print(ACCEPTANCE_LINES[number])
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for number in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[number])
