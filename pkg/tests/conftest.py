import numpy as np
import pytest

from opmeans.rng import SplitMix64, gen_random_invertible, gen_random_pd


@pytest.fixture
def rng():
    return SplitMix64(0x5EED)


def random_pd(seed, n, cond=100.0):
    return gen_random_pd(seed, n, cond)


def random_inv(seed, n, cond=100.0):
    return gen_random_invertible(seed, n, cond)


def lapack_power(a, alpha):
    """Reference power through LAPACK's Hermitian solver."""
    w, u = np.linalg.eigh(a)
    return (u * w**alpha) @ u.conj().T


def diag(*vals):
    return np.diag(np.asarray(vals, dtype=np.complex128))


# one line per acceptance criterion, printed after the run
ACCEPTANCE = {}


def record_criterion(number, title, ok, detail):
    ACCEPTANCE[number] = f"criterion {number} {'PASS' if ok else 'FAIL'}  {title}: {detail}"
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for number in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[number])
