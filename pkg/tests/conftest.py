import random

import pytest

from lrcodes import gf2, kernels
from lrcodes.code import LinearCode


def random_matrix(rng: random.Random, m: int, n: int, density: float = 0.5) -> gf2.BitMatrix:
    rows = [sum(1 << j for j in range(n) if rng.random() < density) for _ in range(m)]
    return gf2.BitMatrix(rows, n)


def random_code(rng: random.Random, m: int, n: int) -> LinearCode:
    return LinearCode(random_matrix(rng, m, n))


@pytest.fixture(params=kernels.available())
def backend(request):
    prev = kernels.active
    kernels.use(request.param)
    yield kernels.active
    kernels.active = prev


def pytest_terminal_summary(terminalreporter):
    from . import test_acceptance

    if not test_acceptance.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in test_acceptance.summary_lines():
        terminalreporter.write_line(line)
