import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from conevol import kernels
from conevol import polytope as pc

settings.register_profile("ci", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("ci")


@pytest.fixture(params=kernels.available_backends())
def backend(request):
    with kernels.use_backend(request.param):
        yield request.param


@pytest.fixture
def cube3():
    return pc.cube(3)


@pytest.fixture
def tetra():
    return pc.regular_simplex(3)


def random_body(dim, seed, npts=None):
    rng = np.random.default_rng(seed)
    return pc.from_vertices(dim, rng.standard_normal((npts or 4 * dim, dim))).translate_to_centroid()


def random_rotation(dim, rng):
    q, r = np.linalg.qr(rng.standard_normal((dim, dim)))
    return q * np.sign(np.diag(r))


# one summary line per acceptance criterion, appended by tests/test_acceptance.py
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])
