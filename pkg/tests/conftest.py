import numpy as np
import pytest

from cyberalloc import EUTParams, PTParams, Scenario, backend_name, template
from cyberalloc._kernels import available_backends


def pytest_report_header(config):
    return f"cyberalloc kernel backend: {backend_name()}"


@pytest.fixture
def base_scenario():
    return Scenario(wealth=10_000.0, loss=1_000.0, q=0.3, i_r=1.0)


@pytest.fixture
def pt_base():
    return PTParams(alpha=0.88, lam=2.25, beta=0.65)


@pytest.fixture
def eut_neutral():
    return EUTParams(r=1.0)


@pytest.fixture(params=["pi1", "pi2", "pi3", "pi4", "pi5"])
def any_template(request):
    return template(request.param)


@pytest.fixture(params=[b.NAME for b in available_backends()])
def kernel_backend(request):
    for backend in available_backends():
        if backend.NAME == request.param:
            return backend
    raise RuntimeError("backend fixture out of sync")


def brute_force_argmax(objective_grid, c_max=1000.0, step=1e-3):
    """Independent oracle: exhaustive argmax on a uniform grid."""
    c = np.arange(0.0, c_max + step / 2.0, step)
    values = objective_grid(c)
    i = int(np.argmax(values))
    return float(c[i]), float(values[i])
