import numpy as np
import pytest

from kdvwhitham import kdv
from kdvwhitham.asymptotic import CompositeSolution
from kdvwhitham.cli import default_params
from kdvwhitham.profile import Sech2Profile
from kdvwhitham.whitham import WhithamSolver


def pytest_addoption(parser):
    parser.addoption("--run-long", action="store_true", default=False,
                     help="run hour-scale sweeps (eps down to 1e-3)")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--run-long"):
        return
    skip = pytest.mark.skip(reason="needs --run-long")
    for item in items:
        if "long" in item.keywords:
            item.add_marker(skip)


@pytest.fixture(scope="session")
def sech2():
    return Sech2Profile()


@pytest.fixture(scope="session")
def solver(sech2):
    return WhithamSolver(sech2, precision=True)


@pytest.fixture(scope="session")
def zone04(solver):
    """Zone rows at t = 0.4 shared across tests (moderate grid)."""
    return solver.solve_zone(0.4, nx=120)


@pytest.fixture(scope="session")
def composite04(sech2, solver, zone04):
    return CompositeSolution(sech2, solver, 0.4, zone_rows=zone04)


@pytest.fixture(scope="session")
def kdv_runs(sech2):
    """Cache of solver runs to t = 0.4 keyed by eps (reference parameters)."""
    cache = {}

    def get(eps):
        key = round(float(np.log10(eps)), 6)
        if key not in cache:
            N, L, dt = default_params(eps)
            f = kdv.init(sech2, L=L, N=N, eps=eps)
            f, snaps, trace = kdv.evolve(f, 0.4, dt, snapshot_times=[0.4])
            cache[key] = (f.x_grid(), snaps[0.4], trace)
        return cache[key]

    return get
