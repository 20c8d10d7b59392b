"""Shared fixtures: parameters, grids, and deterministic hypothesis settings.

Grids are session-scoped and built once per (k, X, N) — the dense kernel
matrices behind the transform are the expensive part of this package, so
tests share them through the module-level caches instead of rebuilding.
"""

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from dunkl1d import DunklParameter, build_grid
from dunkl1d.transform import default_freq_grid

settings.register_profile(
    "suite",
    derandomize=True,
    deadline=None,
    max_examples=40,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")

# the acceptance k sweep; -1/2 itself is excluded (classical limit is a
# separate reduction check, not a member of the parameter domain sweep)
ACCEPTANCE_KS = (-0.25, 0.0, 0.5, 1.5)

_GRIDS: dict = {}


def shared_grid(k, X=12.0, N=256, grading="graded"):
    key = (float(k), float(X), int(N), grading)
    if key not in _GRIDS:
        _GRIDS[key] = build_grid(DunklParameter(k=float(k)), X=X, N=N, grading=grading)
    return _GRIDS[key]


def shared_freq(k, extent=20.0, M=256, grading="graded"):
    key = ("freq", float(k), float(extent), int(M), grading)
    if key not in _GRIDS:
        _GRIDS[key] = build_grid(DunklParameter(k=float(k)), X=extent, N=M, grading=grading)
    return _GRIDS[key]


@pytest.fixture(scope="session")
def k0():
    return DunklParameter(k=0.0)


@pytest.fixture(scope="session")
def khalf():
    return DunklParameter(k=0.5)


@pytest.fixture(scope="session")
def kclassical():
    return DunklParameter(k=-0.5)


@pytest.fixture(scope="session")
def grid_k0():
    # medium grid: big enough for 1e-5-grade transform checks, cheap enough
    # to share across every module
    return shared_grid(0.0, N=512)


@pytest.fixture(scope="session")
def freq_k0():
    return shared_freq(0.0, M=512)


@pytest.fixture(scope="session")
def grid_k0_small():
    return shared_grid(0.0, N=64)


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(1813)


def pytest_report_header(config):
    return "dunkl1d test run: hypothesis profile 'suite' (derandomized)"
