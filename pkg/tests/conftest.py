"""Shared fixtures: heavyweight integrations and simulation batches are run
once per session and reused by the unit and acceptance tests."""
import time

import numpy as np
import pytest

from fdst import harness
from fdst.catalog import connected_cubic_graphs


@pytest.fixture(scope="session")
def table1():
    """Full default-step table reproduction: (report, {r: TrajectoryResult})."""
    return harness.reproduce_table1()


@pytest.fixture(scope="session")
def ode_r3(table1):
    return table1[1][3]


@pytest.fixture(scope="session")
def ode_r4(table1):
    return table1[1][4]


@pytest.fixture(scope="session")
def sim_batch_r3():
    """Ten lazy trials at r=3, n=1e5: (records, trajectories, elapsed_seconds)."""
    t0 = time.perf_counter()
    records, trajs = harness.simulate_trials(
        r=3, n=100_000, trials=10, seed=20240817, mode="lazy", jobs=2)
    return records, trajs, time.perf_counter() - t0


@pytest.fixture(scope="session")
def cubic_corpus():
    """All connected cubic graphs on 4, 6, 8 vertices, one per iso class."""
    return {n: connected_cubic_graphs(n) for n in (4, 6, 8)}


@pytest.fixture()
def rng():
    return np.random.default_rng(12345)
