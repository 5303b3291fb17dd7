import numpy as np
import pytest

from flowsample.graph import build_graph, graph_from_arrays
from flowsample.maxflow import edmonds_karp


@pytest.fixture(scope="session", autouse=True)
def compiled_solver():
    # first call JIT-compiles the kernel; keep that out of timed tests
    edmonds_karp(build_graph(2, [(0, 1, 1.0)]), 0, 1)


def _random_int_graph(rng, n=None, max_cap=10):
    """Random directed graph with integer capacities plus a random s,t pair."""
    if n is None:
        n = int(rng.integers(2, 8))
    density = rng.uniform(0.15, 0.9)
    src, dst = [], []
    for u in range(n):
        for v in range(n):
            if u != v and rng.random() < density:
                src.append(u)
                dst.append(v)
    cap = rng.integers(0, max_cap + 1, size=len(src)).astype(np.float64)
    g = graph_from_arrays(
        n, np.array(src, dtype=np.int64), np.array(dst, dtype=np.int64), cap
    )
    s = int(rng.integers(n))
    t = int(rng.integers(n - 1))
    if t >= s:
        t += 1
    return g, s, t


@pytest.fixture
def random_int_graph():
    return _random_int_graph
