"""Shared test helpers: random hypergraphs and raw tensor shims."""

import itertools
from dataclasses import dataclass

import numpy as np
import pytest

from hyperbell import Hypergraph, is_connected


@dataclass(frozen=True)
class RawTensor:
    """Duck-typed stand-in for StateVector without the unit-norm check.

    Lets invariant tests feed unnormalized tensors to the Schlaefli
    pipeline, which only reads .n and .amps.
    """

    n: int
    amps: np.ndarray


def random_hypergraph(rng, n, connected=True):
    """Uniformly pick a nonempty edge set; optionally insist on connectivity."""
    pool = [
        e
        for k in range(2, n + 1)
        for e in itertools.combinations(range(1, n + 1), k)
    ]
    while True:
        mask = rng.random(len(pool)) < 0.35
        edges = [list(e) for e, keep in zip(pool, mask) if keep]
        if not edges:
            continue
        g = Hypergraph(n, edges)
        if not connected or is_connected(g):
            return g


@pytest.fixture
def rng():
    return np.random.default_rng(20260823)
