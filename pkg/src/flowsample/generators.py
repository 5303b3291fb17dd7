"""Random graph generation: directed Erdos-Renyi with pluggable capacities.

Each ordered vertex pair (u, v), u != v, carries an edge independently with
probability pi. Sampling walks the flattened pair-index space with geometric
gap skipping, so the work is proportional to the number of edges produced
rather than n^2 while the edge indicator distribution stays exactly
Bernoulli(pi) per pair.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graph import Graph, GraphError, graph_from_arrays
from .rng import substream


@dataclass(frozen=True)
class CapacitySpec:
    """Edge capacity distribution: unit, constant(c) or uniform(lo, hi)."""

    kind: str
    lo: float = 1.0
    hi: float = 1.0

    @staticmethod
    def unit() -> "CapacitySpec":
        return CapacitySpec("unit")

    @staticmethod
    def constant(c: float) -> "CapacitySpec":
        return CapacitySpec("constant", float(c), float(c))

    @staticmethod
    def uniform(lo: float, hi: float) -> "CapacitySpec":
        return CapacitySpec("uniform", float(lo), float(hi))

    def __post_init__(self) -> None:
        if self.kind not in ("unit", "constant", "uniform"):
            raise ValueError(f"unknown capacity kind {self.kind!r}")
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise ValueError("capacity bounds must be finite")
        if self.lo < 0 or self.hi < self.lo:
            raise ValueError(f"need 0 <= lo <= hi, got lo={self.lo}, hi={self.hi}")

    @staticmethod
    def parse(text: str) -> "CapacitySpec":
        """Inverse of describe: 'unit', 'const:C' or 'unif:LO,HI'."""
        if text == "unit":
            return CapacitySpec.unit()
        if text.startswith("const:"):
            return CapacitySpec.constant(float(text[6:]))
        if text.startswith("unif:"):
            lo, _, hi = text[5:].partition(",")
            if not _:
                raise ValueError(f"uniform capacity needs two bounds, got {text!r}")
            return CapacitySpec.uniform(float(lo), float(hi))
        raise ValueError(
            f"unknown capacity spec {text!r}; expected unit, const:C or unif:LO,HI"
        )

    def describe(self) -> str:
        if self.kind == "unit":
            return "unit"
        if self.kind == "constant":
            return f"const:{self.lo:g}"
        return f"unif:{self.lo:g},{self.hi:g}"

    def sample(self, count: int, rng: np.random.Generator) -> np.ndarray:
        if self.kind == "unit":
            return np.ones(count, dtype=np.float64)
        if self.kind == "constant":
            return np.full(count, self.lo, dtype=np.float64)
        return rng.uniform(self.lo, self.hi, size=count)


@dataclass(frozen=True)
class ErConfig:
    n: int
    edge_prob: float
    capacity: CapacitySpec = CapacitySpec("unit")
    seed: int = 0

    def __post_init__(self) -> None:
        if self.n < 2:
            raise ValueError(f"need n >= 2, got {self.n}")
        if not (0.0 <= self.edge_prob <= 1.0):
            raise ValueError(f"edge probability must be in [0, 1], got {self.edge_prob}")

    def describe(self) -> str:
        return (
            f"er:n={self.n},pi={self.edge_prob:g},"
            f"cap={self.capacity.describe()},seed={self.seed}"
        )


def _bernoulli_indices(total: int, prob: float, rng: np.random.Generator) -> np.ndarray:
    """Indices k in [0, total) selected independently with probability prob."""
    if prob <= 0.0:
        return np.empty(0, dtype=np.int64)
    if prob >= 1.0:
        return np.arange(total, dtype=np.int64)
    picked = []
    pos = -1
    # first batch covers the binomial mean plus ten sigmas, top up if short
    sd = math.sqrt(total * prob * (1.0 - prob))
    batch = max(int(total * prob + 10.0 * sd) + 16, 64)
    while pos < total:
        gaps = rng.geometric(prob, size=batch).astype(np.int64)
        hits = pos + np.cumsum(gaps)
        pos = int(hits[-1])
        picked.append(hits)
        batch = 64
    ks = np.concatenate(picked)
    return ks[ks < total]


def erdos_renyi(config: ErConfig) -> Graph:
    """Directed ER graph; deterministic for a fixed config."""
    n = config.n
    rng = substream(config.seed)
    ks = _bernoulli_indices(n * (n - 1), config.edge_prob, rng)
    src = ks // (n - 1)
    rem = ks % (n - 1)
    dst = rem + (rem >= src)
    cap = config.capacity.sample(ks.size, rng)
    return graph_from_arrays(n, src, dst, cap)


def pick_source_sink(g: Graph, rng: np.random.Generator) -> tuple[int, int]:
    """Uniform ordered pair of distinct vertices."""
    if g.n < 2:
        raise GraphError(f"need at least 2 vertices to pick a source and sink, got {g.n}")
    s = int(rng.integers(g.n))
    t = int(rng.integers(g.n - 1))
    if t >= s:
        t += 1
    return s, t
