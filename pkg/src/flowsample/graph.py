"""Directed capacitated graphs with dense integer vertex ids.

Edges live in parallel numpy arrays (``src``, ``dst``, ``cap``) plus a CSR
out-edge index so neighbor iteration is O(out-degree). Graphs are immutable
after construction: the arrays are marked read-only, and every operation
returns a new graph.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


class GraphError(ValueError):
    """Invalid graph construction or vertex reference."""


@dataclass(frozen=True)
class Graph:
    """Directed graph on vertices 0..n-1 with nonnegative real edge capacities.

    Parallel edges are permitted (the flow solver treats them as
    capacity-additive); self-loops are not. ``adj_offsets``/``adj_edges``
    form a CSR index of edge ids grouped by source vertex, preserving the
    original edge order within each group.
    """

    n: int
    src: np.ndarray
    dst: np.ndarray
    cap: np.ndarray
    adj_offsets: np.ndarray
    adj_edges: np.ndarray

    @property
    def m(self) -> int:
        return int(self.src.shape[0])

    def out_edges(self, v: int) -> np.ndarray:
        """Edge ids leaving vertex v, in edge-list order."""
        return self.adj_edges[self.adj_offsets[v]:self.adj_offsets[v + 1]]

    def edge_tuples(self) -> list[tuple[int, int, float]]:
        return list(zip(self.src.tolist(), self.dst.tolist(), self.cap.tolist()))


@dataclass(frozen=True)
class VertexSet:
    """A subset of a graph's vertex ids."""

    members: frozenset[int]

    @property
    def size(self) -> int:
        return len(self.members)

    def to_array(self) -> np.ndarray:
        """Members as a sorted int64 array."""
        return np.sort(np.fromiter(self.members, dtype=np.int64, count=len(self.members)))


def _build_adjacency(n: int, src: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    order = np.argsort(src, kind="stable").astype(np.int64)
    offsets = np.zeros(n + 1, dtype=np.int64)
    if src.shape[0]:
        np.cumsum(np.bincount(src, minlength=n), out=offsets[1:])
    return offsets, order


def _freeze(g: Graph) -> Graph:
    for arr in (g.src, g.dst, g.cap, g.adj_offsets, g.adj_edges):
        arr.setflags(write=False)
    return g


def graph_from_arrays(n: int, src: np.ndarray, dst: np.ndarray, cap: np.ndarray) -> Graph:
    """Validate edge arrays and assemble a Graph (vectorized build_graph)."""
    if n < 1:
        raise GraphError(f"vertex count must be >= 1, got {n}")
    src = np.ascontiguousarray(src, dtype=np.int64)
    dst = np.ascontiguousarray(dst, dtype=np.int64)
    cap = np.ascontiguousarray(cap, dtype=np.float64)
    if not (src.shape == dst.shape == cap.shape) or src.ndim != 1:
        raise GraphError("edge arrays must be 1-d and of equal length")

    bad = np.flatnonzero((src < 0) | (src >= n) | (dst < 0) | (dst >= n))
    if bad.size:
        k = int(bad[0])
        raise GraphError(f"edge {k}: endpoint out of range ({int(src[k])}, {int(dst[k])}) for n={n}")
    bad = np.flatnonzero(src == dst)
    if bad.size:
        raise GraphError(f"edge {int(bad[0])}: self-loop at vertex {int(src[bad[0]])}")
    bad = np.flatnonzero(~np.isfinite(cap) | (cap < 0))
    if bad.size:
        k = int(bad[0])
        if not math.isfinite(cap[k]):
            raise GraphError(f"edge {k}: non-finite capacity {cap[k]!r}")
        raise GraphError(f"edge {k}: negative capacity {cap[k]!r}")

    offsets, order = _build_adjacency(n, src)
    return _freeze(Graph(int(n), src, dst, cap, offsets, order))


def build_graph(n: int, edges) -> Graph:
    """Build a graph from an iterable of ``(src, dst, capacity)`` triples.

    Edge order is preserved. Raises GraphError on out-of-range endpoints,
    self-loops, or negative/non-finite capacities, naming the offending
    edge index.
    """
    edges = list(edges)
    if edges:
        src = np.fromiter((e[0] for e in edges), dtype=np.int64, count=len(edges))
        dst = np.fromiter((e[1] for e in edges), dtype=np.int64, count=len(edges))
        cap = np.fromiter((e[2] for e in edges), dtype=np.float64, count=len(edges))
    else:
        src = np.empty(0, dtype=np.int64)
        dst = np.empty(0, dtype=np.int64)
        cap = np.empty(0, dtype=np.float64)
    return graph_from_arrays(n, src, dst, cap)


def validate(g: Graph) -> list[str]:
    """Check all graph invariants; returns one message per violation.

    Unlike construction this never raises, so it can audit graphs assembled
    by hand (e.g. deserialized or deliberately corrupted test fixtures).
    """
    violations: list[str] = []
    if g.n < 1:
        violations.append(f"vertex count {g.n} < 1")
    m = g.m
    if g.dst.shape[0] != m or g.cap.shape[0] != m:
        violations.append("edge arrays have mismatched lengths")
        return violations

    for k in np.flatnonzero((g.src < 0) | (g.src >= g.n) | (g.dst < 0) | (g.dst >= g.n)):
        violations.append(f"endpoint out of range at edge {int(k)}")
    for k in np.flatnonzero(g.src == g.dst):
        violations.append(f"self-loop at edge {int(k)}")
    for k in np.flatnonzero(np.isnan(g.cap) | np.isinf(g.cap)):
        violations.append(f"non-finite capacity at edge {int(k)}")
    for k in np.flatnonzero(g.cap < 0):
        violations.append(f"negative capacity at edge {int(k)}")

    if g.adj_offsets.shape[0] != g.n + 1 or g.adj_edges.shape[0] != m:
        violations.append("adjacency mismatch: index has wrong shape")
        return violations
    if violations:
        # Offsets can't be rebuilt from broken edges; report what we have.
        return violations
    offsets, order = _build_adjacency(g.n, g.src)
    if not np.array_equal(g.adj_offsets, offsets) or not np.array_equal(g.adj_edges, order):
        violations.append("adjacency mismatch: index inconsistent with edge list")
    return violations


def induced_subgraph(g: Graph, keep: VertexSet) -> tuple[Graph, dict[int, int]]:
    """Restrict g to the vertices in ``keep``.

    Kept vertices are relabeled densely to 0..|keep|-1 in ascending order of
    their old ids; the returned mapping is old id -> new id. The edge set is
    exactly the edges of g with both endpoints kept, capacities and relative
    order unchanged.
    """
    members = keep.to_array()
    if members.size == 0:
        raise GraphError("cannot induce a subgraph on an empty vertex set")
    if members[0] < 0 or members[-1] >= g.n:
        raise GraphError(f"kept vertex out of range for n={g.n}")
    new_of_old = np.full(g.n, -1, dtype=np.int64)
    new_of_old[members] = np.arange(members.size, dtype=np.int64)

    ns, nd = new_of_old[g.src], new_of_old[g.dst]
    mask = (ns >= 0) & (nd >= 0)
    sub = graph_from_arrays(int(members.size), ns[mask], nd[mask], g.cap[mask])
    mapping = {int(old): int(new) for new, old in enumerate(members.tolist())}
    return sub, mapping
