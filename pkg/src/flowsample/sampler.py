"""Bootstrap vertex-subsampling estimator for s-t maximum flow.

Instead of solving the full graph, draw B random vertex subsets that always
contain the source and sink, solve the induced subgraphs exactly, and scale
each subgraph flow by 1/p. The scaled values give a point estimate (their
mean) and a normal-approximation confidence interval.

Two interval conventions are exposed: "sample-spread" (mean +/- z*sd, the
spread of the bootstrap values themselves) and "standard-error"
(mean +/- z*sd/sqrt(B), an interval for the mean that narrows as B grows).

Iteration i draws from its own counter-based RNG stream keyed by
(seed, i), so estimates are bit-identical no matter how many worker
threads run the loop.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .graph import Graph, VertexSet, induced_subgraph
from .maxflow import _check_endpoints, edmonds_karp
from .rng import DOMAIN_SAMPLER, substream

CI_MODES = ("sample-spread", "standard-error")


@dataclass(frozen=True)
class SampleConfig:
    """Estimator parameters: subsample proportion, replication count, seed."""

    proportion: float
    samples: int
    seed: int
    ci_level: float = 0.95
    ci_mode: str = "sample-spread"

    def __post_init__(self) -> None:
        if not (0.0 < self.proportion <= 1.0):
            raise ValueError(f"proportion must be in (0, 1], got {self.proportion}")
        if self.samples < 1:
            raise ValueError(f"samples must be >= 1, got {self.samples}")
        if not (0.0 < self.ci_level < 1.0):
            raise ValueError(f"ci_level must be in (0, 1), got {self.ci_level}")
        if self.ci_mode not in CI_MODES:
            raise ValueError(f"ci_mode must be one of {CI_MODES}, got {self.ci_mode!r}")


@dataclass(frozen=True)
class SubsampleEstimate:
    """Raw output of one estimator run: B scaled flows plus bookkeeping."""

    scaled_flows: np.ndarray
    config: SampleConfig
    sample_size: int
    disconnected_count: int


@dataclass(frozen=True)
class EstimateSummary:
    mean: float
    sd: float
    ci_low: float
    ci_high: float
    ci_level: float
    ci_mode: str


def subsample_size(n: int, p: float) -> int:
    """ceil(p*n) clamped to [2, n].

    The product is snapped to the nearest integer first when it sits within
    float rounding error of one, so p=0.1, n=10000 gives 1000 rather than
    ceil(1000.0000000000001) = 1001.
    """
    exact = p * n
    nearest = round(exact)
    if abs(exact - nearest) <= 1e-9 * max(1.0, abs(exact)):
        size = int(nearest)
    else:
        size = math.ceil(exact)
    return min(max(size, 2), n)


def subsample_vertices(n: int, s: int, t: int, p: float, rng: np.random.Generator) -> VertexSet:
    """Random vertex set of size ceil(p*n) that always contains s and t.

    The other members are drawn uniformly without replacement from the
    remaining n-2 vertices.
    """
    if n < 2:
        raise ValueError(f"need at least 2 vertices, got n={n}")
    if not (0 <= s < n) or not (0 <= t < n):
        raise ValueError(f"vertex out of range: s={s}, t={t}, n={n}")
    if s == t:
        raise ValueError("source equals sink")
    size = subsample_size(n, p)
    if size < 2:
        raise ValueError("subsample too small to contain source and sink")
    draw = rng.choice(n - 2, size=size - 2, replace=False).astype(np.int64)
    # shift draws from [0, n-3] onto V minus {s, t}
    lo, hi = (s, t) if s < t else (t, s)
    draw[draw >= lo] += 1
    draw[draw >= hi] += 1
    return VertexSet(frozenset(draw.tolist()) | {int(s), int(t)})


def _scaled_subflow(g: Graph, s: int, t: int, p: float, seed: int, i: int) -> float:
    rng = substream(seed, DOMAIN_SAMPLER, i)
    keep = subsample_vertices(g.n, s, t, p, rng)
    sub, relabel = induced_subgraph(g, keep)
    return edmonds_karp(sub, relabel[s], relabel[t]).value / p


def bootstrap_flow(
    g: Graph, s: int, t: int, config: SampleConfig, *, threads: int = 1
) -> SubsampleEstimate:
    """Run the estimator: B independent subsample-solve-scale iterations.

    A subsample whose sink is unreachable contributes a scaled flow of 0 and
    is tallied in disconnected_count. Results depend only on (g, s, t,
    config), never on threads.
    """
    _check_endpoints(g, s, t)
    size = subsample_size(g.n, config.proportion)
    count = config.samples
    phi = np.empty(count, dtype=np.float64)
    if size == g.n:
        # every subsample is the whole vertex set, one solve suffices
        phi[:] = edmonds_karp(g, s, t).value / config.proportion
    elif threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            futures = [
                pool.submit(_scaled_subflow, g, s, t, config.proportion, config.seed, i)
                for i in range(count)
            ]
            for i, fut in enumerate(futures):
                phi[i] = fut.result()
    else:
        for i in range(count):
            phi[i] = _scaled_subflow(g, s, t, config.proportion, config.seed, i)
    disconnected = int(np.count_nonzero(phi == 0.0))
    phi.setflags(write=False)
    return SubsampleEstimate(phi, config, size, disconnected)


def summarize(values, ci_level: float = 0.95, ci_mode: str = "sample-spread") -> EstimateSummary:
    """Mean, sample sd (divisor B-1) and normal-approximation CI of values.

    A constant input (including a single value) short-circuits to sd=0 and a
    degenerate interval, keeping mean bit-identical to the common value.
    """
    if not (0.0 < ci_level < 1.0):
        raise ValueError(f"ci_level must be in (0, 1), got {ci_level}")
    if ci_mode not in CI_MODES:
        raise ValueError(f"ci_mode must be one of {CI_MODES}, got {ci_mode!r}")
    arr = np.asarray(values, dtype=np.float64)
    if arr.ndim != 1 or arr.size == 0:
        raise ValueError("need a nonempty one-dimensional sequence of values")
    if np.all(arr == arr[0]):
        mean = float(arr[0])
        return EstimateSummary(mean, 0.0, mean, mean, ci_level, ci_mode)
    mean = float(arr.mean())
    sd = float(arr.std(ddof=1))
    z = normal_quantile(0.5 + 0.5 * ci_level)
    half = z * sd if ci_mode == "sample-spread" else z * sd / math.sqrt(arr.size)
    return EstimateSummary(mean, sd, mean - half, mean + half, ci_level, ci_mode)


def normal_quantile(q: float) -> float:
    """Inverse standard normal CDF, accurate to about 1e-15.

    Rational minimax approximation (Wichura's PPND16): one central branch
    and a sqrt(-log) tail branch, no external statistics dependency.
    """
    if not (0.0 < q < 1.0):
        raise ValueError(f"quantile argument must be in (0, 1), got {q}")
    d = q - 0.5
    if abs(d) <= 0.425:
        r = 0.180625 - d * d
        num = (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r
                    + 6.7265770927008700853e4) * r + 4.5921953931549871457e4) * r
                  + 1.3731693765509461125e4) * r + 1.9715909503065514427e3) * r
                + 1.3314166789178437745e2) * r + 3.3871328727963666080e0)
        den = (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r
                    + 3.9307895800092710610e4) * r + 2.1213794301586595867e4) * r
                  + 5.3941960214247511077e3) * r + 6.8718700749205790830e2) * r
                + 4.2313330701600911252e1) * r + 1.0)
        return d * num / den
    r = q if d < 0.0 else 1.0 - q
    r = math.sqrt(-math.log(r))
    if r <= 5.0:
        r -= 1.6
        num = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r
                    + 2.41780725177450611770e-1) * r + 1.27045825245236838258e0) * r
                  + 3.64784832476320460504e0) * r + 5.76949722146069140550e0) * r
                + 4.63033784615654529590e0) * r + 1.42343711074968357734e0)
        den = (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r
                    + 1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r
                  + 6.89767334985100004550e-1) * r + 1.67638483018380384940e0) * r
                + 2.05319162663775882187e0) * r + 1.0)
    else:
        r -= 5.0
        num = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r
                    + 1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r
                  + 2.96560571828504891230e-1) * r + 1.78482653991729133580e0) * r
                + 5.46378491116411436990e0) * r + 6.65790464350110377720e0)
        den = (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r
                    + 1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r
                  + 1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r
                + 5.99832206555887937690e-1) * r + 1.0)
    value = num / den
    return -value if d < 0.0 else value
