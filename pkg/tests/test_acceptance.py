"""End-to-end acceptance checks.

Each test covers one numbered criterion, prints one PASS/FAIL line and
then asserts. Statistical criteria use fixed seeds, so every run evaluates
the same deterministic instances.
"""

import json
import math
import os
import subprocess
import sys
import time
from pathlib import Path

import numpy as np
import pytest

from flowsample.cli import main as cli_main
from flowsample.generators import CapacitySpec, ErConfig, erdos_renyi, pick_source_sink
from flowsample.graph import validate
from flowsample.graphio import load_graph
from flowsample.maxflow import brute_force_min_cut, check_flow, edmonds_karp
from flowsample.rng import DOMAIN_ENDPOINTS, substream
from flowsample.sampler import SampleConfig, bootstrap_flow, summarize

DATA = Path(__file__).parent / "data"


@pytest.fixture
def report(capfd):
    # bypass capture so the verdict lines land in plain pytest output too
    def _report(num: int, ok: bool, detail: str) -> bool:
        with capfd.disabled():
            print(f"\nACCEPTANCE {num}: {'PASS' if ok else 'FAIL'} - {detail}",
                  flush=True)
        return ok

    return _report


def er_instance(n: int, pi: float, seed: int):
    g = erdos_renyi(ErConfig(n, pi, CapacitySpec.unit(), seed))
    s, t = pick_source_sink(g, substream(seed, DOMAIN_ENDPOINTS))
    return g, s, t


def test_criterion_1_solver_matches_cut_oracle(random_int_graph, report):
    rng = np.random.default_rng(2026)
    start = time.perf_counter()
    mismatches = 0
    for _ in range(1000):
        g, s, t = random_int_graph(rng)
        if edmonds_karp(g, s, t).value != brute_force_min_cut(g, s, t).capacity:
            mismatches += 1
    elapsed = time.perf_counter() - start
    ok = mismatches == 0 and elapsed < 10.0
    assert report(
        1, ok,
        f"1000 graphs n<=7: {1000 - mismatches}/1000 exact matches with the cut "
        f"enumeration oracle in {elapsed:.1f}s (budget 10s)",
    )


def test_criterion_2_flow_audits_clean(random_int_graph, report):
    rng = np.random.default_rng(2026)
    start = time.perf_counter()
    bad = 0
    for _ in range(1000):
        g, s, t = random_int_graph(rng)
        if check_flow(g, edmonds_karp(g, s, t), tol=1e-9):
            bad += 1
    for seed in range(100):
        g, s, t = er_instance(100, 0.5, seed)
        if check_flow(g, edmonds_karp(g, s, t), tol=1e-9):
            bad += 1
    elapsed = time.perf_counter() - start
    ok = bad == 0 and elapsed < 30.0
    assert report(
        2, ok,
        f"check_flow clean on 1000 small + 100 ER(100, 0.5) solves, "
        f"{bad} violations, {elapsed:.1f}s (budget 30s)",
    )


def test_criterion_3_full_proportion_is_bit_exact(random_int_graph, report):
    rng = np.random.default_rng(77)
    failures = 0
    for _ in range(50):
        g, s, t = random_int_graph(rng)
        exact = edmonds_karp(g, s, t).value
        cfg = SampleConfig(1.0, int(rng.integers(1, 50)), int(rng.integers(10_000)))
        est = bootstrap_flow(g, s, t, cfg)
        summ = summarize(est.scaled_flows, cfg.ci_level, cfg.ci_mode)
        if summ.sd != 0.0 or summ.mean != exact:
            failures += 1
    ok = failures == 0
    assert report(
        3, ok,
        f"p=1.0 on 50 random configurations: sd=0 and mean==exact bit-for-bit "
        f"({50 - failures}/50)",
    )


def test_criterion_4_estimator_underestimates(report):
    start = time.perf_counter()
    below = 0
    for seed in range(20):
        g, s, t = er_instance(100, 0.5, seed)
        exact = edmonds_karp(g, s, t).value
        est = bootstrap_flow(g, s, t, SampleConfig(0.5, 1000, seed))
        if summarize(est.scaled_flows).mean < exact:
            below += 1
    elapsed = time.perf_counter() - start
    ok = below >= 19 and elapsed < 300.0
    assert report(
        4, ok,
        f"ER(100, 0.5), p=0.5, B=1000: mean under exact flow in {below}/20 seeds "
        f"(need >=19), {elapsed:.1f}s (budget 300s)",
    )


def test_criterion_5_error_shrinks_with_proportion(report):
    start = time.perf_counter()
    rel_errors = {0.1: [], 0.9: []}
    exact_at_full = True
    for seed in range(20):
        g, s, t = er_instance(1000, 0.1, seed)
        exact = edmonds_karp(g, s, t).value
        for p in (0.1, 0.9):
            est = bootstrap_flow(g, s, t, SampleConfig(p, 100, seed))
            mean = summarize(est.scaled_flows).mean
            rel_errors[p].append(abs(mean - exact) / exact)
        full = bootstrap_flow(g, s, t, SampleConfig(1.0, 100, seed))
        if summarize(full.scaled_flows).mean != exact:
            exact_at_full = False
    mare_low = float(np.mean(rel_errors[0.1]))
    mare_high = float(np.mean(rel_errors[0.9]))
    elapsed = time.perf_counter() - start
    ok = mare_low > mare_high and exact_at_full and elapsed < 1800.0
    assert report(
        5, ok,
        f"ER(1000, 0.1), B=100, 20 seeds: mean abs rel error {mare_low:.3f} at p=0.1 "
        f"vs {mare_high:.3f} at p=0.9, p=1.0 error exactly 0: {exact_at_full}, "
        f"{elapsed:.0f}s (budget 1800s)",
    )


def test_criterion_6_exact_flow_magnitudes(report):
    in_range_small = 0
    for seed in range(50):
        g, s, t = er_instance(100, 0.5, seed)
        if 30.0 <= edmonds_karp(g, s, t).value <= 70.0:
            in_range_small += 1
    in_range_large = 0
    for seed in range(50):
        g, s, t = er_instance(1000, 0.1, seed)
        if 60.0 <= edmonds_karp(g, s, t).value <= 140.0:
            in_range_large += 1
    ok = in_range_small >= 48 and in_range_large >= 48
    assert report(
        6, ok,
        f"exact flow in [30,70] for {in_range_small}/50 ER(100, 0.5) seeds and in "
        f"[60,140] for {in_range_large}/50 ER(1000, 0.1) seeds (need >=48 each)",
    )


def test_criterion_7_large_graph_scale(report):
    exacts, estimates = [], []
    worst = 0.0
    for seed in range(10):
        g, s, t = er_instance(10_000, 0.01, seed)
        exacts.append(edmonds_karp(g, s, t).value)
        start = time.perf_counter()
        est = bootstrap_flow(g, s, t, SampleConfig(0.1, 100, seed))
        worst = max(worst, time.perf_counter() - start)
        estimates.append(summarize(est.scaled_flows).mean)
    med_exact = float(np.median(exacts))
    med_est = float(np.median(estimates))
    ratio = med_est / med_exact
    ok = worst <= 900.0 and (1 / 3) <= ratio <= 3.0
    assert report(
        7, ok,
        f"ER(10000, 0.01), p=0.1, B=100: slowest run {worst:.1f}s (budget 900s), "
        f"median estimate {med_est:.1f} vs median exact {med_exact:.1f} "
        f"(ratio {ratio:.2f}, need within factor 3)",
    )


def test_criterion_8_interval_arithmetic(report):
    rng = np.random.default_rng(8)
    worst_rel = 0.0
    for _ in range(200):
        values = rng.uniform(0.0, 200.0, size=int(rng.integers(2, 400)))
        summ = summarize(values, 0.95, "sample-spread")
        if summ.sd > 0:
            half = (summ.ci_high - summ.ci_low) / 2
            worst_rel = max(worst_rel, abs(half - 1.959964 * summ.sd) / (1.959964 * summ.sd))
    implied_sd = ((119.6 - 30.6) / 2) / 1.959964
    identity_ok = abs(implied_sd - 22.704) <= 0.001
    ok = worst_rel <= 1e-6 and identity_ok
    assert report(
        8, ok,
        f"spread half-width vs 1.959964*sd: worst relative gap {worst_rel:.2e} "
        f"(tol 1e-6); published interval implies sd {implied_sd:.4f} "
        f"(need 22.704 +- 0.001)",
    )


def test_criterion_9_interval_narrows_with_replications(report):
    widths = {1000: [], 4000: []}
    for seed in range(20):
        g, s, t = er_instance(100, 0.5, seed)
        for b in (1000, 4000):
            cfg = SampleConfig(0.5, b, seed, 0.95, "standard-error")
            est = bootstrap_flow(g, s, t, cfg)
            summ = summarize(est.scaled_flows, 0.95, "standard-error")
            widths[b].append(summ.ci_high - summ.ci_low)
    med_small = float(np.median(widths[1000]))
    med_big = float(np.median(widths[4000]))
    ratio = med_big / med_small
    ok = ratio <= 0.6
    assert report(
        9, ok,
        f"standard-error CI width: median {med_big:.3f} at B=4000 vs {med_small:.3f} "
        f"at B=1000, ratio {ratio:.3f} (need <=0.6)",
    )


def test_criterion_10_runtime_scaling(tmp_path, report):
    out = tmp_path / "bench.csv"
    proc = subprocess.run(
        [
            sys.executable, "-m", "flowsample.cli", "bench",
            "--n-list", "200,400,800,1600", "--pi", "0.05", "--seed", "0",
            "--out", str(out),
        ],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0, proc.stderr
    rows = [line.split(",") for line in out.read_text().splitlines()[1:]]
    sizes = np.array([float(r[0]) for r in rows])
    seconds = np.array([max(float(r[4]), 1e-9) for r in rows])
    slope = float(np.polyfit(np.log(sizes), np.log(seconds), 1)[0])
    ok = len(rows) == 4 and slope < 5.0
    assert report(
        10, ok,
        f"bench paper-scaling over n=200..1600: log-log slope {slope:.2f} (need <5.0), "
        f"times {[round(s, 3) for s in seconds.tolist()]}s",
    )


def _strip_duration(text: str) -> str:
    return "\n".join(
        line for line in text.splitlines() if '"duration_seconds"' not in line
    )


def test_criterion_11_thread_count_invariance(tmp_path, report):
    cases = [
        ["estimate", "--er-n", "300", "--er-pi", "0.1", "--p", "0.3", "--B", "50",
         "--seed", "17"],
        ["sweep-p", "--er-n", "60", "--er-pi", "0.3", "--B", "20",
         "--p-list", "0.5,1.0", "--seeds", "3,4"],
    ]
    identical = True
    for case in cases:
        outputs = []
        for threads in ("1", "2", "8"):
            target = tmp_path / f"t{threads}_{case[0]}.json"
            env = dict(os.environ, FLOWSAMPLE_THREADS=threads)
            proc = subprocess.run(
                [sys.executable, "-m", "flowsample.cli", *case, "--out", str(target)],
                capture_output=True, text=True, env=env,
            )
            assert proc.returncode == 0, proc.stderr
            outputs.append(_strip_duration(target.read_text()))
        if not (outputs[0] == outputs[1] == outputs[2]):
            identical = False
    assert report(
        11, identical,
        "estimate and sweep-p JSON byte-identical across FLOWSAMPLE_THREADS in "
        "{1,2,8} once duration lines are removed",
    )


def test_criterion_12_io_round_trips(tmp_path, report):
    rng = np.random.default_rng(12)
    caps = ["unit", "const:2.5", "unif:0.5,4"]
    round_trips = 0
    for i in range(20):
        n = int(rng.integers(5, 120))
        pi = float(rng.uniform(0.02, 1.0))
        seed = int(rng.integers(100_000))
        cap = caps[i % 3]
        target = tmp_path / f"er_{i}.edges"
        code = cli_main([
            "generate", "--er-n", str(n), "--er-pi", f"{pi!r}", "--er-cap", cap,
            "--seed", str(seed), "--out", str(target),
        ])
        assert code == 0
        reference = erdos_renyi(ErConfig(n, pi, CapacitySpec.parse(cap), seed))
        back = load_graph(str(target)).graph
        if (
            back.n == reference.n
            and np.array_equal(back.src, reference.src)
            and np.array_equal(back.dst, reference.dst)
            and np.array_equal(back.cap, reference.cap)
        ):
            round_trips += 1

    edges = load_graph(str(DATA / "pair.edges"), "edgelist")
    mtx = load_graph(str(DATA / "pair.mtx"), "mtx")
    cross_format = (
        edges.graph.n == mtx.graph.n
        and np.array_equal(edges.graph.src, mtx.graph.src)
        and np.array_equal(edges.graph.dst, mtx.graph.dst)
        and np.array_equal(edges.graph.cap, mtx.graph.cap)
    )

    brain = load_graph(str(DATA / "brain_sample.edges"))
    violations = validate(brain.graph)
    flow = edmonds_karp(brain.graph, brain.labels.id_of("1"), brain.labels.id_of("64"))
    brain_ok = not violations and math.isfinite(flow.value) and flow.value > 0

    ok = round_trips == 20 and cross_format and brain_ok
    assert report(
        12, ok,
        f"generate->parse identity {round_trips}/20 configs; edge-list vs mtx fixtures "
        f"equal: {cross_format}; brain graph clean with finite flow {flow.value}",
    )
