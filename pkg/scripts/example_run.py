"""Minimal end-to-end tour: generate a graph, solve it, then estimate.

Run from the repository root after installing the package:

    python3 scripts/example_run.py --n 200 --pi 0.2 --seed 7
"""

import argparse

from flowsample import (
    CapacitySpec,
    ErConfig,
    SampleConfig,
    bootstrap_flow,
    edmonds_karp,
    erdos_renyi,
    pick_source_sink,
    substream,
    summarize,
)
from flowsample.rng import DOMAIN_ENDPOINTS


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=200)
    ap.add_argument("--pi", type=float, default=0.2)
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--B", type=int, default=200, help="bootstrap replications")
    args = ap.parse_args()

    g = erdos_renyi(ErConfig(args.n, args.pi, CapacitySpec.unit(), args.seed))
    s, t = pick_source_sink(g, substream(args.seed, DOMAIN_ENDPOINTS))
    exact = edmonds_karp(g, s, t)
    print(f"graph: n={g.n} m={g.m} source={s} sink={t}")
    print(f"exact max flow: {exact.value:g} ({exact.augmentations} augmentations)")
    print()
    print(f"{'p':>5} {'mean':>9} {'sd':>8} {'95% CI':>22} {'empty':>6}")
    for p in (0.1, 0.25, 0.5, 0.75, 1.0):
        est = bootstrap_flow(g, s, t, SampleConfig(p, args.B, args.seed))
        summ = summarize(est.scaled_flows)
        ci = f"[{summ.ci_low:8.2f}, {summ.ci_high:8.2f}]"
        print(f"{p:5.2f} {summ.mean:9.3f} {summ.sd:8.3f} {ci:>22} "
              f"{est.disconnected_count:6d}")


if __name__ == "__main__":
    main()
