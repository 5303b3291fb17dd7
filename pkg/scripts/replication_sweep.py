"""Confidence interval width as a function of bootstrap replications.

Standard-error intervals should narrow roughly like 1/sqrt(B); this
script reports the median width over a batch of seeded graphs for each
replication count so the trend is easy to eyeball.
"""

import argparse

import numpy as np

from flowsample import (
    CapacitySpec,
    ErConfig,
    SampleConfig,
    bootstrap_flow,
    erdos_renyi,
    pick_source_sink,
    substream,
    summarize,
)
from flowsample.rng import DOMAIN_ENDPOINTS


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=100)
    ap.add_argument("--pi", type=float, default=0.5)
    ap.add_argument("--p", type=float, default=0.5)
    ap.add_argument("--seeds", type=int, default=20)
    ap.add_argument("--B-list", default="250,500,1000,2000,4000")
    ap.add_argument("--ci-mode", choices=["spread", "stderr"], default="stderr")
    args = ap.parse_args()

    mode = "standard-error" if args.ci_mode == "stderr" else "sample-spread"
    b_values = [int(tok) for tok in args.B_list.split(",")]
    print(f"{'B':>6} {'median width':>14} {'median mean':>13}")
    for b in b_values:
        widths, means = [], []
        for seed in range(args.seeds):
            g = erdos_renyi(ErConfig(args.n, args.pi, CapacitySpec.unit(), seed))
            s, t = pick_source_sink(g, substream(seed, DOMAIN_ENDPOINTS))
            cfg = SampleConfig(args.p, b, seed, 0.95, mode)
            summ = summarize(bootstrap_flow(g, s, t, cfg).scaled_flows, 0.95, mode)
            widths.append(summ.ci_high - summ.ci_low)
            means.append(summ.mean)
        print(f"{b:6d} {float(np.median(widths)):14.4f} "
              f"{float(np.median(means)):13.3f}")


if __name__ == "__main__":
    main()
