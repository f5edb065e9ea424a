"""How often does one sampler draw clear the well-representation margin?

Long treks multiply weak dependencies, so their marginal residuals shrink.
For each tree this estimates the fraction of raw draws that the sampler
would accept and the chance that ``max_retries`` attempts all fail.
"""
import argparse

import numpy as np

from ebn.formats import parse_edg
from ebn.graph import as_etree, unique_trail
from ebn.oracle import SamplerConfig, _random_joint, ci_residual, is_strictly_positive, trek_pairs
from ebn.statements import Statement

TREES = {
    "edge": "vars a b\na -> b\n",
    "chain3": "vars a b c\na -> b\nb -> c\n",
    "bichain3": "vars a b c\na <-> b\nb <-> c\n",
    "chain5": "vars a b c d e\na -> b\nb -> c\nc -> d\nd -> e\n",
    "mixed5": "vars v0 v1 v2 v3 v4\nv0 -> v1\nv2 -> v3\nv4 -> v0\nv2 <-> v4\n",
    "star5": "vars h a b c d\nh -> a\nh -> b\nh -> c\nh -> d\n",
}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--draws", type=int, default=500)
    ap.add_argument("--margin", type=float, default=1e-3)
    ap.add_argument("--retries", type=int, default=100)
    args = ap.parse_args()

    cfg = SamplerConfig(wellrep_margin=args.margin)
    print(f"{'tree':<9} {'longest trek':>12} {'accept':>7} {'P(exhaust)':>11}  median min-residual")
    for name, text in TREES.items():
        t = as_etree(parse_edg(text))
        pairs = trek_pairs(t)
        longest = max((len(unique_trail(t, a, b).kinds) for a, b in pairs), default=0)
        accepted, mins = 0, []
        for i in range(args.draws):
            p = _random_joint(t, cfg, np.random.default_rng([i, 0]))
            worst = min((ci_residual(p, Statement(1 << a, 0, 1 << b)) for a, b in pairs), default=np.inf)
            mins.append(worst)
            accepted += is_strictly_positive(p) and worst > args.margin
        rate = accepted / args.draws
        print(f"{name:<9} {longest:>12} {rate:>7.3f} {(1 - rate) ** args.retries:>11.2e}  {np.median(mins):.2e}")


if __name__ == "__main__":
    main()
