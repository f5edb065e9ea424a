"""Sample tables from random E-trees and check that recovery gets the tree back.

Prints one row per tree size: trials, successes, isomorphic outputs, mean CI
queries, and the failure stages seen. A tolerance sweep shows how far the
CI threshold can move before recovery breaks.
"""
import argparse
import collections
import random
import time

from ebn.generate import random_etree
from ebn.graph import etree_isomorphic, skeleton
from ebn.oracle import SamplerConfig, sample_from_etree
from ebn.recovery import recover


def run(trials, n_min, n_max, seed, margin, tol):
    rows = collections.defaultdict(lambda: {"trials": 0, "ok": 0, "iso": 0, "queries": 0, "stages": collections.Counter()})
    for i in range(trials):
        rng = random.Random(seed + i)
        t = random_etree(rng.randint(n_min, n_max), rng)
        p = sample_from_etree(t, SamplerConfig(seed=seed + i, wellrep_margin=margin))
        out = recover(p, tol)
        row = rows[t.n]
        row["trials"] += 1
        row["queries"] += len(out.queries)
        if out.ok:
            row["ok"] += 1
            row["iso"] += etree_isomorphic(out.tree, t) and skeleton(out.tree) == skeleton(t)
        else:
            row["stages"][out.stage] += 1
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=200)
    ap.add_argument("--n-min", type=int, default=3)
    ap.add_argument("--n-max", type=int, default=7)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--margin", type=float, default=1e-3)
    ap.add_argument("--sweep", action="store_true", help="also sweep the CI tolerance")
    args = ap.parse_args()

    start = time.perf_counter()
    rows = run(args.trials, args.n_min, args.n_max, args.seed, args.margin, 1e-9)
    print(f"{'n':>3} {'trials':>7} {'ok':>5} {'iso':>5} {'queries':>8}  failures")
    for n in sorted(rows):
        r = rows[n]
        stages = ", ".join(f"{k}={v}" for k, v in sorted(r["stages"].items())) or "-"
        print(f"{n:>3} {r['trials']:>7} {r['ok']:>5} {r['iso']:>5} {r['queries'] / r['trials']:>8.1f}  {stages}")
    print(f"elapsed {time.perf_counter() - start:.1f}s")

    if args.sweep:
        print("\ntolerance sweep (all sizes pooled)")
        for tol in (1e-12, 1e-9, 1e-6, 1e-4, 1e-3, 1e-2):
            rows = run(min(args.trials, 100), args.n_min, args.n_max, args.seed, args.margin, tol)
            total = sum(r["trials"] for r in rows.values())
            iso = sum(r["iso"] for r in rows.values())
            print(f"  tol={tol:<8g} isomorphic {iso}/{total}")


if __name__ == "__main__":
    main()
