"""Compare basis sizes |B_T| and |B_s| with n^2 and with the full model.

For small n the size of M(T) itself is enumerated, which shows how much the
tree bases save over testing every statement.
"""
import argparse
import random
import statistics

from ebn.generate import random_etree
from ebn.separation import enumerate_model
from ebn.treebasis import build_bs, build_bt


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-max", type=int, default=12)
    ap.add_argument("--trees", type=int, default=100, help="random trees per size")
    ap.add_argument("--model-n-max", type=int, default=6, help="enumerate M(T) up to this size")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    print(f"{'n':>3} {'n^2':>5} {'|B_T| mean':>11} {'max':>5} {'|B_s| mean':>11} {'max':>5} {'|M(T)| mean':>12}")
    for n in range(2, args.n_max + 1):
        bt, bs, model = [], [], []
        for _ in range(args.trees):
            t = random_etree(n, rng)
            bt.append(len(build_bt(t)))
            bs.append(len(build_bs(t)))
            if n <= args.model_n_max:
                model.append(len(enumerate_model(t, limit=args.model_n_max)))
        m = f"{statistics.mean(model):>12.1f}" if model else f"{'-':>12}"
        print(f"{n:>3} {n * n:>5} {statistics.mean(bt):>11.1f} {max(bt):>5} "
              f"{statistics.mean(bs):>11.1f} {max(bs):>5} {m}")


if __name__ == "__main__":
    main()
