"""Run the G_k checks for a range of k and time them.

Sub-checks that enumerate the model or run closures are skipped above their
size limits; membership of the 2^k statements is checked for every k given.
"""
import argparse
import time

from ebn.hardness import verify_hardness


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--k-max", type=int, default=8)
    args = ap.parse_args()

    for k in range(1, args.k_max + 1):
        start = time.perf_counter()
        report = verify_hardness(k)
        elapsed = time.perf_counter() - start
        print(f"k={k} vertices={2 * k + 2} {'PASS' if report.ok else 'FAIL'} ({elapsed:.2f}s)")
        for line in report.lines():
            print("   ", line)


if __name__ == "__main__":
    main()
