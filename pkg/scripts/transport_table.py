"""Tabulate residuals of the two-step bound transport for a grid of (k, c).

    python scripts/transport_table.py --max-k 8 --b 1000
"""
import argparse

from squarepack.bounds import Direction, step_one_residual, step_two_residual


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-k", type=int, default=6)
    ap.add_argument("--b", type=int, default=1000)
    args = ap.parse_args()
    print(f"{'k':>3} {'c':>3} {'step1 below':>14} {'step1 above':>14} {'step2 below':>14} {'step2 above':>14}")
    for k in range(2, args.max_k + 1):
        for c in range(-(k - 1), k):
            cols = [step_one_residual(k, c, d) for d in Direction]
            cols += [step_two_residual(k, c, args.b, d) for d in Direction]
            print(f"{k:>3} {c:>3} " + " ".join(f"{float(v):>14.3e}" for v in cols))


if __name__ == "__main__":
    main()
