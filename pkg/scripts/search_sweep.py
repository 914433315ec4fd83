"""Run the packing search for a range of n and tabulate the gap to k + c/k.

    python scripts/search_sweep.py --max-n 20 --restarts 16 --out-dir runs/
"""
import argparse
from pathlib import Path

from squarepack import io
from squarepack.bounds import epsilon_diagnostic
from squarepack.constructions import conjectured_value, decompose
from squarepack.search import SearchConfig, search


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--min-n", type=int, default=1)
    ap.add_argument("--max-n", type=int, default=12)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--restarts", type=int, default=8)
    ap.add_argument("--iters", type=int, default=6000)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--out-dir", type=Path, default=None)
    args = ap.parse_args()

    rows = []
    print(f"{'n':>3} {'k':>3} {'c':>3} {'conjectured':>12} {'found':>14} {'gap':>12}  flag")
    for n in range(args.min_n, args.max_n + 1):
        cfg = SearchConfig(n=n, seed=args.seed, restarts=args.restarts,
                           iterations_per_restart=args.iters, workers=args.workers)
        r = search(cfg)
        d = decompose(n)
        c = 0 if d.c is None else d.c
        found = r.exact_sum
        print(f"{n:>3} {d.k:>3} {c:>3} {str(conjectured_value(n)):>12} {str(found):>14} "
              f"{str(r.conjecture_gap):>12}  {'COUNTEREXAMPLE' if r.counterexample_flag else ''}")
        if found is not None and d.c is not None:
            rows.append((d.k, d.c, found))
        if args.out_dir and r.best_packing is not None:
            args.out_dir.mkdir(parents=True, exist_ok=True)
            (args.out_dir / f"n{n}.json").write_text(io.dumps_packing(r.best_packing))
            (args.out_dir / f"n{n}.svg").write_text(io.packing_svg(r.best_packing))

    print("\nk*eps(k) for nonsquare n:")
    for rec in epsilon_diagnostic(rows):
        print(f"  k={rec.k} c={rec.c}: eps={rec.epsilon}  k*eps={rec.k_epsilon}")


if __name__ == "__main__":
    main()
