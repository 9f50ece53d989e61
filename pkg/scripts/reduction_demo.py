"""Build tree instances for small quantified formulas and compare the game
value on the tree with the formula game.

For every formula the solver's Ms on the tree should equal
baseline + m - val, where val is the optimal number of satisfied clauses.

Usage: python scripts/reduction_demo.py [--vars 2] [--clauses 2] [--caterpillar]
"""
import argparse
import time

from shvg.graph import MAKER, Position
from shvg.sat_reduce import build_caterpillar_instance, build_tree_instance, qbf_max_value
from shvg.solver import SolveConfig, Solver
from shvg.verify import small_formulas


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--vars", type=int, default=2)
    ap.add_argument("--clauses", type=int, default=2)
    ap.add_argument("--caterpillar", action="store_true",
                    help="only existential formulas, built as caterpillars")
    args = ap.parse_args()

    bad = 0
    print(f"{'prefix':14s} {'clauses':22s} {'n(tree)':>8s} {'val':>4s} {'Ms-s0':>6s}  time")
    for f in small_formulas(args.vars, args.clauses):
        if args.caterpillar:
            if not f.is_existential or max(f.occurrences().values()) > 2:
                continue
            art = build_caterpillar_instance(f, 1)
        else:
            art = build_tree_instance(f, 1)
        t = time.perf_counter()
        ms = Solver(art.instance, SolveConfig()).score(Position(art.instance), MAKER)
        dt = time.perf_counter() - t
        val = qbf_max_value(f)
        ok = ms - art.baseline == f.m - val
        bad += not ok
        prefix = " ".join(f"{q}{v}" for q, v in f.prefix)
        print(f"{prefix:14s} {str(list(f.clauses)):22s} {art.instance.n:8d} {val:4d} "
              f"{ms - art.baseline:6d}  {dt:.2f}s{'' if ok else '  MISMATCH'}")
    print(f"mismatches: {bad}")


if __name__ == "__main__":
    main()
