"""Node counts and times with each solver feature switched off.

Usage: python scripts/ablation.py [--seed N] [--budget SECONDS] [--csv out.csv]
"""
import argparse
import csv
import random
import time

from shvg import generators as gen
from shvg.errors import ResourceExceeded
from shvg.graph import BREAKER, MAKER, Position
from shvg.solver import SolveConfig, Solver

FEATURES = ["super_lemma", "decompose", "move_ordering", "component_split", "pds_fast_path",
            "breaker_pruning"]


def instances(seed):
    rng = random.Random(seed)
    yield "T3", gen.complete_binary_tree(3)
    yield "petersen", gen.petersen()
    yield "P5+P6+P7", gen.union_of_paths((5, 6, 7))
    for i in range(4):
        yield f"tree{i}", gen.random_tree(rng, 18)
    for i in range(3):
        yield f"twins{i}", gen.planted_twins(rng, 5, 20, 0.4)
    for i in range(3):
        yield f"gnp{i}", gen.random_graph(rng, 14, 0.25)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--budget", type=float, default=20.0)
    ap.add_argument("--csv")
    args = ap.parse_args()

    configs = {"all": SolveConfig(closed_form_dispatch=False, time_budget=args.budget)}
    for f in FEATURES:
        configs["-" + f] = SolveConfig(closed_form_dispatch=False, time_budget=args.budget,
                                       **{f: False})
    rows = []
    for name, g in instances(args.seed):
        ref = None
        for cname, cfg in configs.items():
            s = Solver(g, cfg)
            t = time.perf_counter()
            try:
                pair = (s.score(Position(g), MAKER), s.score(Position(g), BREAKER))
            except ResourceExceeded:
                pair = None
            dt = time.perf_counter() - t
            if ref is None:
                ref = pair
            if pair is not None and ref is not None:
                assert pair == ref, (name, cname, pair, ref)
            rows.append((name, g.n, cname, pair, s.stats.nodes, dt))
            print(f"{name:10s} {g.n:3d} {cname:18s} {str(pair):8s} {s.stats.nodes:9d} {dt:8.3f}s",
                  flush=True)
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["graph", "n", "config", "ms", "bs", "nodes", "seconds"])
            for name, n, cname, pair, nodes, dt in rows:
                ms, bs = pair if pair else ("", "")
                w.writerow([name, n, cname, ms, bs, nodes, f"{dt:.4f}"])


if __name__ == "__main__":
    main()
