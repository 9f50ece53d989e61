"""Command-line front end: ``shvg <command> ...``.

Exit codes: 0 ok, 1 usage or parse error, 2 resource limit, 3 verification failure.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
import time
from dataclasses import fields
from pathlib import Path

from . import generators as gen
from .closed_form import classify, score_for_class
from .errors import ResourceExceeded
from .fpt import nd_solve_report
from .graph import BREAKER, MAKER, ParseError, Player, Position, format_graph, happy_count, \
    parse_position
from .sat_reduce import ReductionError, build_caterpillar_instance, build_tree_instance, \
    parse_formula
from .solver import SolveConfig, Solver, principal_line
from .verify import DEFAULT_SEED, SUITES, VerifyConfig, run_suite

EXIT_OK, EXIT_USAGE, EXIT_RESOURCE, EXIT_VERIFY = 0, 1, 2, 3

FLAGS = ("super_lemma", "decompose", "move_ordering", "component_split", "pds_fast_path",
         "closed_form_dispatch", "breaker_pruning")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def parse_budget(text: str) -> float:
    m = re.fullmatch(r"\s*([0-9]*\.?[0-9]+)\s*(ms|s|m)?\s*", text)
    if not m:
        raise argparse.ArgumentTypeError(f"bad duration {text!r}")
    scale = {"ms": 0.001, "s": 1.0, "m": 60.0, None: 1.0}[m.group(2)]
    return float(m.group(1)) * scale


def _player(text: str) -> Player:
    try:
        return Player.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _read(path: str) -> str:
    try:
        return sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _emit(obj: dict):
    print(json.dumps(obj, indent=2, sort_keys=True))


def _config(args) -> SolveConfig:
    if args.brute_force:
        return SolveConfig.brute_force(time_budget=args.budget, threads=args.threads)
    kw = {f: not getattr(args, "no_" + f) for f in FLAGS}
    return SolveConfig(time_budget=args.budget, threads=args.threads, **kw)


# --- commands ------------------------------------------------------------------------

def cmd_solve(args) -> int:
    pos = parse_position(_read(args.file))
    cfg = _config(args)
    solver = Solver(pos.graph, cfg)
    t = time.perf_counter()
    out: dict = {"vertices": pos.graph.n,
                 "method": "brute-force" if cfg.is_brute_force else "solver"}
    if args.both:
        ms, bs = solver.score(pos, MAKER), solver.score(pos, BREAKER)
        out.update(ms=ms, bs=bs)
    else:
        out.update(mover=args.mover.value, score=solver.score(pos, args.mover))
    if args.trace:
        out["trace"] = principal_line(pos, args.mover, solver)
    out["seconds"] = round(time.perf_counter() - t, 4)
    out["nodes"] = solver.stats.nodes
    out["stats"] = solver.stats.as_dict()
    if args.json:
        _emit(out)
        return EXIT_OK
    if args.both:
        print(f"ms: {out['ms']}\nbs: {out['bs']}")
    else:
        print(f"score: {out['score']}")
    print(f"nodes: {out['nodes']}")
    used = {k: v for k, v in out["stats"].items() if v and k != "nodes"}
    print("reductions: " + (", ".join(f"{k}={v}" for k, v in used.items()) or "none"))
    for step in out.get("trace", []):
        print(f"  {step['ply']:3d} {step['player']:7s} takes {step['vertex']} -> {step['score']}")
    return EXIT_OK


def _class_params(cls) -> dict:
    return {f.name: getattr(cls, f.name) for f in fields(cls)}


def cmd_classify(args) -> int:
    g = parse_position(_read(args.file)).graph
    cls = classify(g)
    out = {"class": type(cls).__name__, "params": _class_params(cls),
           "ms": score_for_class(cls, MAKER), "bs": score_for_class(cls, BREAKER)}
    if args.json:
        _emit(out)
    else:
        params = ", ".join(f"{k}={v}" for k, v in out["params"].items())
        print(f"{out['class']}({params})")
    return EXIT_OK


def cmd_formula(args) -> int:
    g = parse_position(_read(args.file)).graph
    val = score_for_class(classify(g), args.mover)
    if val is None:
        print("no closed form for this graph", file=sys.stderr)
        return EXIT_USAGE
    print(f"score: {val}")
    return EXIT_OK


def cmd_fpt(args) -> int:
    pos = parse_position(_read(args.file))
    rep = nd_solve_report(pos.graph, args.mover, pos, max_w=args.max_w)
    out = {"mover": args.mover.value, "score": rep.score, "w": rep.w,
           "paired": [list(p) for p in rep.paired], "residual": rep.residual,
           "states": rep.states}
    if args.json:
        _emit(out)
    else:
        print(f"score: {rep.score}\nneighbourhood diversity: {rep.w}\n"
              f"paired: {len(rep.paired)}\nstates: {rep.states}")
    return EXIT_OK


def cmd_reduce(args) -> int:
    f = parse_formula(_read(args.file))
    builder = build_caterpillar_instance if args.target == "caterpillar" else build_tree_instance
    art = builder(f, args.k)
    stem = Path(args.output) if args.output else Path(args.file).with_suffix("")
    if args.file == "-" and not args.output:
        raise UsageError("-o is required when reading the formula from stdin")
    graph_path, side_path = stem.with_suffix(".graph"), stem.with_suffix(".json")
    graph_path.write_text(format_graph(art.instance))
    side_path.write_text(art.sidecar_json() + "\n")
    print(f"threshold: {art.threshold}")
    print(f"baseline: {art.baseline}\nvertices: {art.instance.n}")
    print(f"wrote {graph_path} and {side_path}")
    return EXIT_OK


def cmd_verify(args) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    cfg = VerifyConfig(seed=args.seed, max_n=args.max_n, count=args.count,
                       vars=args.vars, clauses=args.clauses)
    results = []
    for name in names:
        res = run_suite(name, cfg)
        results.append(res)
        if not args.json:
            status = "PASS" if res.passed else "FAIL"
            print(f"{status} {name}: {res.checked} checks in {res.seconds:.2f}s")
            for msg in res.failures:
                print(f"  {msg}")
    ok = all(r.passed for r in results)
    if args.json:
        _emit({"passed": ok, "suites": [r.to_dict() for r in results]})
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_play(args, stdin=None, stdout=None) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    pos = parse_position(_read(args.file))
    solver = Solver(pos.graph, SolveConfig(time_budget=args.budget))
    human, mover = args.human, args.first
    say = lambda *a: print(*a, file=stdout, flush=True)  # noqa: E731
    while pos.free:
        if mover is human:
            say(f"free: {' '.join(map(str, sorted(pos.free)))}")
            stdout.write(f"{mover.value}> ")
            stdout.flush()
            line = stdin.readline()
            if not line:
                print("input closed", file=sys.stderr)
                return EXIT_USAGE
            try:
                v = int(line.strip())
            except ValueError:
                say("enter a vertex id")
                continue
            if v not in pos.free:
                say(f"vertex {v} is not free")
                continue
        else:
            v, val = solver.best_move(pos, mover)
            say(f"{mover.value} takes {v} (value {val})")
        pos = pos.play(v, mover)
        mover = mover.other
    say(f"happy vertices: {happy_count(pos)}")
    return EXIT_OK


BENCH_CONFIGS = {
    "full": SolveConfig(),
    "no-super-lemma": SolveConfig(super_lemma=False),
    "no-split": SolveConfig(component_split=False),
    "no-ordering": SolveConfig(move_ordering=False, breaker_pruning=False),
    "no-closed-form": SolveConfig(closed_form_dispatch=False),
}


def bench_graphs(seed: int):
    import random
    rng = random.Random(seed)
    out = [("T3", gen.complete_binary_tree(3)), ("petersen", gen.petersen()),
           ("S(3,3,4,4)", gen.subdivided_star((3, 3, 4, 4))),
           ("P5+P6+P7", gen.union_of_paths((5, 6, 7)))]
    out += [(f"tree{i}", gen.random_tree(rng, 16)) for i in range(3)]
    out += [(f"twins{i}", gen.planted_twins(rng, 5, 18, 0.4)) for i in range(2)]
    return out


def cmd_bench(args) -> int:
    rows = []
    for name, g in bench_graphs(args.seed):
        for cname, base in BENCH_CONFIGS.items():
            cfg = SolveConfig(**{**base.__dict__, "time_budget": args.budget})
            solver = Solver(g, cfg)
            t = time.perf_counter()
            row = {"graph": name, "vertices": g.n, "config": cname}
            try:
                row.update(ms=solver.score(Position(g), MAKER),
                           bs=solver.score(Position(g), BREAKER))
            except ResourceExceeded as exc:
                row.update(ms=None, bs=None, error=str(exc))
            row.update(nodes=solver.stats.nodes, seconds=round(time.perf_counter() - t, 4))
            rows.append(row)
    if args.json:
        _emit({"seed": args.seed, "rows": rows})
        return EXIT_OK
    print(f"{'graph':12s} {'n':>3s} {'config':16s} {'ms':>3s} {'bs':>3s} {'nodes':>9s} {'sec':>8s}")
    for r in rows:
        ms = "-" if r["ms"] is None else r["ms"]
        bs = "-" if r["bs"] is None else r["bs"]
        print(f"{r['graph']:12s} {r['vertices']:3d} {r['config']:16s} {ms!s:>3s} {bs!s:>3s} "
              f"{r['nodes']:9d} {r['seconds']:8.3f}")
    return EXIT_OK


# --- parser --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="shvg", description="Maker-Breaker scoring happy vertex game tools.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("solve", help="optimal score of a graph or position file")
    s.add_argument("file")
    s.add_argument("--mover", type=_player, default=MAKER)
    s.add_argument("--both", action="store_true", help="print Ms and Bs")
    s.add_argument("--json", action="store_true")
    s.add_argument("--budget", type=parse_budget, default=None, help="time limit, e.g. 1s")
    s.add_argument("--trace", action="store_true", help="print the principal line of play")
    s.add_argument("--threads", type=int, default=1)
    s.add_argument("--brute-force", action="store_true", help="plain minimax, no reductions")
    for f in FLAGS:
        s.add_argument("--no-" + f.replace("_", "-"), dest="no_" + f, action="store_true")
    s.set_defaults(func=cmd_solve)

    c = sub.add_parser("classify", help="recognise a solved graph class")
    c.add_argument("file")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_classify)

    f = sub.add_parser("formula", help="closed-form score, if the graph has one")
    f.add_argument("file")
    f.add_argument("--mover", type=_player, default=MAKER)
    f.set_defaults(func=cmd_formula)

    d = sub.add_parser("fpt", help="solve by neighbourhood diversity")
    d.add_argument("file")
    d.add_argument("--mover", type=_player, default=MAKER)
    d.add_argument("--max-w", type=int, default=20)
    d.add_argument("--json", action="store_true")
    d.set_defaults(func=cmd_fpt)

    r = sub.add_parser("reduce", help="build a tree instance from a quantified 2-CNF formula")
    r.add_argument("file")
    r.add_argument("-k", type=int, required=True)
    r.add_argument("--target", choices=("tree", "caterpillar"), default="tree")
    r.add_argument("-o", "--output", help="output stem; writes STEM.graph and STEM.json")
    r.set_defaults(func=cmd_reduce)

    v = sub.add_parser("verify", help="run an oracle-equivalence suite")
    v.add_argument("suite", choices=[*SUITES, "all"])
    v.add_argument("--max-n", type=int)
    v.add_argument("--count", type=int)
    v.add_argument("--vars", type=int, default=2)
    v.add_argument("--clauses", type=int, default=2)
    v.add_argument("--seed", type=int, default=DEFAULT_SEED)
    v.add_argument("--json", action="store_true")
    v.set_defaults(func=cmd_verify)

    pl = sub.add_parser("play", help="play against the engine")
    pl.add_argument("file")
    pl.add_argument("--human", type=_player, default=BREAKER)
    pl.add_argument("--first", type=_player, default=MAKER)
    pl.add_argument("--budget", type=parse_budget, default=None)
    pl.set_defaults(func=cmd_play)

    b = sub.add_parser("bench", help="time the solver with features switched off")
    b.add_argument("--seed", type=int, default=DEFAULT_SEED)
    b.add_argument("--budget", type=parse_budget, default=10.0)
    b.add_argument("--json", action="store_true")
    b.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ParseError, ReductionError, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceExceeded as exc:
        print(f"resource exceeded: {exc}", file=sys.stderr)
        return EXIT_RESOURCE


if __name__ == "__main__":
    sys.exit(main())
