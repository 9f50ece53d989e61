"""Oracle-equivalence suites, shared by ``shvg verify`` and the test-suite.

Each suite compares a fast method against a slower reference that follows
the definitions directly, and reports every disagreement it finds.
"""
from __future__ import annotations

import itertools
import random
import time
from collections import Counter
from dataclasses import asdict, dataclass, field
from typing import Callable

from . import generators as gen
from .closed_form import (complete_binary_tree_score, path_score, subdivided_star_score,
                          union_paths_score)
from .errors import ResourceExceeded
from .fpt import nd_solve
from .graph import BREAKER, MAKER, Position, decompose, disjoint_union
from .milnor import ScorePair, find_pairing_dominating_set, sum_bounds
from .oracle import brute_force_pair, brute_force_score
from .sat_reduce import (Qbf2Formula, bound_occurrences, break_cycles,
                         build_caterpillar_instance, build_tree_instance, is_acyclic,
                         is_caterpillar, lci_graph, max2sat_optimum, qbf_max_solve)
from .solver import SolveConfig, Solver, super_lemma_pairs

DEFAULT_SEED = 20240611
# search features on, but no closed-form shortcut: suites that check a
# formula must not let the solver read the answer off that formula
ENGINE = SolveConfig(closed_form_dispatch=False)


@dataclass
class VerifyConfig:
    seed: int = DEFAULT_SEED
    max_n: int | None = None      # per-suite default when None
    count: int | None = None
    vars: int = 2
    clauses: int = 2


@dataclass
class SuiteResult:
    suite: str
    checked: int = 0
    failures: list[str] = field(default_factory=list)
    seconds: float = 0.0
    notes: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, msg: str):
        if len(self.failures) < 50:
            self.failures.append(msg)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["passed"] = self.passed
        return d


def _engine_pair(pos: Position, cfg: SolveConfig = ENGINE) -> ScorePair:
    s = Solver(pos.graph, cfg)
    return ScorePair(s.score(pos, MAKER), s.score(pos, BREAKER))


def suite_paths(cfg: VerifyConfig, res: SuiteResult):
    for n in range(1, (cfg.max_n or 12) + 1):
        got = brute_force_pair(Position(gen.path(n)))
        want = (path_score(n, MAKER), path_score(n, BREAKER))
        res.checked += 1
        if got != want:
            res.fail(f"P{n}: brute force {got}, formula {want}")


def _multisets(total: int):
    """Multisets of positive parts with sum <= total, as sorted tuples."""
    def rec(remaining, largest):
        yield ()
        for p in range(min(remaining, largest), 0, -1):
            for rest in rec(remaining - p, p):
                yield (p,) + rest
    for ms in rec(total, total):
        if ms:
            yield tuple(sorted(ms))


def suite_unions(cfg: VerifyConfig, res: SuiteResult):
    for lengths in _multisets(cfg.max_n or 14):
        g = gen.union_of_paths(lengths)
        got = _engine_pair(Position(g))
        want = (union_paths_score(lengths, MAKER), union_paths_score(lengths, BREAKER))
        res.checked += 1
        if tuple(got) != want:
            res.fail(f"paths {lengths}: solver {tuple(got)}, formula {want}")


def suite_cycles(cfg: VerifyConfig, res: SuiteResult):
    for n in range(3, (cfg.max_n or 9) + 1):
        pos = Position(gen.cycle(n))
        for name, got in (("solver", tuple(_engine_pair(pos))), ("brute force", brute_force_pair(pos))):
            res.checked += 1
            if got != (0, 0):
                res.fail(f"C{n}: {name} {got}")


def suite_stars(cfg: VerifyConfig, res: SuiteResult):
    max_n = cfg.max_n or 13
    for k in range(3, 6):
        for legs in itertools.combinations_with_replacement(range(1, max_n), k):
            if 1 + sum(legs) > max_n:
                continue
            g = gen.subdivided_star(legs)
            got = _engine_pair(Position(g))
            want = (subdivided_star_score(legs, MAKER), subdivided_star_score(legs, BREAKER))
            res.checked += 1
            if tuple(got) != want:
                res.fail(f"star {legs}: solver {tuple(got)}, formula {want}")


def suite_binary_trees(cfg: VerifyConfig, res: SuiteResult):
    for d in range(0, 3):
        got = brute_force_pair(Position(gen.complete_binary_tree(d)))
        want = (complete_binary_tree_score(d, MAKER), complete_binary_tree_score(d, BREAKER))
        res.checked += 1
        if got != want:
            res.fail(f"T{d}: brute force {got}, formula {want}")
    t = time.perf_counter()
    got = _engine_pair(Position(gen.complete_binary_tree(3)))
    res.notes["t3_seconds"] = round(time.perf_counter() - t, 3)
    res.checked += 1
    if tuple(got) != (2, 2):
        res.fail(f"T3: solver {tuple(got)}, expected (2, 2)")


def suite_super_lemma(cfg: VerifyConfig, res: SuiteResult):
    rng = random.Random(cfg.seed)
    max_n = cfg.max_n or 9
    applied = 0
    for _ in range(cfg.count or 500):
        n = rng.randint(2, max_n)
        g = gen.planted_twins(rng, rng.randint(1, min(4, n)), n, rng.uniform(0.2, 0.8))
        pos = gen.random_position(rng, g, rng.choice((0.0, 0.2, 0.4)))
        before = brute_force_pair(pos)
        for u, v in super_lemma_pairs(pos):
            pos = pos.play_pairs([(u, v)])
            after = brute_force_pair(pos)
            applied += 1
            res.checked += 1
            if after != before:
                res.fail(f"pair ({u},{v}) on {g.n} vertices changed {before} -> {after}")
                break
    res.notes["pairings_applied"] = applied


def suite_decompose(cfg: VerifyConfig, res: SuiteResult):
    rng = random.Random(cfg.seed)
    max_n = cfg.max_n or 9
    for _ in range(cfg.count or 500):
        n = rng.randint(1, max_n)
        g = gen.random_graph(rng, n, rng.uniform(0.2, 0.7))
        pos = gen.random_position(rng, g, rng.uniform(0.1, 0.6))
        a, b = brute_force_pair(pos), brute_force_pair(decompose(pos))
        res.checked += 1
        if a != b:
            res.fail(f"{g.n} vertices: original {a}, decomposed {b}")


def suite_milnor(cfg: VerifyConfig, res: SuiteResult):
    rng = random.Random(cfg.seed)
    max_n = cfg.max_n or 6
    for _ in range(cfg.count or 200):
        parts = []
        for _ in range(2):
            n = rng.randint(1, max_n)
            g = gen.random_graph(rng, n, rng.uniform(0.2, 0.8)) if rng.random() < 0.7 \
                else gen.random_tree(rng, n)
            parts.append(g)
        pairs = [ScorePair(*brute_force_pair(Position(p))) for p in parts]
        whole = ScorePair(*brute_force_pair(Position(disjoint_union(*parts))))
        bounds = sum_bounds(pairs)
        res.checked += 1
        if not bounds.contains(whole):
            res.fail(f"parts {pairs}: sum {whole} outside {bounds}")


def suite_fpt(cfg: VerifyConfig, res: SuiteResult):
    """Corpus graphs against brute force, then planted-twin graphs up to 20 vertices.

    Brute force on 20 vertices means up to 3**20 states, so above 11 vertices
    the reference is the full solver (itself checked against brute force by
    the other suites) and brute force is only timed under a short budget.
    """
    for name, g in gen.corpus(12):
        for mv in (MAKER, BREAKER):
            res.checked += 1
            a, b = nd_solve(g, mv), brute_force_score(Position(g), mv)
            if a != b:
                res.fail(f"corpus {name} {mv.value}: nd {a}, brute force {b}")
    rng = random.Random(cfg.seed)
    max_n = cfg.max_n or 20
    slowest, bf_outcomes = 0.0, Counter()
    for _ in range(cfg.count or 100):
        n = rng.randint(min(8, max_n), max_n)
        g = gen.planted_twins(rng, rng.randint(1, 6), n, rng.uniform(0.2, 0.8))
        for mv in (MAKER, BREAKER):
            t = time.perf_counter()
            a = nd_solve(g, mv, max_w=6)
            nd_t = time.perf_counter() - t
            slowest = max(slowest, nd_t)
            if nd_t >= 1.0:
                res.fail(f"nd_solve took {nd_t:.2f}s on {n} vertices")
            t = time.perf_counter()
            if n <= 11:
                b = brute_force_score(Position(g), mv)
                outcome = "slower" if time.perf_counter() - t > nd_t else "faster"
            else:
                b = Solver(g, ENGINE).score(Position(g), mv)
                t = time.perf_counter()
                try:
                    brute_force_score(Position(g), mv, time_budget=max(0.05, 5 * nd_t))
                    outcome = "slower" if time.perf_counter() - t > nd_t else "faster"
                except ResourceExceeded:
                    outcome = "infeasible"
            bf_outcomes[outcome] += 1
            if outcome == "faster":
                res.fail(f"brute force beat nd_solve on {n} vertices")
            res.checked += 1
            if a != b:
                res.fail(f"planted {n} vertices {mv.value}: nd {a}, reference {b}")
    res.notes["slowest_nd_seconds"] = round(slowest, 4)
    res.notes["brute_force"] = dict(bf_outcomes)


def _random_formula(rng: random.Random, n: int, m: int, quantified: bool = False) -> Qbf2Formula:
    prefix = tuple((rng.choice("ea") if quantified else "e", v) for v in range(1, n + 1))
    clauses = []
    for _ in range(m):
        a, b = rng.sample(range(1, n + 1), 2)
        clauses.append((a * rng.choice((1, -1)), b * rng.choice((1, -1))))
    return Qbf2Formula(prefix, tuple(clauses))


def suite_gadget(cfg: VerifyConfig, res: SuiteResult):
    rng = random.Random(cfg.seed)
    applications = 0
    for _ in range(cfg.count or 200):
        f = _random_formula(rng, rng.randint(2, 6), rng.randint(1, 8))
        out = break_cycles(f, 0)
        applications += out.gadgets
        res.checked += 1
        shift = max2sat_optimum(out.formula) - max2sat_optimum(f)
        if not is_acyclic(out.formula):
            res.fail(f"{f.to_text()!r}: output still cyclic")
        elif shift != 4 * out.gadgets or out.k != 4 * out.gadgets:
            res.fail(f"{f.to_text()!r}: optimum moved {shift} after {out.gadgets} gadgets")
    res.notes["gadget_applications"] = applications


def _max2sat3(rng: random.Random, n: int) -> Qbf2Formula:
    """Random formula in which every variable occurs at most three times."""
    slots = Counter()
    clauses = []
    for _ in range(rng.randint(1, 3 * n // 2)):
        open_vars = [v for v in range(1, n + 1) if slots[v] < 3]
        if len(open_vars) < 2:
            break
        a, b = rng.sample(open_vars, 2)
        slots[a] += 1
        slots[b] += 1
        # bias the sign so some literal tends to occur three times
        sa = 1 if rng.random() < 0.75 else -1
        clauses.append((sa * a, b * rng.choice((1, -1))))
    return Qbf2Formula(tuple(("e", v) for v in range(1, n + 1)), tuple(clauses))


def suite_occurrences(cfg: VerifyConfig, res: SuiteResult):
    rng = random.Random(cfg.seed)
    removals = 0
    for _ in range(cfg.count or 200):
        f = _max2sat3(rng, rng.randint(2, 6))
        out = bound_occurrences(f, 0)
        removals += out.removals
        occ = out.formula.occurrences()
        res.checked += 1
        shift = max2sat_optimum(out.formula) - max2sat_optimum(f)
        if max(occ.values(), default=0) > 2:
            res.fail(f"{f.to_text()!r}: a literal still occurs {max(occ.values())} times")
        elif not is_acyclic(out.formula):
            res.fail(f"{f.to_text()!r}: output cyclic")
        elif shift != out.k or out.k != -3 * out.removals + 4 * out.gadgets:
            res.fail(f"{f.to_text()!r}: optimum moved {shift}, k moved {out.k}")
    res.notes["removals"] = removals


def small_formulas(max_vars: int = 2, max_clauses: int = 2):
    """Every buildable formula on at most ``max_vars`` variables and ``max_clauses`` clauses."""
    for n in range(2, max_vars + 1):
        lits = [l for v in range(1, n + 1) for l in (v, -v)]
        pairs = [(a, b) for a, b in itertools.combinations(lits, 2) if abs(a) != abs(b)]
        for m in range(1, max_clauses + 1):
            for cl in itertools.combinations(pairs, m):
                for order in itertools.permutations(range(1, n + 1)):
                    for quants in itertools.product("ea", repeat=n):
                        f = Qbf2Formula(tuple(zip(quants, order)), cl)
                        if is_acyclic(f) and lci_graph(f).is_simple:
                            yield f


def _round_trip(f: Qbf2Formula, res: SuiteResult, builder=build_tree_instance):
    art = builder(f, 1)
    ms = Solver(art.instance, SolveConfig()).score(Position(art.instance), MAKER)
    for k in range(0, f.m + 2):
        satisfier_wins, val = qbf_max_solve(f, k)
        s = art.baseline + f.m - k + 1
        res.checked += 1
        if (ms >= s) != (not satisfier_wins):
            res.fail(f"{f.to_text()!r} k={k}: Ms={ms}, s={s}, formula value {val}")


def suite_reduction(cfg: VerifyConfig, res: SuiteResult):
    formulas = 0
    for f in small_formulas(cfg.vars, cfg.clauses):
        formulas += 1
        _round_trip(f, res)
    res.notes["formulas"] = formulas


def _two_two_formula(rng: random.Random) -> Qbf2Formula:
    while True:
        n = rng.randint(2, 6)
        f = _random_formula(rng, n, rng.randint(1, n + 2))
        if (is_acyclic(f) and lci_graph(f).is_simple
                and max(f.occurrences().values()) <= 2):
            return f


def suite_caterpillar(cfg: VerifyConfig, res: SuiteResult):
    rng = random.Random(cfg.seed)
    for i in range(cfg.count or 100):
        f = _two_two_formula(rng)
        art = build_caterpillar_instance(f, 1)
        res.checked += 1
        if not is_caterpillar(art.instance):
            res.fail(f"{f.to_text()!r}: not a caterpillar")
        if i < 20 and f.n <= 3 and f.m <= 2:
            _round_trip(f, res, build_caterpillar_instance)


def suite_pds(cfg: VerifyConfig, res: SuiteResult):
    found = 0
    graphs = [(f"tree{n}.{i}", t) for n in range(1, (cfg.max_n or 9) + 1)
              for i, t in enumerate(gen.nonisomorphic_trees(n))]
    graphs += [(f"C{n}", gen.cycle(n)) for n in range(3, 9)]
    no_pds = SolveConfig(closed_form_dispatch=False, pds_fast_path=False)
    for name, g in graphs:
        if find_pairing_dominating_set(g) is None:
            continue
        found += 1
        res.checked += 1
        pos = Position(g)
        got, ref = tuple(_engine_pair(pos, no_pds)), brute_force_pair(pos)
        if got != (0, 0) or ref != (0, 0):
            res.fail(f"{name}: has a pairing dominating set but solver {got}, brute force {ref}")
    res.notes["graphs"] = len(graphs)
    res.notes["with_pds"] = found


SUITES: dict[str, Callable[[VerifyConfig, SuiteResult], None]] = {
    "paths": suite_paths,
    "unions": suite_unions,
    "cycles": suite_cycles,
    "stars": suite_stars,
    "binary-trees": suite_binary_trees,
    "super-lemma": suite_super_lemma,
    "decompose": suite_decompose,
    "milnor": suite_milnor,
    "fpt": suite_fpt,
    "gadget": suite_gadget,
    "occurrences": suite_occurrences,
    "reduction": suite_reduction,
    "caterpillar": suite_caterpillar,
    "pds": suite_pds,
}


def run_suite(name: str, cfg: VerifyConfig | None = None) -> SuiteResult:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    cfg = cfg or VerifyConfig()
    res = SuiteResult(name)
    t = time.perf_counter()
    SUITES[name](cfg, res)
    res.seconds = round(time.perf_counter() - t, 3)
    return res
