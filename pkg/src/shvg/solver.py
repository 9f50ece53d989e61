"""Exact Ms/Bs by memoised minimax over a reduced form of the position.

The search does not walk the graph itself. A position is translated into a
weighted family of *targets*: for each vertex w that has no Breaker
neighbour and is not yet happy, the set of free vertices in N[w]. A target
is completed (scores its weight) once Maker owns all of it and is deleted as
soon as Breaker takes one of its vertices. Vertices whose targets coincide
are merged into one weighted target. Deleting dead targets and forgetting
vertices that no target mentions is exactly the decomposed-graph reduction,
so it is what the ``decompose`` flag toggles.
"""
from __future__ import annotations

import time
from collections import defaultdict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

from .errors import ResourceExceeded
from .graph import (BREAKER, MAKER, Graph, Player, Position, bits,
                    instant_gain, neighborhood_partition)
from .milnor import ScorePair, find_pairing, sum_bounds
from .oracle import brute_force_score

Targets = dict[int, int]  # free-vertex mask -> weight


@dataclass(frozen=True)
class SolveConfig:
    super_lemma: bool = True
    decompose: bool = True
    move_ordering: bool = True
    component_split: bool = True
    pds_fast_path: bool = True
    closed_form_dispatch: bool = True
    # prune dominated moves for Breaker too (mirror of the Maker argument)
    breaker_pruning: bool = True
    memo_limit: int | None = 5_000_000
    time_budget: float | None = None
    pds_limit: int = 10
    threads: int = 1

    @classmethod
    def brute_force(cls, **kw) -> "SolveConfig":
        return cls(super_lemma=False, decompose=False, move_ordering=False,
                   component_split=False, pds_fast_path=False,
                   closed_form_dispatch=False, **kw)

    @property
    def is_brute_force(self) -> bool:
        return not (self.super_lemma or self.decompose or self.move_ordering
                    or self.component_split or self.pds_fast_path
                    or self.closed_form_dispatch)


@dataclass
class Stats:
    nodes: int = 0
    memo_hits: int = 0
    super_lemma_pairs: int = 0
    splits: int = 0
    cold_parts: int = 0
    pruned: int = 0
    pds_hits: int = 0
    closed_form: int = 0
    bound_cutoffs: int = 0

    def as_dict(self) -> dict[str, int]:
        return dict(vars(self))

    def diff(self, before: dict[str, int]) -> dict[str, int]:
        return {k: v - before.get(k, 0) for k, v in vars(self).items()}


# --- target arithmetic ---------------------------------------------------------

def targets_of(pos: Position) -> tuple[Targets, int]:
    """Targets of ``pos`` and the number of vertices that are already happy."""
    g = pos.graph
    m, b = pos.maker_mask, pos.breaker_mask
    free = g.full_mask & ~(m | b)
    targets: Targets = defaultdict(int)
    happy = 0
    for c in g.closed_masks:
        if c & b:
            continue
        need = c & free
        if need:
            targets[need] += 1
        else:
            happy += 1
    return dict(targets), happy


def _maker_takes(targets: Targets, x: int) -> tuple[Targets, int]:
    bit = 1 << x
    out: Targets = {}
    gain = 0
    for t, w in targets.items():
        if t & bit:
            t ^= bit
            if not t:
                gain += w
                continue
        out[t] = out.get(t, 0) + w
    return out, gain


def _breaker_takes(targets: Targets, x: int) -> Targets:
    bit = 1 << x
    return {t: w for t, w in targets.items() if not t & bit}


def _support(targets: Targets) -> int:
    s = 0
    for t in targets:
        s |= t
    return s


def _split(free: int, targets: Targets) -> list[tuple[int, Targets]]:
    """Connected components of the free vertices linked through shared targets."""
    parent: dict[int, int] = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for v in bits(free):
        parent[v] = v
    for t in targets:
        vs = bits(t)
        r = find(vs[0])
        for v in vs[1:]:
            rv = find(v)
            if rv != r:
                parent[rv] = r
    groups: dict[int, int] = defaultdict(int)
    for v in bits(free):
        groups[find(v)] |= 1 << v
    comps = []
    for mask in sorted(groups.values(), key=lambda m: m & -m):
        comps.append((mask, {t: w for t, w in targets.items() if t & mask}))
    return comps


def gains_and_bounds(targets: Targets, free: int) -> dict[int, tuple[int, int]]:
    """Per free vertex: (points scored instantly by Maker taking it,
    weight of all targets through it)."""
    out = {v: [0, 0] for v in bits(free)}
    for t, w in targets.items():
        single = t & (t - 1) == 0
        for v in bits(t):
            out[v][1] += w
            if single:
                out[v][0] += w
    return {v: (h, b) for v, (h, b) in out.items()}


def ordered_moves(targets: Targets, free: int, prune: bool) -> tuple[list[int], list[int]]:
    """Free vertices by decreasing instant gain, then decreasing bound, then id.

    With ``prune``, a vertex u is dropped when an earlier kept vertex v has
    gain(v) >= bound(u): some optimal line plays v before u, so u is never
    needed as the next move. Returns (kept, pruned).
    """
    hb = gains_and_bounds(targets, free)
    order = sorted(hb, key=lambda v: (-hb[v][0], -hb[v][1], v))
    if not prune:
        return order, []
    kept, pruned = [], []
    best_gain = -1
    for v in order:
        # kept vertices come first in gain order, so the first kept has the max
        if kept and best_gain >= hb[v][1]:
            pruned.append(v)
        else:
            kept.append(v)
            best_gain = max(best_gain, hb[v][0])
    return kept, pruned


def _signature(index: dict[int, list[tuple[int, int]]], v: int) -> tuple:
    return tuple(sorted((bin(t).count("1"), w) for t, w in index.get(v, ())))


def _interchangeable(index: dict[int, list[tuple[int, int]]], u: int, v: int) -> bool:
    """Whether u and v add the same points for every future Maker set avoiding both.

    For X ranging over sets of free vertices without u and v, the number of
    targets inside X + u equals that inside X + v iff the weighted families
    {t - u : u in t, v not in t} and {t - v : v in t, u not in t} coincide
    (a counting function over subsets determines the family).
    """
    ub, vb = 1 << u, 1 << v
    a: dict[int, int] = defaultdict(int)
    b: dict[int, int] = defaultdict(int)
    for t, w in index.get(u, ()):
        if not t & vb:
            a[t ^ ub] += w
    for t, w in index.get(v, ()):
        if not t & ub:
            b[t ^ vb] += w
    return a == b


def find_super_pair(targets: Targets, free: int) -> tuple[int, int] | None:
    """The pair u < v with largest (v, u) that may be split between the players.

    Taking the highest pair first works from the leaves of a heap-numbered
    tree towards its root, the order in which hand proofs apply the pairing.
    """
    index: dict[int, list[tuple[int, int]]] = defaultdict(list)
    for t, w in targets.items():
        for v in bits(t):
            index[v].append((t, w))
    buckets: dict[tuple, list[int]] = defaultdict(list)
    for v in bits(free):
        buckets[_signature(index, v)].append(v)
    best = None
    for vs in buckets.values():
        vs = vs[::-1]
        for i, v in enumerate(vs):
            if best is not None and v < best[1]:
                break
            for u in vs[i + 1:]:
                if _interchangeable(index, u, v):
                    if best is None or (v, u) > (best[1], best[0]):
                        best = (u, v)
                    break
    return best


# --- the solver -------------------------------------------------------------------

class Solver:
    """Memoised solver bound to one graph; reuse it across positions of that graph."""

    def __init__(self, graph: Graph, cfg: SolveConfig | None = None):
        self.graph = graph
        self.cfg = cfg or SolveConfig()
        self.memo: dict[tuple, int] = {}
        self.stats = Stats()
        self._deadline: float | None = None

    # public API

    def score(self, pos: Position, mover: Player = MAKER) -> int:
        if pos.graph != self.graph:
            raise ValueError("position belongs to a different graph")
        cfg = self.cfg
        if cfg.is_brute_force:
            return brute_force_score(pos, mover, max_states=cfg.memo_limit,
                                     time_budget=cfg.time_budget)
        self._deadline = (None if cfg.time_budget is None
                          else time.perf_counter() + cfg.time_budget)
        if cfg.closed_form_dispatch and not pos.maker and not pos.breaker:
            from .closed_form import formula_score
            val = formula_score(self.graph, mover)
            if val is not None:
                self.stats.closed_form += 1
                return val
        base = 0
        if cfg.super_lemma:
            pairs = twin_pairs(pos)
            self.stats.super_lemma_pairs += len(pairs)
            pos = pos.play_pairs(pairs)
        targets, base = targets_of(pos)
        free = self.graph.full_mask & ~(pos.maker_mask | pos.breaker_mask)
        if cfg.decompose:
            free &= _support(targets)
        return base + self._value(free, targets, mover, root=True)

    def pair(self, pos: Position) -> ScorePair:
        return ScorePair(self.score(pos, MAKER), self.score(pos, BREAKER))

    def best_move(self, pos: Position, mover: Player = MAKER) -> tuple[int, int]:
        free = sorted(pos.free)
        if not free:
            raise ValueError("no move in a terminal position")
        best_v, best = None, None
        for v in free:
            val = self.score(pos.play(v, mover), mover.other)
            better = (best is None or (val > best if mover is MAKER else val < best))
            if better:
                best_v, best = v, val
        return best_v, best

    # search

    def _tick(self):
        st = self.stats
        st.nodes += 1
        if self.cfg.memo_limit is not None and len(self.memo) > self.cfg.memo_limit:
            raise ResourceExceeded(f"memo exceeded {self.cfg.memo_limit} entries")
        if self._deadline is not None and st.nodes & 255 == 0 \
                and time.perf_counter() > self._deadline:
            raise ResourceExceeded(f"time budget {self.cfg.time_budget}s exceeded")

    def _value(self, free: int, targets: Targets, mover: Player, root: bool = False) -> int:
        if not targets:
            return 0
        key = (mover is MAKER, free, frozenset(targets.items()))
        hit = self.memo.get(key)
        if hit is not None:
            self.stats.memo_hits += 1
            return hit
        self._tick()
        val = self._evaluate(free, targets, mover, root)
        self.memo[key] = val
        return val

    def _after(self, free: int, targets: Targets, used: int) -> int:
        free &= ~used
        if self.cfg.decompose:
            free &= _support(targets)
        return free

    def _evaluate(self, free: int, targets: Targets, mover: Player, root: bool) -> int:
        cfg = self.cfg
        if cfg.super_lemma:
            pair = find_super_pair(targets, free)
            if pair is not None:
                u, v = pair
                self.stats.super_lemma_pairs += 1
                t1, gain = _maker_takes(targets, u)
                t2 = _breaker_takes(t1, v)
                return gain + self._value(self._after(free, t2, (1 << u) | (1 << v)),
                                          t2, mover, root)
        if cfg.component_split:
            comps = _split(free, targets)
            if len(comps) > 1:
                return self._sum(comps, mover)
        if cfg.pds_fast_path and bin(free).count("1") <= cfg.pds_limit:
            if find_pairing(list(targets), free) is not None:
                self.stats.pds_hits += 1
                return 0
        return self._search(free, targets, mover, None, None, parallel=root)

    def _sum(self, comps: list[tuple[int, Targets]], mover: Player) -> int:
        self.stats.splits += 1
        cold = 0
        hot = []
        for free, targets in comps:
            if not targets:
                continue
            ms = self._value(free, targets, MAKER)
            bs = self._value(free, targets, BREAKER)
            if ms == bs:
                self.stats.cold_parts += 1
                cold += ms
            else:
                hot.append((free, targets, ScorePair(ms, bs)))
        if not hot:
            return cold
        if len(hot) == 1:
            p = hot[0][2]
            return cold + (p.ms if mover is MAKER else p.bs)
        free = 0
        targets: Targets = {}
        for f, t, _ in hot:
            free |= f
            targets.update(t)
        b = sum_bounds([p for _, _, p in hot])
        if mover is MAKER:
            lo, hi = b.ms_lower, b.ms_upper
        else:
            lo, hi = b.bs_lower, b.bs_upper
        key = ("sum", mover is MAKER, free, frozenset(targets.items()))
        val = self.memo.get(key)
        if val is None:
            val = self._search(free, targets, mover, lo, hi)
            self.memo[key] = val
        return cold + val

    def _search(self, free: int, targets: Targets, mover: Player,
                lo: int | None, hi: int | None, parallel: bool = False) -> int:
        cfg = self.cfg
        prune = cfg.move_ordering and (mover is MAKER or cfg.breaker_pruning)
        if cfg.move_ordering:
            moves, pruned = ordered_moves(targets, free, prune)
            self.stats.pruned += len(pruned)
        else:
            moves = bits(free)
        if lo is None:
            lo = 0
        if hi is None:
            hi = sum(targets.values())
        maker = mover is MAKER

        def child(x: int) -> int:
            if maker:
                t, gain = _maker_takes(targets, x)
                return gain + self._value(self._after(free, t, 1 << x), t, BREAKER)
            t = _breaker_takes(targets, x)
            return self._value(self._after(free, t, 1 << x), t, MAKER)

        if parallel and cfg.threads > 1 and len(moves) > 1:
            with ThreadPoolExecutor(cfg.threads) as ex:
                vals = list(ex.map(child, moves))
            return max(vals) if maker else min(vals)

        best = None
        for x in moves:
            v = child(x)
            if best is None or (v > best if maker else v < best):
                best = v
            if (maker and best >= hi) or (not maker and best <= lo):
                self.stats.bound_cutoffs += 1
                break
        return best


def twin_pairs(pos: Position) -> list[tuple[int, int]]:
    """Pairs of free same-type vertices, one class at a time.

    Same-type vertices are exchanged by a graph automorphism that fixes
    everything else, so any two free ones may be split between the players.
    Within a class the lowest free vertex is left over when the count is odd.
    """
    part = neighborhood_partition(pos.graph)
    free = pos.free
    pairs = []
    for cls in part.classes:
        fv = [v for v in cls if v in free]
        if len(fv) % 2:
            fv = fv[1:]
        pairs.extend((fv[i], fv[i + 1]) for i in range(0, len(fv), 2))
    return pairs


def super_lemma_pairs(pos: Position) -> list[tuple[int, int]]:
    """Every pair coloured by :func:`super_lemma_reduce`, in order (Maker first)."""
    pairs = twin_pairs(pos)
    pos = pos.play_pairs(pairs)
    targets, _ = targets_of(pos)
    free = pos.graph.full_mask & ~(pos.maker_mask | pos.breaker_mask)
    while True:
        pair = find_super_pair(targets, free)
        if pair is None:
            return pairs
        u, v = pair
        pairs.append(pair)
        targets, _ = _maker_takes(targets, u)
        targets = _breaker_takes(targets, v)
        free &= ~((1 << u) | (1 << v))


def super_lemma_reduce(pos: Position) -> Position:
    return pos.play_pairs(super_lemma_pairs(pos))


def order_moves(pos: Position, mover: Player = MAKER) -> tuple[list[int], set[int]]:
    """Free vertices by (instant gain desc, |N[u] - B| desc, id) plus a prune set.

    u is prunable when an unpruned v != u has instant_gain(v) >= |N[u] - B|;
    ties between mutually dominating vertices keep the earlier (lower id) one.
    """
    g = pos.graph
    free = sorted(pos.free)
    gain = {v: instant_gain(pos, v) for v in free}
    bound = {v: len(g.closed(v) - pos.breaker) for v in free}
    order = sorted(free, key=lambda v: (-gain[v], -bound[v], v))
    kept: list[int] = []
    pruned: set[int] = set()
    for u in order:
        if any(gain[v] >= bound[u] for v in kept):
            pruned.add(u)
        else:
            kept.append(u)
    return order, pruned


def solve(pos: Position, mover: Player = MAKER, cfg: SolveConfig | None = None) -> int:
    return Solver(pos.graph, cfg).score(pos, mover)


def solve_pair(g: Graph, cfg: SolveConfig | None = None) -> ScorePair:
    return Solver(g, cfg).pair(Position(g))


def best_move(pos: Position, mover: Player = MAKER,
              cfg: SolveConfig | None = None) -> tuple[int, int]:
    return Solver(pos.graph, cfg).best_move(pos, mover)


def principal_line(pos: Position, mover: Player = MAKER,
                   solver: Solver | None = None) -> list[dict]:
    """Optimal play to the end, one record per ply."""
    solver = solver or Solver(pos.graph)
    trace = []
    ply = 0
    while pos.free:
        before = solver.stats.as_dict()
        v, val = solver.best_move(pos, mover)
        d = solver.stats.diff(before)
        reductions = {k: d[k] for k in ("super_lemma_pairs", "splits", "cold_parts",
                                        "pruned", "pds_hits", "closed_form") if d[k]}
        trace.append({"ply": ply, "player": mover.value, "vertex": v, "score": val,
                      "reductions": reductions, "nodes": d["nodes"]})
        pos = pos.play(v, mover)
        mover = mover.other
        ply += 1
    return trace


def with_flags(cfg: SolveConfig, **flags) -> SolveConfig:
    return replace(cfg, **flags)


__all__ = [
    "SolveConfig", "Solver", "Stats", "solve", "solve_pair", "best_move",
    "order_moves", "super_lemma_reduce", "super_lemma_pairs", "twin_pairs",
    "principal_line", "targets_of",
]
