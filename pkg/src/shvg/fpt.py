"""Scores on graphs of small neighbourhood diversity.

Free vertices of one same-type class are interchangeable, so all but at most
one per class are split between the players up front. What remains has at
most ``w`` free vertices and is solved by exhaustive minimax over
(Maker subset, Breaker subset) states, never more than 3**w of them.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import ResourceExceeded
from .graph import MAKER, Graph, Player, Position, count_happy, neighborhood_partition


class TooManyClasses(ResourceExceeded):
    pass


def nd_value(g: Graph) -> int:
    return len(neighborhood_partition(g))


@dataclass
class NdReport:
    score: int
    w: int
    paired: list[tuple[int, int]]
    residual: list[int]
    states: int


def nd_solve_report(g: Graph, mover: Player = MAKER, pos: Position | None = None,
                    max_w: int = 20) -> NdReport:
    pos = pos or Position(g)
    part = neighborhood_partition(g)
    w = len(part)
    if w > max_w:
        raise TooManyClasses(f"neighbourhood diversity {w} exceeds cap {max_w}")
    maker, breaker = set(pos.maker), set(pos.breaker)
    paired = []
    residual = []
    for cls in part.classes:
        fv = [v for v in cls if v not in maker and v not in breaker]
        if len(fv) % 2:
            residual.append(fv[0])
            fv = fv[1:]
        for i in range(0, len(fv), 2):
            u, v = fv[i], fv[i + 1]
            maker.add(u)
            breaker.add(v)
            paired.append((u, v))
    residual.sort()
    base_m = sum(1 << v for v in maker)
    r = len(residual)
    bit = [1 << v for v in residual]
    memo: dict[tuple[int, int], int] = {}

    # states are subsets of residual indices; pairing colours an even number
    # of vertices so it never changes whose turn it is
    def rec(ms: int, bs: int, maker_turn: bool) -> int:
        key = (ms, bs)
        if key in memo:
            return memo[key]
        free = ((1 << r) - 1) & ~(ms | bs)
        if not free:
            m = base_m
            for i in range(r):
                if ms >> i & 1:
                    m |= bit[i]
            val = count_happy(g, m)
        else:
            vals = []
            for i in range(r):
                if free >> i & 1:
                    if maker_turn:
                        vals.append(rec(ms | 1 << i, bs, False))
                    else:
                        vals.append(rec(ms, bs | 1 << i, True))
            val = max(vals) if maker_turn else min(vals)
        memo[key] = val
        return val

    score = rec(0, 0, mover is MAKER)
    assert len(memo) <= 3 ** r
    return NdReport(score, w, paired, residual, len(memo))


def nd_solve(g: Graph, mover: Player = MAKER, max_w: int = 20) -> int:
    return nd_solve_report(g, mover, max_w=max_w).score


__all__ = ["nd_solve", "nd_solve_report", "nd_value", "NdReport", "TooManyClasses"]
