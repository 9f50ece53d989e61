"""Definition-literal minimax, used as the reference for every reduction.

No simplification of any kind: every free vertex is tried at every ply and
leaves are scored with the happy count on the full graph.
"""
from __future__ import annotations

import time

from .graph import MAKER, Player, Position
from .errors import ResourceExceeded


def brute_force_score(pos: Position, mover: Player = MAKER, *,
                      max_states: int | None = None,
                      time_budget: float | None = None) -> int:
    g = pos.graph
    closed = g.closed_masks
    full = g.full_mask
    memo: dict[tuple[int, int], int] = {}
    deadline = None if time_budget is None else time.perf_counter() + time_budget
    start_parity = (len(pos.maker) + len(pos.breaker)) & 1

    def rec(m: int, b: int) -> int:
        key = (m, b)
        hit = memo.get(key)
        if hit is not None:
            return hit
        free = full & ~(m | b)
        if not free:
            val = sum(1 for c in closed if c & b == 0)
        else:
            if max_states is not None and len(memo) >= max_states:
                raise ResourceExceeded(f"more than {max_states} states")
            if deadline is not None and len(memo) & 1023 == 0 and time.perf_counter() > deadline:
                raise ResourceExceeded(f"time budget {time_budget}s exceeded")
            parity = (bin(m).count("1") + bin(b).count("1")) & 1
            maker_turn = (mover is MAKER) == (parity == start_parity)
            best = -1 if maker_turn else None
            f = free
            while f:
                low = f & -f
                f ^= low
                if maker_turn:
                    v = rec(m | low, b)
                    if v > best:
                        best = v
                else:
                    v = rec(m, b | low)
                    if best is None or v < best:
                        best = v
            val = best
        memo[key] = val
        return val

    return rec(pos.maker_mask, pos.breaker_mask)


def brute_force_pair(pos: Position, **kw) -> tuple[int, int]:
    return (brute_force_score(pos, MAKER, **kw),
            brute_force_score(pos, Player.BREAKER, **kw))
