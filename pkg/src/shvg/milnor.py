"""Sums of positions: interval bounds, zero-temperature extraction and
pairing strategies for Breaker."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import ResourceExceeded
from .graph import Graph, bits, components


@dataclass(frozen=True)
class ScorePair:
    ms: int
    bs: int

    def __iter__(self):
        return iter((self.ms, self.bs))

    @property
    def is_cold(self) -> bool:
        """Ms == Bs: the part adds its score to any sum."""
        return self.ms == self.bs


@dataclass(frozen=True)
class SumBounds:
    bs_lower: int
    bs_upper: int
    ms_lower: int
    ms_upper: int

    def contains(self, pair: ScorePair) -> bool:
        return (self.bs_lower <= pair.bs <= self.bs_upper
                and self.ms_lower <= pair.ms <= self.ms_upper)


def sum_bounds(parts: Sequence[ScorePair | tuple[int, int]]) -> SumBounds:
    """Bounds on the sum's (Ms, Bs), folding the two-term inequalities left to right.

    The running sum is carried as an interval; each fold takes the loosest
    instantiation of the two-term bounds over that interval.
    """
    if not parts:
        raise ValueError("need at least one part")
    ms0, bs0 = parts[0]
    bs_lo, bs_hi, ms_lo, ms_hi = bs0, bs0, ms0, ms0
    for ms2, bs2 in parts[1:]:
        bs_lo, bs_hi, ms_lo, ms_hi = (
            bs_lo + bs2,
            min(ms_hi + bs2, bs_hi + ms2),
            max(ms_lo + bs2, bs_lo + ms2),
            ms_hi + ms2,
        )
    return SumBounds(bs_lo, bs_hi, ms_lo, ms_hi)


# --- pairing strategies ---------------------------------------------------------

def find_pairing(targets: Sequence[int], free: int) -> list[tuple[int, int]] | None:
    """Disjoint pairs of free vertices such that every target holds some pair.

    Targets are bitmasks. Breaker answering each Maker move inside a pair
    with its partner then keeps every target from being completed.
    """
    targets = list(dict.fromkeys(targets))
    if any(t & (t - 1) == 0 for t in targets):
        return None  # a target of size <= 1 contains no pair
    nt = len(targets)
    failed: set[tuple[int, int]] = set()

    def candidates(t: int, used: int, open_mask: int):
        vs = bits(t & free & ~used)
        out = []
        for i, x in enumerate(vs):
            for y in vs[i + 1:]:
                pair = (1 << x) | (1 << y)
                cover = sum(1 for j in bits(open_mask) if targets[j] & pair == pair)
                out.append((-cover, x, y))
        out.sort()
        return out

    def rec(open_mask: int, used: int) -> list[tuple[int, int]] | None:
        if not open_mask:
            return []
        if (open_mask, used) in failed:
            return None
        # most constrained open target first
        best = None
        for j in bits(open_mask):
            c = bin(targets[j] & free & ~used).count("1")
            if best is None or c < best[0]:
                best = (c, j)
        if best[0] < 2:
            failed.add((open_mask, used))
            return None
        j = best[1]
        for _, x, y in candidates(targets[j], used, open_mask):
            pair = (1 << x) | (1 << y)
            rest = open_mask
            for i in bits(open_mask):
                if targets[i] & pair == pair:
                    rest &= ~(1 << i)
            sub = rec(rest, used | pair)
            if sub is not None:
                return [(x, y)] + sub
        failed.add((open_mask, used))
        return None

    return rec((1 << nt) - 1, 0)


@dataclass(frozen=True)
class PairingDominatingSet:
    pairs: tuple[tuple[int, int], ...]

    def covers(self, g: Graph) -> bool:
        verts = [v for p in self.pairs for v in p]
        if len(set(verts)) != len(verts):
            return False
        covered = set()
        for x, y in self.pairs:
            covered |= g.closed(x) & g.closed(y)
        return covered == set(range(g.n))


def find_pairing_dominating_set(g: Graph, max_n: int = 20) -> PairingDominatingSet | None:
    """Exact search; raises ResourceExceeded above ``max_n`` vertices."""
    if g.n > max_n:
        raise ResourceExceeded(f"pairing search not attempted on {g.n} > {max_n} vertices")
    if g.n == 0:
        return PairingDominatingSet(())
    pairs = find_pairing(list(g.closed_masks), g.full_mask)
    return None if pairs is None else PairingDominatingSet(tuple(pairs))


# --- component extraction ------------------------------------------------------------

@dataclass
class SplitResult:
    extracted: int                                  # total of the cold parts
    residual: list[tuple[Graph, list[int]]]         # hot components
    residual_pairs: list[ScorePair]
    bounds: SumBounds | None                        # for the residual sum
    sources: list[str] = field(default_factory=list)  # how each part was solved

    @property
    def exact(self) -> ScorePair | None:
        if not self.residual:
            return ScorePair(self.extracted, self.extracted)
        if len(self.residual) == 1:
            p = self.residual_pairs[0]
            return ScorePair(p.ms + self.extracted, p.bs + self.extracted)
        return None


def component_pair(g: Graph, cfg=None, pds_limit: int = 12) -> tuple[ScorePair, str]:
    """ScorePair of a connected graph, cheapest method first."""
    from .closed_form import formula_score
    from .graph import MAKER, BREAKER
    from .solver import SolveConfig, solve_pair

    ms = formula_score(g, MAKER)
    if ms is not None:
        return ScorePair(ms, formula_score(g, BREAKER)), "closed-form"
    if g.n <= pds_limit and find_pairing_dominating_set(g, max_n=pds_limit) is not None:
        return ScorePair(0, 0), "pairing"
    return solve_pair(g, cfg or SolveConfig()), "solver"


def split_components(g: Graph, cfg=None) -> SplitResult:
    extracted = 0
    residual, pairs, sources = [], [], []
    for comp, back in components(g):
        pair, how = component_pair(comp, cfg)
        sources.append(how)
        if pair.is_cold:
            extracted += pair.ms
        else:
            residual.append((comp, back))
            pairs.append(pair)
    bounds = None
    if pairs:
        raw = sum_bounds(pairs)
        bounds = SumBounds(raw.bs_lower + extracted, raw.bs_upper + extracted,
                           raw.ms_lower + extracted, raw.ms_upper + extracted)
    return SplitResult(extracted, residual, pairs, bounds, sources)


def total_after_split(g: Graph, cfg=None) -> ScorePair:
    """Extracted constant plus a joint solve of what is left."""
    from .graph import disjoint_union
    from .solver import SolveConfig, solve_pair

    res = split_components(g, cfg)
    if res.exact is not None:
        return res.exact
    joint = solve_pair(disjoint_union(*(c for c, _ in res.residual)), cfg or SolveConfig())
    return ScorePair(joint.ms + res.extracted, joint.bs + res.extracted)

