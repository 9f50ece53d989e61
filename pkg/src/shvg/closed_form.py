"""Recognition of the solved graph classes and their exact scores."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

from .graph import MAKER, Graph, Player, components


@dataclass(frozen=True)
class Path:
    n: int


@dataclass(frozen=True)
class Cycle:
    n: int


@dataclass(frozen=True)
class UnionOfPathsAndCycles:
    paths: tuple[int, ...]   # sorted
    cycles: tuple[int, ...]  # sorted


@dataclass(frozen=True)
class SubdividedStar:
    legs: tuple[int, ...]    # sorted, at least three


@dataclass(frozen=True)
class CompleteBinaryTree:
    depth: int               # >= 2; shallower trees are paths


@dataclass(frozen=True)
class Unknown:
    pass


GraphClass = Union[Path, Cycle, UnionOfPathsAndCycles, SubdividedStar,
                   CompleteBinaryTree, Unknown]


def _path_or_cycle(g: Graph) -> Path | Cycle | None:
    """Shape of a connected graph of max degree 2, else None."""
    if any(g.degree(v) > 2 for v in range(g.n)):
        return None
    if g.num_edges == g.n - 1:
        return Path(g.n)
    if g.num_edges == g.n and g.n >= 3:
        return Cycle(g.n)
    return None


def _is_tree(g: Graph) -> bool:
    return g.n >= 1 and g.num_edges == g.n - 1 and len(components(g)) == 1


def _star_legs(g: Graph) -> tuple[int, ...] | None:
    if not _is_tree(g):
        return None
    big = [v for v in range(g.n) if g.degree(v) >= 3]
    if len(big) != 1:
        return None
    centre = big[0]
    legs = []
    for first in sorted(g.adj[centre]):
        prev, cur, length = centre, first, 1
        while g.degree(cur) == 2:
            (nxt,) = g.adj[cur] - {prev}
            prev, cur = cur, nxt
            length += 1
        legs.append(length)
    return tuple(sorted(legs))


def _binary_depth(g: Graph) -> int | None:
    n = g.n
    d = (n + 1).bit_length() - 2
    if d < 2 or n != 2 ** (d + 1) - 1 or not _is_tree(g):
        return None
    roots = [v for v in range(n) if g.degree(v) == 2]
    if len(roots) != 1:
        return None
    depth = {roots[0]: 0}
    frontier = [roots[0]]
    while frontier:
        nxt = []
        for v in frontier:
            for w in g.adj[v]:
                if w not in depth:
                    depth[w] = depth[v] + 1
                    nxt.append(w)
        frontier = nxt
    for v in range(n):
        want = 1 if depth[v] == d else (2 if depth[v] == 0 else 3)
        if g.degree(v) != want:
            return None
    return d


def classify(g: Graph) -> GraphClass:
    if g.n == 0:
        return Unknown()
    comps = components(g)
    if len(comps) > 1:
        shapes = [_path_or_cycle(c) for c, _ in comps]
        if any(s is None for s in shapes):
            return Unknown()
        return UnionOfPathsAndCycles(
            tuple(sorted(s.n for s in shapes if isinstance(s, Path))),
            tuple(sorted(s.n for s in shapes if isinstance(s, Cycle))))
    shape = _path_or_cycle(g)
    if shape is not None:
        return shape
    legs = _star_legs(g)
    if legs is not None:
        return SubdividedStar(legs)
    d = _binary_depth(g)
    if d is not None:
        return CompleteBinaryTree(d)
    return Unknown()


def path_score(n: int, mover: Player = MAKER) -> int:
    if n < 1:
        raise ValueError("path length must be at least 1")
    return 1 if n % 2 == 1 and mover is MAKER else 0


def union_paths_score(lengths: Sequence[int], mover: Player = MAKER,
                      cycles: Sequence[int] = ()) -> int:
    """Score of disjoint paths (and cycles, which never score)."""
    if any(k < 1 for k in lengths) or any(c < 3 for c in cycles):
        raise ValueError("invalid path or cycle length")
    odd = sum(1 for k in lengths if k % 2)
    return (odd + 1) // 2 if mover is MAKER else odd // 2


def subdivided_star_score(legs: Sequence[int], mover: Player = MAKER) -> int:
    if not legs:
        raise ValueError("a star needs at least one leg")
    if any(k < 1 for k in legs):
        raise ValueError("leg lengths must be positive")
    if len(legs) <= 2:
        return path_score(1 + sum(legs), mover)
    if mover is not MAKER:
        return 0
    odd = sum(1 for k in legs if k % 2)
    return odd // 2 if odd else 1


def complete_binary_tree_score(depth: int, mover: Player = MAKER) -> int:
    if depth < 0:
        raise ValueError("depth must be non-negative")
    if depth <= 1:
        return 1 if mover is MAKER else 0
    return 2 ** (depth - 2)


def score_for_class(cls: GraphClass, mover: Player = MAKER) -> int | None:
    if isinstance(cls, Path):
        return path_score(cls.n, mover)
    if isinstance(cls, Cycle):
        return 0
    if isinstance(cls, UnionOfPathsAndCycles):
        return union_paths_score(cls.paths, mover, cls.cycles)
    if isinstance(cls, SubdividedStar):
        return subdivided_star_score(cls.legs, mover)
    if isinstance(cls, CompleteBinaryTree):
        return complete_binary_tree_score(cls.depth, mover)
    return None


def formula_score(g: Graph, mover: Player = MAKER) -> int | None:
    """Closed-form score of the empty position on ``g``, or None if unrecognised."""
    return score_for_class(classify(g), mover)


def build(cls: GraphClass) -> Graph:
    """Canonical graph for a class descriptor (inverse of :func:`classify`)."""
    from . import generators as gen
    from .graph import disjoint_union

    if isinstance(cls, Path):
        return gen.path(cls.n)
    if isinstance(cls, Cycle):
        return gen.cycle(cls.n)
    if isinstance(cls, UnionOfPathsAndCycles):
        return disjoint_union(*[gen.path(k) for k in cls.paths],
                              *[gen.cycle(k) for k in cls.cycles])
    if isinstance(cls, SubdividedStar):
        if len(cls.legs) < 3:
            raise ValueError("a subdivided star descriptor needs at least three legs")
        return gen.subdivided_star(cls.legs)
    if isinstance(cls, CompleteBinaryTree):
        return gen.complete_binary_tree(cls.depth)
    raise ValueError("no canonical graph for Unknown")
