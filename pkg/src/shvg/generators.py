"""Graph families and seeded random instances."""
from __future__ import annotations

import random
from typing import Sequence

from .graph import Graph, Position, disjoint_union


def path(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycles need at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def star(leaves: int) -> Graph:
    """K_{1,leaves} with centre 0."""
    return complete_bipartite(1, leaves)


def subdivided_star(legs: Sequence[int]) -> Graph:
    """Centre 0; each leg is a path hanging off it, listed centre-outward."""
    if any(k < 1 for k in legs):
        raise ValueError("leg lengths must be positive")
    edges = []
    nxt = 1
    for k in legs:
        prev = 0
        for _ in range(k):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    return Graph.from_edges(nxt, edges)


def complete_binary_tree(depth: int) -> Graph:
    """Heap-numbered: root 0, children of i are 2i+1 and 2i+2."""
    n = 2 ** (depth + 1) - 1
    return Graph.from_edges(n, [((i - 1) // 2, i) for i in range(1, n)])


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def union_of_paths(lengths: Sequence[int]) -> Graph:
    return disjoint_union(*(path(k) for k in lengths)) if lengths else Graph.from_edges(0, [])


def random_graph(rng: random.Random, n: int, p: float = 0.4) -> Graph:
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)
                                if rng.random() < p])


def random_tree(rng: random.Random, n: int) -> Graph:
    return Graph.from_edges(n, [(i, rng.randrange(i)) for i in range(1, n)])


def planted_twins(rng: random.Random, classes: int, n: int, p: float = 0.5) -> Graph:
    """Random graph with at most ``classes`` same-type classes on ``n`` vertices.

    Every class is a clique or an independent set and any two classes are
    fully joined or fully disjoint, so the neighbourhood diversity is at
    most ``classes``.
    """
    if not 1 <= classes <= n:
        raise ValueError("need 1 <= classes <= n")
    sizes = [1] * classes
    for _ in range(n - classes):
        sizes[rng.randrange(classes)] += 1
    members = []
    nxt = 0
    for s in sizes:
        members.append(list(range(nxt, nxt + s)))
        nxt += s
    edges = []
    for c, vs in enumerate(members):
        if rng.random() < 0.5:
            edges.extend((a, b) for i, a in enumerate(vs) for b in vs[i + 1:])
        for d in range(c + 1, classes):
            if rng.random() < p:
                edges.extend((a, b) for a in vs for b in members[d])
    perm = list(range(n))
    rng.shuffle(perm)
    return Graph.from_edges(n, [(perm[a], perm[b]) for a, b in edges])


def random_position(rng: random.Random, g: Graph, colour_prob: float = 0.3) -> Position:
    maker, breaker = set(), set()
    for v in range(g.n):
        r = rng.random()
        if r < colour_prob / 2:
            maker.add(v)
        elif r < colour_prob:
            breaker.add(v)
    return Position(g, frozenset(maker), frozenset(breaker))


def nonisomorphic_trees(n: int) -> list[Graph]:
    """All trees on ``n`` vertices up to isomorphism (needs networkx)."""
    import networkx as nx

    if n == 1:
        return [Graph.from_edges(1, [])]
    out = []
    for t in nx.nonisomorphic_trees(n):
        out.append(Graph.from_edges(n, list(t.edges())))
    return out


def corpus(max_n: int = 12) -> list[tuple[str, Graph]]:
    """Named small graphs used as a fixed regression corpus."""
    items = [(f"P{n}", path(n)) for n in range(1, 9)]
    items += [(f"C{n}", cycle(n)) for n in range(3, 9)]
    items += [(f"K{n}", complete(n)) for n in range(2, 7)]
    items += [(f"K{a},{b}", complete_bipartite(a, b)) for a in range(1, 4) for b in range(a, 5)]
    items += [(f"S{k}", star(k)) for k in range(3, 8)]
    items += [("S(1,1,2)", subdivided_star((1, 1, 2))), ("S(1,2,3)", subdivided_star((1, 2, 3))),
              ("S(2,2,2)", subdivided_star((2, 2, 2))), ("S(1,1,1,3)", subdivided_star((1, 1, 1, 3)))]
    items += [("T2", complete_binary_tree(2)), ("T3", complete_binary_tree(3))]
    items += [("petersen", petersen()), ("P3+P4+C5", disjoint_union(path(3), path(4), cycle(5)))]
    rng = random.Random(2024)
    items += [(f"rand{i}", random_graph(rng, rng.randint(5, 10), 0.35)) for i in range(6)]
    items += [(f"tree{i}", random_tree(rng, rng.randint(6, 12))) for i in range(6)]
    return [(name, g) for name, g in items if g.n <= max_n]
