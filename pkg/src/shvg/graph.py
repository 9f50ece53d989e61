"""Graphs, positions and the pure graph surgery used by every solver."""
from __future__ import annotations

import enum
from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence


class ParseError(ValueError):
    """Malformed graph or position text. ``line`` is 1-based."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class Player(enum.Enum):
    MAKER = "maker"
    BREAKER = "breaker"

    @property
    def other(self) -> "Player":
        return Player.BREAKER if self is Player.MAKER else Player.MAKER

    @classmethod
    def parse(cls, text: str) -> "Player":
        t = text.strip().lower()
        if t in ("m", "maker"):
            return cls.MAKER
        if t in ("b", "breaker"):
            return cls.BREAKER
        raise ValueError(f"unknown player {text!r}")


MAKER = Player.MAKER
BREAKER = Player.BREAKER


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def bits(mask: int) -> list[int]:
    """Indices of the set bits of ``mask`` in increasing order."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


@dataclass(frozen=True, eq=False)
class Graph:
    """Undirected simple graph on the dense vertex set ``0..n-1``.

    Immutable once built; use :meth:`from_edges` rather than the raw
    constructor.
    """

    n: int
    adj: tuple[frozenset[int], ...]
    labels: tuple[str | None, ...] | None = None

    def __post_init__(self):
        if len(self.adj) != self.n:
            raise ValueError("adjacency length differs from n")
        for v, nb in enumerate(self.adj):
            if v in nb:
                raise ValueError(f"self-loop at {v}")
            for u in nb:
                if not 0 <= u < self.n or v not in self.adj[u]:
                    raise ValueError(f"asymmetric or out-of-range edge {v}-{u}")
        if self.labels is not None and len(self.labels) != self.n:
            raise ValueError("labels length differs from n")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]],
                   labels: Sequence[str | None] | None = None) -> "Graph":
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {u}-{v} out of range for n={n}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(n, tuple(frozenset(s) for s in nbrs),
                   tuple(labels) if labels is not None else None)

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.adj == other.adj

    def __hash__(self):
        return hash((self.n, self.adj))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.num_edges})"

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple((u, v) for u in range(self.n) for v in sorted(self.adj[u]) if u < v)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def closed(self, v: int) -> frozenset[int]:
        return self.adj[v] | {v}

    @cached_property
    def nbr_masks(self) -> tuple[int, ...]:
        return tuple(mask_of(nb) for nb in self.adj)

    @cached_property
    def closed_masks(self) -> tuple[int, ...]:
        return tuple(m | (1 << v) for v, m in enumerate(self.nbr_masks))

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def label(self, v: int) -> str | None:
        return self.labels[v] if self.labels else None

    def induced(self, vertices: Sequence[int]) -> tuple["Graph", list[int]]:
        """Subgraph on ``vertices`` relabelled densely in the given order.

        Returns the subgraph and the list mapping local ids back to ours.
        """
        local = {v: i for i, v in enumerate(vertices)}
        edges = [(local[u], local[w]) for u in vertices for w in self.adj[u]
                 if w in local and local[u] < local[w]]
        labels = [self.label(v) for v in vertices] if self.labels else None
        return Graph.from_edges(len(vertices), edges, labels), list(vertices)


def disjoint_union(*graphs: Graph) -> Graph:
    edges = []
    labels: list[str | None] = []
    offset = 0
    for g in graphs:
        edges.extend((u + offset, v + offset) for u, v in g.edges)
        labels.extend(g.label(v) for v in range(g.n))
        offset += g.n
    has_labels = any(g.labels for g in graphs)
    return Graph.from_edges(offset, edges, labels if has_labels else None)


@dataclass(frozen=True)
class Position:
    """A game state (G, M, B). Free vertices are derived, never stored."""

    graph: Graph
    maker: frozenset[int] = field(default_factory=frozenset)
    breaker: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "maker", frozenset(self.maker))
        object.__setattr__(self, "breaker", frozenset(self.breaker))
        n = self.graph.n
        for v in self.maker | self.breaker:
            if not 0 <= v < n:
                raise ValueError(f"vertex {v} out of range")
        if self.maker & self.breaker:
            raise ValueError("maker and breaker sets overlap")

    @classmethod
    def empty(cls, graph: Graph) -> "Position":
        return cls(graph)

    @property
    def free(self) -> frozenset[int]:
        return frozenset(range(self.graph.n)) - self.maker - self.breaker

    @property
    def maker_mask(self) -> int:
        return mask_of(self.maker)

    @property
    def breaker_mask(self) -> int:
        return mask_of(self.breaker)

    def is_terminal(self) -> bool:
        return len(self.maker) + len(self.breaker) == self.graph.n

    def play(self, v: int, player: Player) -> "Position":
        if v in self.maker or v in self.breaker or not 0 <= v < self.graph.n:
            raise ValueError(f"vertex {v} is not free")
        if player is MAKER:
            return Position(self.graph, self.maker | {v}, self.breaker)
        return Position(self.graph, self.maker, self.breaker | {v})

    def play_pairs(self, pairs) -> "Position":
        """Maker takes the first of each pair, Breaker the second."""
        m = {u for u, _ in pairs}
        b = {v for _, v in pairs}
        if len(m) + len(b) != 2 * len(pairs) or (m | b) & (self.maker | self.breaker):
            raise ValueError("pairs overlap or use coloured vertices")
        return Position(self.graph, self.maker | m, self.breaker | b)


def happy_count(pos: Position) -> int:
    """Number of vertices whose closed neighbourhood is entirely Maker's."""
    if not pos.is_terminal():
        raise ValueError("happy_count needs a terminal position")
    return count_happy(pos.graph, pos.maker_mask)


def count_happy(g: Graph, maker_mask: int) -> int:
    """Vertices w with N[w] inside ``maker_mask``; no terminality check."""
    return sum(1 for c in g.closed_masks if c & ~maker_mask == 0)


def instant_gain(pos: Position, v: int) -> int:
    """How many vertices are happy right after Maker claims ``v``.

    Counts every w with N[w] inside M + v, including already-happy ones.
    """
    if v not in pos.free:
        raise ValueError(f"vertex {v} is not free")
    return count_happy(pos.graph, pos.maker_mask | (1 << v))


def decompose(pos: Position) -> Position:
    """Drop Breaker's vertices, giving each survivor that touched one a pendant.

    Pendants get ids ``k, k+1, ...`` (k = number of survivors) in increasing
    order of their host; survivors keep their relative order.
    """
    g = pos.graph
    if not pos.breaker:
        return pos
    keep = [v for v in range(g.n) if v not in pos.breaker]
    sub, back = g.induced(keep)
    local = {v: i for i, v in enumerate(back)}
    hosts = [v for v in keep if g.adj[v] & pos.breaker]
    edges = list(sub.edges)
    labels = [g.label(v) for v in keep] if g.labels else None
    for i, h in enumerate(hosts):
        edges.append((local[h], len(keep) + i))
        if labels is not None:
            labels.append(None)
    out = Graph.from_edges(len(keep) + len(hosts), edges, labels)
    maker = frozenset(local[v] for v in pos.maker)
    breaker = frozenset(range(len(keep), len(keep) + len(hosts)))
    return Position(out, maker, breaker)


def components(g: Graph) -> list[tuple[Graph, list[int]]]:
    """Connected components, each relabelled densely, ordered by lowest vertex."""
    seen = [False] * g.n
    out = []
    for s in range(g.n):
        if seen[s]:
            continue
        comp = []
        stack = [s]
        seen[s] = True
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in g.adj[v]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        comp.sort()
        out.append(g.induced(comp))
    return out


# --- neighbourhood diversity -------------------------------------------------

class ClassKind(enum.Enum):
    CLIQUE = "clique"
    INDEPENDENT = "independent"


@dataclass(frozen=True)
class NeighborhoodPartition:
    classes: tuple[tuple[int, ...], ...]
    class_of: tuple[int, ...]
    class_kind: tuple[ClassKind, ...]

    def __len__(self):
        return len(self.classes)


def same_type(g: Graph, u: int, v: int) -> bool:
    """N(u) minus v equals N(v) minus u."""
    return g.adj[u] - {v} == g.adj[v] - {u}


def neighborhood_partition(g: Graph) -> NeighborhoodPartition:
    """Coarsest partition of V into same-type classes.

    Non-adjacent twins share their open neighbourhood, adjacent twins their
    closed one, so two hash passes find every class. Same-type is an
    equivalence relation and a vertex cannot have both an adjacent and a
    non-adjacent twin unless its class is a single pair, which both keys
    then agree on.
    """
    open_groups: dict[frozenset[int], list[int]] = defaultdict(list)
    closed_groups: dict[frozenset[int], list[int]] = defaultdict(list)
    for v in range(g.n):
        open_groups[g.adj[v]].append(v)
        closed_groups[g.closed(v)].append(v)
    class_of = [-1] * g.n
    classes: list[list[int]] = []
    kinds: list[ClassKind] = []
    for v in range(g.n):
        if class_of[v] >= 0:
            continue
        indep = open_groups[g.adj[v]]
        clique = closed_groups[g.closed(v)]
        members, kind = ((indep, ClassKind.INDEPENDENT) if len(indep) >= len(clique)
                         else (clique, ClassKind.CLIQUE))
        members = [u for u in members if class_of[u] < 0]
        for u in members:
            class_of[u] = len(classes)
        classes.append(sorted(members))
        kinds.append(kind)
    return NeighborhoodPartition(tuple(tuple(c) for c in classes),
                                 tuple(class_of), tuple(kinds))


# --- text formats ---------------------------------------------------------------

def _ints(tokens: list[str], lineno: int) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise ParseError(f"expected integers, got {' '.join(tokens)!r}", lineno) from None


def _parse_graph_lines(lines: list[tuple[int, str]]) -> tuple[Graph, list[tuple[int, str]]]:
    it = iter(lines)
    try:
        lineno, header = next(it)
    except StopIteration:
        raise ParseError("empty graph text", 1) from None
    head = _ints(header.split(), lineno)
    if len(head) != 2 or head[0] < 0 or head[1] < 0:
        raise ParseError("header must be 'n m'", lineno)
    n, m = head
    edges = []
    labels: list[str | None] = [None] * n
    has_labels = False
    rest: list[tuple[int, str]] = []
    for lineno, line in it:
        tokens = line.split()
        if tokens[0] == "label":
            if len(tokens) != 3:
                raise ParseError("label line must be 'label v name'", lineno)
            (v,) = _ints(tokens[1:2], lineno)
            if not 0 <= v < n:
                raise ParseError(f"vertex id {v} out of range", lineno)
            labels[v] = tokens[2]
            has_labels = True
            continue
        if len(edges) < m:
            uv = _ints(tokens, lineno)
            if len(uv) != 2:
                raise ParseError("edge line must be 'u v'", lineno)
            u, v = uv
            if not (0 <= u < n and 0 <= v < n):
                raise ParseError(f"vertex id out of range in edge {u} {v}", lineno)
            if u == v:
                raise ParseError(f"self-loop at {u}", lineno)
            edges.append((u, v))
            continue
        rest.append((lineno, line))
    if len(edges) < m:
        raise ParseError(f"expected {m} edges, found {len(edges)}", lineno)
    return Graph.from_edges(n, edges, labels if has_labels else None), rest


def _content_lines(text: str) -> list[tuple[int, str]]:
    out = []
    for i, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line and not line.startswith("#"):
            out.append((i, line))
    return out


def parse_graph(text: str) -> Graph:
    g, rest = _parse_graph_lines(_content_lines(text))
    if rest:
        lineno, _ = rest[0]
        raise ParseError("unexpected trailing line", lineno)
    return g


def parse_position(text: str) -> Position:
    """Graph text followed by ``M: ids`` and ``B: ids`` lines (either optional)."""
    g, rest = _parse_graph_lines(_content_lines(text))
    sets: dict[str, frozenset[int]] = {"M": frozenset(), "B": frozenset()}
    for lineno, line in rest:
        tag, sep, body = line.partition(":")
        tag = tag.strip()
        if not sep or tag not in sets:
            raise ParseError("expected 'M: ...' or 'B: ...'", lineno)
        ids = _ints(body.split(), lineno)
        for v in ids:
            if not 0 <= v < g.n:
                raise ParseError(f"vertex id {v} out of range", lineno)
        sets[tag] = frozenset(ids)
    try:
        return Position(g, sets["M"], sets["B"])
    except ValueError as exc:
        raise ParseError(str(exc), rest[-1][0] if rest else None) from None


def format_graph(g: Graph) -> str:
    lines = [f"{g.n} {g.num_edges}"]
    lines.extend(f"{u} {v}" for u, v in g.edges)
    if g.labels:
        lines.extend(f"label {v} {name}" for v, name in enumerate(g.labels) if name)
    return "\n".join(lines) + "\n"


def format_position(pos: Position) -> str:
    return (format_graph(pos.graph)
            + "M: " + " ".join(map(str, sorted(pos.maker))) + "\n"
            + "B: " + " ".join(map(str, sorted(pos.breaker))) + "\n")
