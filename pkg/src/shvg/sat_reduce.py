"""Quantified MAX-2-SAT formulas and their reductions to tree instances.

Literals are signed variable ids as in DIMACS. The prefix lists variables
in play order; Satisfier picks the ``e`` variables, Falsifier the ``a`` ones.
"""
from __future__ import annotations

import json
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import NamedTuple

from .errors import ResourceExceeded
from .graph import Graph, ParseError, components

EXISTS, FORALL = "e", "a"


class ReductionError(ValueError):
    """Input formula violates a builder's precondition."""


@dataclass(frozen=True)
class Qbf2Formula:
    prefix: tuple[tuple[str, int], ...]
    clauses: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple((q, v) for q, v in self.prefix))
        object.__setattr__(self, "clauses", tuple(tuple(c) for c in self.clauses))
        seen = set()
        for q, v in self.prefix:
            if q not in (EXISTS, FORALL):
                raise ValueError(f"bad quantifier {q!r}")
            if v <= 0 or v in seen:
                raise ValueError(f"bad or repeated variable {v}")
            seen.add(v)
        for c in self.clauses:
            if len(c) != 2:
                raise ValueError(f"clause {c} does not have two literals")
            for lit in c:
                if lit == 0 or abs(lit) not in seen:
                    raise ValueError(f"literal {lit} is not quantified")

    @property
    def variables(self) -> list[int]:
        return [v for _, v in self.prefix]

    @property
    def n(self) -> int:
        return len(self.prefix)

    @property
    def m(self) -> int:
        return len(self.clauses)

    @property
    def max_var(self) -> int:
        return max(self.variables, default=0)

    @property
    def is_existential(self) -> bool:
        return all(q == EXISTS for q, _ in self.prefix)

    def occurrences(self) -> Counter:
        """Occurrence count per literal."""
        return Counter(lit for c in self.clauses for lit in c)

    def satisfied(self, assignment: dict[int, bool]) -> int:
        return sum(1 for c in self.clauses
                   if any(assignment[abs(l)] == (l > 0) for l in c))

    def to_text(self) -> str:
        lines = [f"p qcnf {self.max_var} {self.m}"]
        lines.extend(f"{q} {v} 0" for q, v in self.prefix)
        lines.extend(f"{a} {b} 0" for a, b in self.clauses)
        return "\n".join(lines) + "\n"


def parse_formula(text: str) -> Qbf2Formula:
    """QDIMACS-style text: ``p qcnf n m``, ``e``/``a`` prefix lines, 2-literal clauses."""
    header = None
    prefix: list[tuple[str, int]] = []
    quantified: set[int] = set()
    clauses: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line[0] in "c#":
            continue
        tokens = line.split()
        if tokens[0] == "p":
            if header is not None or len(tokens) != 4 or tokens[1] not in ("qcnf", "cnf"):
                raise ParseError("header must be 'p qcnf n m'", lineno)
            try:
                header = (int(tokens[2]), int(tokens[3]))
            except ValueError:
                raise ParseError("header counts must be integers", lineno) from None
            continue
        if header is None:
            raise ParseError("missing 'p qcnf n m' header", lineno)
        try:
            if tokens[0] in (EXISTS, FORALL):
                nums = [int(t) for t in tokens[1:]]
            else:
                nums = [int(t) for t in tokens]
        except ValueError:
            raise ParseError(f"expected integers in {line!r}", lineno) from None
        if nums and nums[-1] == 0:
            nums = nums[:-1]
        if tokens[0] in (EXISTS, FORALL):
            if clauses:
                raise ParseError("prefix line after clauses", lineno)
            for v in nums:
                if v <= 0 or v > header[0]:
                    raise ParseError(f"variable {v} out of range 1..{header[0]}", lineno)
                if v in quantified:
                    raise ParseError(f"variable {v} quantified twice", lineno)
                quantified.add(v)
                prefix.append((tokens[0], v))
            continue
        if len(nums) != 2 or 0 in nums:
            raise ParseError(f"clause must have exactly two literals, got {len(nums)}", lineno)
        for lit in nums:
            if abs(lit) not in quantified:
                raise ParseError(f"variable {abs(lit)} is not quantified", lineno)
        clauses.append((nums[0], nums[1]))
    if header is None:
        raise ParseError("missing 'p qcnf n m' header", None)
    if header[0] and header[1] != len(clauses):
        raise ParseError(f"header declares {header[1]} clauses, found {len(clauses)}", None)
    return Qbf2Formula(tuple(prefix), tuple(clauses))


# --- literal-clause incidence graph -----------------------------------------------

def literal_vertex(f: Qbf2Formula, lit: int) -> int:
    """Vertex of ``lit``: 2i for x+ and 2i+1 for x- where i is x's prefix position."""
    pos = f.variables.index(abs(lit))
    return 2 * pos + (0 if lit > 0 else 1)


@dataclass(frozen=True)
class LciGraph:
    graph: Graph
    multiplicity: dict[tuple[int, int], int]
    clause_edges: tuple[tuple[int, int], ...]

    @property
    def is_simple(self) -> bool:
        return all(k == 1 for k in self.multiplicity.values())


def lci_graph(f: Qbf2Formula) -> LciGraph:
    labels = []
    for v in f.variables:
        labels += [f"x{v}+", f"x{v}-"]
    edges = []
    mult: dict[tuple[int, int], int] = defaultdict(int)
    for a, b in f.clauses:
        if a == b:
            raise ReductionError(f"clause ({a} v {b}) repeats a literal")
        u, w = sorted((literal_vertex(f, a), literal_vertex(f, b)))
        edges.append((u, w))
        mult[(u, w)] += 1
    g = Graph.from_edges(2 * f.n, edges, labels)
    return LciGraph(g, dict(mult), tuple(edges))


def _find_cycle(f: Qbf2Formula) -> tuple[list[int], list[int]] | None:
    """(vertices, clause indices) of the fundamental cycle of the first back edge.

    Repeated clauses count as parallel edges, hence as 2-cycles.
    """
    nv = 2 * f.n
    parent = list(range(nv))
    forest: dict[int, list[tuple[int, int]]] = defaultdict(list)

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for j, (a, b) in enumerate(f.clauses):
        if a == b:
            raise ReductionError(f"clause {j} repeats a literal")
        u, w = literal_vertex(f, a), literal_vertex(f, b)
        ru, rw = find(u), find(w)
        if ru != rw:
            parent[ru] = rw
            forest[u].append((w, j))
            forest[w].append((u, j))
            continue
        # path w -> u in the forest
        prev = {w: (None, None)}
        stack = [w]
        while stack:
            x = stack.pop()
            if x == u:
                break
            for y, cj in forest[x]:
                if y not in prev:
                    prev[y] = (x, cj)
                    stack.append(y)
        verts, cls = [u], [j]
        x = u
        while x != w:
            px, cj = prev[x]
            cls.append(cj)
            verts.append(px)
            x = px
        return verts, cls
    return None


def is_acyclic(f: Qbf2Formula) -> bool:
    return _find_cycle(f) is None


class Transformed(NamedTuple):
    formula: Qbf2Formula
    k: int
    removals: int
    gadgets: int


def _apply_gadget(f: Qbf2Formula, lit: int, clause_idx: int) -> Qbf2Formula:
    """Route clause ``clause_idx`` through a fresh copy of ``lit``'s variable."""
    x = abs(lit)
    s = 1 if lit > 0 else -1
    a, b, xp = f.max_var + 1, f.max_var + 2, f.max_var + 3
    clauses = list(f.clauses)
    c = clauses[clause_idx]
    i = c.index(lit)
    new = list(c)
    new[i] = s * xp
    clauses[clause_idx] = tuple(new)
    clauses += [(s * x, a), (-s * x, b), (-a, -s * xp), (-b, s * xp)]
    prefix = f.prefix + ((EXISTS, a), (EXISTS, b), (EXISTS, xp))
    return Qbf2Formula(prefix, tuple(clauses))


def break_cycles(f: Qbf2Formula, k: int, max_steps: int | None = None) -> Transformed:
    """Apply the acyclicity gadget until the incidence graph is a forest; k grows by 4 each time."""
    steps = 0
    limit = max_steps if max_steps is not None else len(f.clauses) + 1
    while True:
        cyc = _find_cycle(f)
        if cyc is None:
            return Transformed(f, k, 0, steps)
        if steps >= limit:
            raise RuntimeError("cycle elimination did not terminate")
        verts, cls = cyc
        back = cls[0]
        on_cycle = set(verts)
        pos_vars = sorted(f.variables[v // 2] for v in on_cycle if v % 2 == 0)
        neg_vars = sorted(f.variables[v // 2] for v in on_cycle if v % 2 == 1)
        lit = pos_vars[0] if pos_vars else -neg_vars[0]
        incident = [j for j in cls if lit in f.clauses[j]]
        j = back if back in incident else min(incident)
        f = _apply_gadget(f, lit, j)
        k += 4
        steps += 1


def bound_occurrences(f: Qbf2Formula, k: int) -> Transformed:
    """Existential MAX-2-SAT-3 to the acyclic 2-2 form (each sign at most twice)."""
    if not f.is_existential:
        raise ReductionError("occurrence bounding needs a purely existential prefix")
    per_var = Counter(abs(l) for c in f.clauses for l in c)
    for v, cnt in per_var.items():
        if cnt > 3:
            raise ReductionError(f"variable {v} occurs {cnt} times (at most 3 allowed)")
    clauses = list(f.clauses)
    removals = 0
    while True:
        occ = Counter(l for c in clauses for l in c)
        heavy = sorted((abs(l), l) for l, cnt in occ.items() if cnt >= 3)
        if not heavy:
            break
        lit = heavy[0][1]
        before = len(clauses)
        clauses = [c for c in clauses if lit not in c]
        k -= before - len(clauses)
        removals += 1
    out = break_cycles(Qbf2Formula(f.prefix, tuple(clauses)), k)
    return Transformed(out.formula, out.k, removals, out.gadgets)


def duplicate(f: Qbf2Formula) -> Qbf2Formula:
    """Append a renamed copy (variables shifted by the largest id) after the original."""
    off = f.max_var
    prefix = f.prefix + tuple((q, v + off) for q, v in f.prefix)
    sh = lambda l: l + off if l > 0 else l - off  # noqa: E731
    clauses = f.clauses + tuple((sh(a), sh(b)) for a, b in f.clauses)
    return Qbf2Formula(prefix, clauses)


def pad_alternating(f: Qbf2Formula) -> Qbf2Formula:
    """Insert unused variables so the prefix reads a, e, a, e, ... with even length.

    Falsifier owns the odd positions because in the tree game the first
    player (Maker) is the one who fixes those variables.
    """
    fresh = f.max_var
    out: list[tuple[str, int]] = []

    def want():
        return FORALL if len(out) % 2 == 0 else EXISTS

    for q, v in f.prefix:
        while want() != q:
            fresh += 1
            out.append((want(), fresh))
        out.append((q, v))
    if len(out) % 2:
        fresh += 1
        out.append((EXISTS, fresh))
    return Qbf2Formula(tuple(out), f.clauses)


# --- the formula game ---------------------------------------------------------------

def qbf_max_value(f: Qbf2Formula, max_vars: int = 14) -> int:
    """Clauses satisfied under optimal play, variables set in prefix order."""
    if f.n > max_vars:
        raise ResourceExceeded(f"{f.n} variables exceed the cap of {max_vars}")
    order = f.variables
    quant = [q for q, _ in f.prefix]
    assign: dict[int, bool] = {}

    def rec(i: int) -> int:
        if i == len(order):
            return f.satisfied(assign)
        vals = []
        for val in (False, True):
            assign[order[i]] = val
            vals.append(rec(i + 1))
        del assign[order[i]]
        return max(vals) if quant[i] == EXISTS else min(vals)

    return rec(0)


def qbf_max_solve(f: Qbf2Formula, k: int, max_vars: int = 14) -> tuple[bool, int]:
    """(Satisfier reaches k, optimal value)."""
    val = qbf_max_value(f, max_vars)
    return val >= k, val


def max2sat_optimum(f: Qbf2Formula) -> int:
    """Best assignment, by enumeration, ignoring quantifiers."""
    vs = f.variables
    best = 0
    for bitsv in range(1 << len(vs)):
        a = {v: bool(bitsv >> i & 1) for i, v in enumerate(vs)}
        best = max(best, f.satisfied(a))
    return best


# --- tree and caterpillar instances -----------------------------------------------------

@dataclass
class ReductionArtifact:
    instance: Graph
    threshold: int
    baseline: int
    m: int                    # clauses after duplication; scales the leaf bundles
    k: int
    m_original: int
    summation_baseline: int   # closed-form sum kept as a cross-check
    provenance: dict = field(default_factory=dict)

    def sidecar(self) -> dict:
        return {"threshold": self.threshold, "baseline": self.baseline, "m": self.m,
                "k": self.k, "m_original": self.m_original,
                "summation_baseline": self.summation_baseline,
                "vertices": self.instance.n, "provenance": self.provenance}

    def sidecar_json(self) -> str:
        return json.dumps(self.sidecar(), indent=2, sort_keys=True)


def _check_buildable(f: Qbf2Formula):
    if f.m == 0:
        raise ReductionError("formula has no clauses")
    for a, b in f.clauses:
        if abs(a) == abs(b):
            raise ReductionError(f"clause ({a} v {b}) uses one variable twice")
    lci = lci_graph(f)
    if not lci.is_simple:
        raise ReductionError("repeated clause: incidence graph has a multi-edge")
    if not is_acyclic(f):
        raise ReductionError("literal-clause incidence graph has a cycle")


def leaf_bundle_sizes(N: int, m: int) -> tuple[list[int], list[int]]:
    """Leaves per literal vertex and per chain vertex, by prefix position 1..N."""
    lit = [16 * (N + 1 - i) * m for i in range(1, N + 1)]
    chain = [16 * (N + 1 - i) * m - 4 * m for i in range(1, N + 1)]
    return lit, chain


def build_tree_instance(f: Qbf2Formula, k: int) -> ReductionArtifact:
    _check_buildable(f)
    d = duplicate(pad_alternating(f))
    N, m = d.n, d.m
    lci = lci_graph(d)
    lit_sizes, chain_sizes = leaf_bundle_sizes(N, m)

    edges: list[tuple[int, int]] = []
    labels: list[str] = list(lci.graph.labels)
    comps = components(lci.graph)
    ends = []
    for comp, back in comps:
        leaves = [back[i] for i in range(comp.n) if comp.degree(i) <= 1]
        ends.append((min(leaves), max(leaves)))
    for (_, u), (v, _) in zip(ends, ends[1:]):
        edges.append((u, v))

    nlit = 2 * N
    clause_v = {}
    for j, (a, b) in enumerate(lci.clause_edges):
        c = nlit + j
        clause_v[j] = c
        labels.append(f"c{j}")
        edges += [(a, c), (c, b)]
    chain_v = {}
    base = nlit + m
    for i in range(N):
        chain_v[i + 1] = base + i
        labels.append(f"v{i + 1}")
        if i:
            edges.append((base + i - 1, base + i))
    edges.append((base + N - 1, ends[0][0]))

    nxt = base + N
    bundles: dict[int, list[int]] = {}
    hosts = [(2 * i + s, lit_sizes[i]) for i in range(N) for s in (0, 1)]
    hosts += [(chain_v[i + 1], chain_sizes[i]) for i in range(N)]
    for host, size in hosts:
        bundles[host] = [nxt, nxt + size]
        edges.extend((host, nxt + t) for t in range(size))
        labels.extend(["leaf"] * size)
        nxt += size
    g = Graph.from_edges(nxt, edges, labels)

    baseline = simulate_baseline(g, N, chain_v, bundles)
    summation = (sum(8 * (N + 1 - i) * m for i in range(1, N + 1))
                 + sum(8 * (N + 1 - i) * m - 2 * m for i in range(1, N + 1, 2)))
    prov = {
        "clauses": {str(j): v for j, v in clause_v.items()},
        "literals": {lab: i for i, lab in enumerate(lci.graph.labels)},
        "chain": {str(i): v for i, v in chain_v.items()},
        "leaf_bundles": {str(h): r for h, r in bundles.items()},
        "prefix": [[q, v] for q, v in d.prefix],
        "formula_clauses": [list(c) for c in d.clauses],
    }
    return ReductionArtifact(g, baseline + f.m - k + 1, baseline, m, k, f.m,
                             summation, prov)


def simulate_baseline(g: Graph, N: int, chain_v: dict[int, int],
                      bundles: dict[int, list[int]]) -> int:
    """Happy count reached by the forced opening, with every clause vertex lost.

    Bundles are split evenly, then per prefix position i: on odd i Maker
    takes x_i+, Breaker x_i-, Maker the chain vertex; on even i the roles
    swap. Which literal each side takes does not change the count.
    """
    maker, breaker = set(), set()
    for lo, hi in bundles.values():
        for t in range(lo, hi, 2):
            maker.add(t)
            breaker.add(t + 1)
    for i in range(1, N + 1):
        plus, minus, ch = 2 * (i - 1), 2 * (i - 1) + 1, chain_v[i]
        if i % 2:
            maker |= {plus, ch}
            breaker.add(minus)
        else:
            breaker |= {plus, ch}
            maker.add(minus)
    # every other vertex goes to Breaker; sets beat bitmasks at this size
    return sum(1 for w in maker if g.adj[w] <= maker)


def is_caterpillar(g: Graph) -> bool:
    if g.n == 0 or g.num_edges != g.n - 1 or len(components(g)) != 1:
        return False
    spine = [v for v in range(g.n) if g.degree(v) > 1]
    if len(spine) <= 1:
        return True
    sub, _ = g.induced(spine)
    return (len(components(sub)) == 1 and sub.num_edges == sub.n - 1
            and all(sub.degree(v) <= 2 for v in range(sub.n)))


def build_caterpillar_instance(f: Qbf2Formula, k: int) -> ReductionArtifact:
    if not f.is_existential:
        raise ReductionError("caterpillar builder needs a purely existential formula")
    occ = f.occurrences()
    for lit, cnt in occ.items():
        if cnt > 2:
            raise ReductionError(f"literal {lit} occurs {cnt} times (at most 2 allowed)")
    art = build_tree_instance(f, k)
    if not is_caterpillar(art.instance):
        raise AssertionError("builder produced a non-caterpillar")
    return art


__all__ = [
    "Qbf2Formula", "LciGraph", "ReductionArtifact", "ReductionError", "parse_formula",
    "lci_graph", "is_acyclic", "break_cycles", "bound_occurrences", "duplicate",
    "pad_alternating", "qbf_max_solve", "qbf_max_value", "max2sat_optimum",
    "build_tree_instance", "build_caterpillar_instance", "is_caterpillar",
    "simulate_baseline", "leaf_bundle_sizes",
]
