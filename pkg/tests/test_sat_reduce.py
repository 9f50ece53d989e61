import pytest
from hypothesis import given, settings, strategies as st

from shvg.graph import ParseError, components
from shvg.sat_reduce import (Qbf2Formula, ReductionError, bound_occurrences, break_cycles,
                             build_caterpillar_instance, build_tree_instance, duplicate,
                             is_acyclic, is_caterpillar, lci_graph, leaf_bundle_sizes,
                             max2sat_optimum, pad_alternating, parse_formula, qbf_max_solve,
                             qbf_max_value)

THREE_VARS = """p qcnf 3 3
e 1 0
a 2 0
e 3 0
1 -2 0
-1 3 0
3 2 0
"""


def ex(*clauses, n=None):
    n = n or max(abs(l) for c in clauses for l in c)
    return Qbf2Formula(tuple(("e", v) for v in range(1, n + 1)), clauses)


@st.composite
def formulas(draw, max_n=6, max_m=8, quantified=False):
    n = draw(st.integers(2, max_n))
    quants = draw(st.lists(st.sampled_from("ea"), min_size=n, max_size=n)) if quantified \
        else ["e"] * n
    lit = st.integers(1, n).flatmap(lambda v: st.sampled_from((v, -v)))
    clause = st.tuples(lit, lit).filter(lambda c: abs(c[0]) != abs(c[1]))
    cl = draw(st.lists(clause, max_size=max_m))
    return Qbf2Formula(tuple(zip(quants, range(1, n + 1))), tuple(cl))


def test_parse_three_variable_formula():
    f = parse_formula(THREE_VARS)
    assert f.prefix == (("e", 1), ("a", 2), ("e", 3))
    assert f.clauses == ((1, -2), (-1, 3), (3, 2))


def test_parse_empty_clause_list():
    f = parse_formula("p qcnf 2 0\ne 1 2 0\n")
    assert f.m == 0
    with pytest.raises(ReductionError):
        build_tree_instance(f, 1)


@pytest.mark.parametrize("text, line", [
    ("p qcnf 3 1\ne 1 2 3 0\n1 2 3 0\n", 3),
    ("p qcnf 2 1\ne 1 0\n1 2 0\n", 3),
    ("e 1 0\n", 1),
    ("p qcnf 2 1\ne 1 1 0\n", 2),
])
def test_parse_errors(text, line):
    with pytest.raises(ParseError) as exc:
        parse_formula(text)
    assert exc.value.line == line


def test_round_trip_text():
    f = parse_formula(THREE_VARS)
    assert parse_formula(f.to_text()) == f


def test_lci_examples():
    lci = lci_graph(ex((1, -2), (2, 3), (-1, 3)))
    assert lci.graph.n == 6 and lci.graph.num_edges == 3
    assert lci_graph(ex(n=1)).graph.num_edges == 0
    dup = lci_graph(ex((1, 2), (1, 2)))
    assert dup.graph.num_edges == 1 and list(dup.multiplicity.values()) == [2]
    assert not dup.is_simple


def test_break_cycles_identity_on_forest():
    f = ex((1, 2), (-2, 3))
    out = break_cycles(f, 5)
    assert out.formula == f and out.k == 5 and out.gadgets == 0


def test_break_cycles_triangle():
    f = ex((1, 2), (2, 3), (3, 1))
    assert not is_acyclic(f)
    out = break_cycles(f, 0)
    assert out.gadgets == 1 and out.k == 4 and is_acyclic(out.formula)
    assert max2sat_optimum(out.formula) == max2sat_optimum(f) + 4
    assert [v for _, v in out.formula.prefix[-3:]] == [4, 5, 6]


def test_repeated_clause_is_a_cycle():
    out = break_cycles(ex((1, 2), (1, 2)), 0)
    assert out.gadgets == 1 and is_acyclic(out.formula)


@given(formulas(max_n=8, max_m=10))
def test_break_cycles_acyclic(f):
    out = break_cycles(f, 0)
    assert is_acyclic(out.formula)
    assert out.gadgets <= f.m


@settings(max_examples=40)
@given(formulas(max_n=5, max_m=6), st.integers(0, 8))
def test_break_cycles_threshold(f, k):
    out = break_cycles(f, k)
    assert (max2sat_optimum(f) >= k) == (max2sat_optimum(out.formula) >= out.k)


def test_bound_occurrences_three_copies():
    out = bound_occurrences(ex((1, 2), (1, 3), (1, 4)), 3)
    assert out.formula.m == 0 and out.k == 0 and out.removals == 1


def test_bound_occurrences_identity():
    f = ex((1, 2), (-1, 3))
    out = bound_occurrences(f, 2)
    assert out.formula == f and out.k == 2


def test_bound_occurrences_preconditions():
    with pytest.raises(ReductionError):
        bound_occurrences(ex((1, 2), (1, 3), (-1, 4), (1, 5)), 1)
    with pytest.raises(ReductionError):
        bound_occurrences(Qbf2Formula((("a", 1), ("e", 2)), ((1, 2),)), 1)


def test_duplicate():
    f = Qbf2Formula((("a", 1), ("e", 2)), ((1, -2),))
    d = duplicate(f)
    assert d.prefix == (("a", 1), ("e", 2), ("a", 3), ("e", 4))
    assert d.clauses == ((1, -2), (3, -4))


@given(formulas(max_n=4, max_m=5))
def test_duplicate_doubles_optimum(f):
    assert max2sat_optimum(duplicate(f)) == 2 * max2sat_optimum(f)


@given(formulas(max_n=4, max_m=5, quantified=True))
def test_padding_alternates_and_keeps_value(f):
    p = pad_alternating(f)
    assert [q for q, _ in p.prefix] == ["a", "e"] * (p.n // 2)
    assert qbf_max_value(p) == qbf_max_value(f)


def test_qbf_examples():
    assert qbf_max_solve(ex((1, 1)), 1) == (True, 1)
    f = Qbf2Formula((("a", 1), ("e", 2)), ((1, 2), (-1, -2)))
    assert qbf_max_solve(f, 2) == (True, 2)
    g = Qbf2Formula((("e", 2), ("a", 1)), ((1, 2), (-1, -2)))
    assert qbf_max_solve(g, 2) == (False, 1)


@given(formulas(max_n=5, max_m=6))
def test_existential_value_is_optimum(f):
    assert qbf_max_value(f) == max2sat_optimum(f)


def test_qbf_cap():
    from shvg.errors import ResourceExceeded
    with pytest.raises(ResourceExceeded):
        qbf_max_value(ex((1, 2), n=15))


def test_three_variable_tree_shape():
    f = parse_formula(THREE_VARS)
    art = build_tree_instance(f, 2)
    g = art.instance
    assert g.num_edges == g.n - 1 and len(components(g)) == 1
    assert art.threshold == art.baseline + f.m - 2 + 1
    assert art.baseline == art.summation_baseline
    prov = art.provenance
    N = len(prov["prefix"])
    lit_sizes, chain_sizes = leaf_bundle_sizes(N, art.m)
    # literal bundles shrink by 16m per prefix position; chain bundles are 4m lighter
    for i in range(N):
        for host in (2 * i, 2 * i + 1):
            lo, hi = prov["leaf_bundles"][str(host)]
            assert hi - lo == lit_sizes[i] == 16 * (N - i) * art.m
        lo, hi = prov["leaf_bundles"][str(prov["chain"][str(i + 1)])]
        assert hi - lo == chain_sizes[i] == lit_sizes[i] - 4 * art.m
    for j, c in prov["clauses"].items():
        assert g.degree(c) == 2
    bundle_total = sum(hi - lo for lo, hi in prov["leaf_bundles"].values())
    assert g.n == 2 * N + art.m + N + bundle_total


def test_builder_preconditions():
    with pytest.raises(ReductionError):
        build_tree_instance(ex((1, 2), (2, 3), (3, 1)), 1)     # cyclic
    with pytest.raises(ReductionError):
        build_tree_instance(ex((1, -1), (1, 2)), 1)            # same variable twice
    with pytest.raises(ReductionError):
        build_caterpillar_instance(ex((1, 2), (1, 3), (1, 4)), 1)
    with pytest.raises(ReductionError):
        build_caterpillar_instance(Qbf2Formula((("a", 1), ("e", 2)), ((1, 2),)), 1)


def test_caterpillar_shape():
    art = build_caterpillar_instance(ex((1, 2), (-2, 3), (3, -4)), 1)
    assert is_caterpillar(art.instance)


def test_is_caterpillar():
    from shvg import generators as gen
    assert is_caterpillar(gen.path(5)) and is_caterpillar(gen.star(4))
    assert not is_caterpillar(gen.subdivided_star((2, 2, 2)))
    assert not is_caterpillar(gen.cycle(5))


def test_sidecar_is_json():
    import json
    art = build_tree_instance(ex((1, 2)), 1)
    side = json.loads(art.sidecar_json())
    assert side["threshold"] == art.threshold and side["vertices"] == art.instance.n
