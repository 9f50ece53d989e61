import random

import pytest
from hypothesis import given

from shvg import generators as gen
from shvg.errors import ResourceExceeded
from shvg.graph import Graph, Position, disjoint_union
from shvg.milnor import (PairingDominatingSet, ScorePair, find_pairing_dominating_set,
                         split_components, sum_bounds, total_after_split)
from shvg.oracle import brute_force_pair

from conftest import graphs


def test_sum_bounds_two_odd_paths():
    b = sum_bounds([(1, 0), (1, 0)])
    assert (b.bs_lower, b.bs_upper, b.ms_lower, b.ms_upper) == (0, 1, 1, 2)
    assert b.contains(ScorePair(1, 1))


def test_sum_bounds_cold_parts_are_exact():
    b = sum_bounds([(0, 0), (5, 3)])
    assert (b.bs_lower, b.bs_upper, b.ms_lower, b.ms_upper) == (3, 3, 5, 5)
    b = sum_bounds([ScorePair(2, 2), ScorePair(3, 3)])
    assert (b.bs_lower, b.bs_upper, b.ms_lower, b.ms_upper) == (5, 5, 5, 5)


def test_sum_bounds_needs_parts():
    with pytest.raises(ValueError):
        sum_bounds([])


@given(graphs(max_n=5), graphs(max_n=5), graphs(max_n=4))
def test_true_sum_inside_bounds(a, b, c):
    parts = [ScorePair(*brute_force_pair(Position(g))) for g in (a, b, c)]
    whole = ScorePair(*brute_force_pair(Position(disjoint_union(a, b, c))))
    assert sum_bounds(parts).contains(whole)


def test_pds_examples():
    p4 = find_pairing_dominating_set(gen.path(4))
    assert p4 is not None and p4.covers(gen.path(4))
    assert find_pairing_dominating_set(Graph.from_edges(1, [])) is None
    c4 = find_pairing_dominating_set(gen.cycle(4))
    assert c4 is not None and c4.covers(gen.cycle(4))
    assert not PairingDominatingSet(((0, 1),)).covers(gen.path(4))


def test_pds_size_cap():
    with pytest.raises(ResourceExceeded):
        find_pairing_dominating_set(gen.path(30), max_n=20)


@given(graphs(max_n=8))
def test_pds_implies_zero(g):
    pds = find_pairing_dominating_set(g)
    if pds is not None:
        assert pds.covers(g)
        assert brute_force_pair(Position(g)) == (0, 0)


def test_split_examples():
    res = split_components(disjoint_union(gen.path(3), gen.path(4), gen.cycle(5)))
    assert res.extracted == 0 and len(res.residual) == 1
    assert res.exact == ScorePair(1, 0)
    res = split_components(disjoint_union(gen.complete_binary_tree(3), gen.path(5)))
    assert res.extracted == 2 and res.exact == ScorePair(3, 2)
    assert tuple(total_after_split(disjoint_union(gen.complete_binary_tree(3), gen.path(5)))) == (3, 2)


def test_two_cold_parts_leave_nothing():
    res = split_components(disjoint_union(gen.cycle(4), gen.complete_binary_tree(2)))
    assert res.residual == [] and res.exact == ScorePair(1, 1)


def test_total_after_split_matches_brute_force():
    rng = random.Random(5)
    for _ in range(30):
        parts = [gen.random_graph(rng, rng.randint(1, 4), 0.5) for _ in range(3)]
        g = disjoint_union(*parts)
        assert tuple(total_after_split(g)) == brute_force_pair(Position(g))
