import pytest
from hypothesis import given, strategies as st

from shvg import generators as gen
from shvg.fpt import TooManyClasses, nd_solve, nd_solve_report, nd_value
from shvg.graph import BREAKER, MAKER, Position
from shvg.oracle import brute_force_score

from conftest import graphs, twin_graphs


def test_nd_examples():
    assert nd_solve(gen.complete(5), MAKER) == 0
    assert nd_solve(gen.star(3), MAKER) == 1
    assert nd_solve(gen.cycle(4), MAKER) == nd_solve(gen.cycle(4), BREAKER) == 0


def test_nd_value_examples():
    assert nd_value(gen.complete(6)) == 1
    assert nd_value(gen.path(4)) == 4
    assert nd_value(gen.star(3)) == 2


def test_class_cap():
    with pytest.raises(TooManyClasses):
        nd_solve(gen.path(8), MAKER, max_w=3)


@given(twin_graphs(), st.sampled_from([MAKER, BREAKER]))
def test_nd_matches_brute_force(g, mover):
    assert nd_solve(g, mover) == brute_force_score(Position(g), mover)


@given(graphs(max_n=7), st.sampled_from([MAKER, BREAKER]))
def test_nd_on_arbitrary_graphs(g, mover):
    assert nd_solve(g, mover) == brute_force_score(Position(g), mover)


@given(twin_graphs(max_n=14))
def test_state_count_within_bound(g):
    rep = nd_solve_report(g, MAKER)
    assert len(rep.residual) <= rep.w
    assert rep.states <= 3 ** len(rep.residual)


def test_nd_from_position():
    pos = Position(gen.star(3), {0}, set())
    rep = nd_solve_report(pos.graph, BREAKER, pos)
    assert rep.score == brute_force_score(pos, BREAKER)
