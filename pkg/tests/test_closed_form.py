import pytest
from hypothesis import given, strategies as st

from shvg import generators as gen
from shvg.closed_form import (CompleteBinaryTree, Cycle, Path, SubdividedStar,
                              UnionOfPathsAndCycles, Unknown, build, classify,
                              complete_binary_tree_score, formula_score, path_score,
                              subdivided_star_score, union_paths_score)
from shvg.graph import BREAKER, MAKER, Position
from shvg.oracle import brute_force_score


def test_classify_examples():
    assert classify(gen.subdivided_star((2, 2, 2))) == SubdividedStar((2, 2, 2))
    assert classify(gen.complete_binary_tree(3)) == CompleteBinaryTree(3)
    assert classify(gen.path(6)) == Path(6)
    assert classify(gen.cycle(5)) == Cycle(5)
    assert classify(gen.petersen()) == Unknown()
    g = gen.union_of_paths((4, 2))
    assert classify(g) == UnionOfPathsAndCycles((2, 4), ())


@pytest.mark.parametrize("n, mover, want", [(4, MAKER, 0), (7, MAKER, 1), (7, BREAKER, 0)])
def test_path_score(n, mover, want):
    assert path_score(n, mover) == want


@pytest.mark.parametrize("lengths, mover, want", [
    ((3, 3), BREAKER, 1), ((3, 5, 7), MAKER, 2), ((2, 4, 6), MAKER, 0), ((2, 4, 6), BREAKER, 0)])
def test_union_paths_score(lengths, mover, want):
    assert union_paths_score(lengths, mover) == want


@pytest.mark.parametrize("legs, mover, want", [
    ((1, 1, 1), MAKER, 1), ((2, 2, 2), MAKER, 1), ((1, 1, 1, 1, 1), BREAKER, 0),
    ((1, 1, 1, 1), MAKER, 2)])
def test_subdivided_star_score(legs, mover, want):
    assert subdivided_star_score(legs, mover) == want


@pytest.mark.parametrize("d, mover, want", [(0, MAKER, 1), (2, MAKER, 1), (2, BREAKER, 1),
                                            (3, MAKER, 2), (3, BREAKER, 2)])
def test_binary_tree_score(d, mover, want):
    assert complete_binary_tree_score(d, mover) == want


def test_formula_score_examples():
    assert formula_score(gen.path(5)) == 1
    assert formula_score(gen.petersen()) is None
    assert formula_score(gen.cycle(7)) == 0


def test_invalid_inputs():
    with pytest.raises(ValueError):
        path_score(0)
    with pytest.raises(ValueError):
        subdivided_star_score((0, 1, 1))
    with pytest.raises(ValueError):
        build(Unknown())


@given(st.one_of(
    st.builds(Path, st.integers(1, 12)),
    st.builds(Cycle, st.integers(3, 12)),
    st.builds(SubdividedStar, st.lists(st.integers(1, 4), min_size=3, max_size=5)
              .map(lambda xs: tuple(sorted(xs)))),
    st.builds(CompleteBinaryTree, st.integers(2, 5)),
))
def test_classify_inverts_build(cls):
    assert classify(build(cls)) == cls


@given(st.lists(st.integers(1, 5), min_size=2, max_size=3), st.lists(st.integers(3, 5), max_size=1))
def test_union_round_trip(paths, cycles):
    cls = UnionOfPathsAndCycles(tuple(sorted(paths)), tuple(sorted(cycles)))
    assert classify(build(cls)) == cls


@given(st.lists(st.integers(1, 3), min_size=3, max_size=4), st.sampled_from([MAKER, BREAKER]))
def test_star_formula_matches_brute_force(legs, mover):
    g = gen.subdivided_star(legs)
    assert subdivided_star_score(legs, mover) == brute_force_score(Position(g), mover)
