import pytest
from hypothesis import given

from shvg import generators as gen
from shvg.graph import (MAKER, BREAKER, ClassKind, Graph, ParseError, Player, Position,
                        components, count_happy, decompose, format_graph, format_position,
                        happy_count, instant_gain, neighborhood_partition, parse_graph,
                        parse_position, same_type)
from shvg.oracle import brute_force_pair

from conftest import graphs, positions


def test_parse_path():
    g = parse_graph("3 2\n0 1\n1 2")
    assert g.n == 3 and set(g.edges) == {(0, 1), (1, 2)}


def test_parse_single_vertex_and_triangle():
    assert parse_graph("1 0").n == 1
    assert parse_graph("3 3\n0 1\n1 2\n0 2").num_edges == 3


def test_parse_comments_and_labels():
    g = parse_graph("# a path\n2 1\n0 1\nlabel 0 root\n")
    assert g.label(0) == "root"


@pytest.mark.parametrize("text, line", [
    ("3 2\n0 1\n", 2),          # too few edges
    ("2 1\n0 5\n", 2),          # out of range
    ("2 1\n1 1\n", 2),          # self-loop
    ("x y\n", 1),
    ("2 1\n0 1\n0 1 2\n", 3),   # trailing junk
])
def test_parse_errors_carry_line(text, line):
    with pytest.raises(ParseError) as exc:
        parse_graph(text)
    assert exc.value.line == line


def test_position_round_trip():
    pos = Position(gen.path(4), frozenset({0}), frozenset({3}))
    assert parse_position(format_position(pos)) == pos


def test_position_rejects_overlap():
    with pytest.raises(ParseError):
        parse_position("2 1\n0 1\nM: 0\nB: 0\n")


@given(graphs())
def test_format_parse_round_trip(g):
    assert parse_graph(format_graph(g)) == g


def test_happy_count_examples():
    p3 = gen.path(3)
    assert happy_count(Position(p3, {0, 1, 2}, set())) == 3
    assert happy_count(Position(p3, {0, 1}, {2})) == 1
    assert happy_count(Position(Graph.from_edges(1, []), {0}, set())) == 1


def test_happy_count_needs_terminal():
    with pytest.raises(ValueError):
        happy_count(Position(gen.path(3)))


def test_instant_gain_examples():
    star = gen.star(3)
    assert instant_gain(Position(star, {1, 2, 3}, set()), 0) == 4
    assert instant_gain(Position(gen.path(4)), 1) == 0
    assert instant_gain(Position(Graph.from_edges(1, [])), 0) == 1


@given(positions())
def test_instant_gain_matches_count(pos):
    for v in pos.free:
        assert instant_gain(pos, v) == count_happy(pos.graph, pos.maker_mask | 1 << v)


def test_player_parse():
    assert Player.parse("M") is MAKER and Player.parse("breaker") is BREAKER
    assert MAKER.other is BREAKER
    with pytest.raises(ValueError):
        Player.parse("x")


def test_decompose_five_vertex_position():
    # a=0 (Maker), b=1, c=2, d=3 and e=4 (Breaker)
    g = Graph.from_edges(5, [(0, 1), (3, 1), (3, 2), (0, 2), (4, 2), (3, 4)])
    red = decompose(Position(g, {0}, {3, 4}))
    assert red.graph.n == 5
    assert len(red.breaker) == 2 and red.maker == {0}
    assert set(red.graph.edges) == {(0, 1), (0, 2), (1, 3), (2, 4)}


def test_decompose_without_breaker_is_identity():
    pos = Position(gen.cycle(5), {1}, set())
    assert decompose(pos) is pos


def test_decompose_p3_middle_breaker():
    red = decompose(Position(gen.path(3), set(), {1}))
    comps = components(red.graph)
    assert sorted(c.n for c, _ in comps) == [2, 2]
    assert brute_force_pair(red) == brute_force_pair(Position(gen.path(3), set(), {1}))


@given(positions(max_n=7))
def test_decompose_preserves_score(pos):
    assert brute_force_pair(decompose(pos)) == brute_force_pair(pos)


def test_partition_examples():
    part = neighborhood_partition(gen.complete(5))
    assert len(part) == 1 and part.class_kind[0] is ClassKind.CLIQUE
    assert sorted(map(sorted, neighborhood_partition(gen.star(3)).classes)) == [[0], [1, 2, 3]]
    assert len(neighborhood_partition(gen.path(4))) == 4


@given(graphs())
def test_partition_classes_are_same_type(g):
    part = neighborhood_partition(g)
    assert sorted(v for c in part.classes for v in c) == list(range(g.n))
    for cls in part.classes:
        for u in cls:
            for v in cls:
                assert same_type(g, u, v)
    reps = [c[0] for c in part.classes]
    for i, u in enumerate(reps):
        for v in reps[i + 1:]:
            assert not same_type(g, u, v)


def test_components_examples():
    g = gen.union_of_paths((3, 5))
    assert sorted(c.n for c, _ in components(g)) == [3, 5]
    assert len(components(gen.petersen())) == 1
    assert components(Graph.from_edges(0, [])) == []


@given(graphs())
def test_components_cover_vertices(g):
    back = sorted(v for _, b in components(g) for v in b)
    assert back == list(range(g.n))
    assert sum(c.num_edges for c, _ in components(g)) == g.num_edges
