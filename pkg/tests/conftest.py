import random

from hypothesis import HealthCheck, settings, strategies as st

from shvg import generators as gen
from shvg.graph import Graph, Position

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def graphs(draw, max_n=8, min_n=1):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph.from_edges(n, chosen)


@st.composite
def positions(draw, max_n=8):
    g = draw(graphs(max_n=max_n))
    colours = draw(st.lists(st.sampled_from("MBF"), min_size=g.n, max_size=g.n))
    maker = frozenset(v for v, c in enumerate(colours) if c == "M")
    breaker = frozenset(v for v, c in enumerate(colours) if c == "B")
    return Position(g, maker, breaker)


@st.composite
def twin_graphs(draw, max_n=9):
    seed = draw(st.integers(0, 10**6))
    rng = random.Random(seed)
    n = draw(st.integers(2, max_n))
    return gen.planted_twins(rng, rng.randint(1, min(4, n)), n, rng.uniform(0.2, 0.8))


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
