"""The fourteen acceptance criteria, each at its stated scale and time limit.

Every test records one PASS/FAIL line; conftest prints them after the run.
Running this file directly prints the same lines without pytest.
"""
import time

import pytest

from shvg.verify import VerifyConfig, run_suite

RESULTS: list[str] = []


def check(num, title, suite, limit=None, **cfg):
    t = time.perf_counter()
    res = run_suite(suite, VerifyConfig(**cfg))
    secs = time.perf_counter() - t
    ok = res.passed and res.checked > 0 and (limit is None or secs < limit)
    extra = f" (limit {limit}s)" if limit else ""
    notes = f" {res.notes}" if res.notes else ""
    line = (f"{'PASS' if ok else 'FAIL'} criterion {num:2d} {title}: "
            f"{res.checked} checks, {len(res.failures)} failures, {secs:.1f}s{extra}{notes}")
    RESULTS.append(line)
    print(line)
    assert res.passed, res.failures[:5]
    assert res.checked > 0
    if limit is not None:
        assert secs < limit, f"took {secs:.1f}s, limit {limit}s"
    return res


def test_c01_paths():
    check(1, "paths n<=12 brute force vs formula", "paths", limit=10, max_n=12)


def test_c02_unions():
    check(2, "unions of paths, total <= 14", "unions", limit=60, max_n=14)


def test_c03_cycles():
    check(3, "cycles C3..C9 score (0,0)", "cycles", max_n=9)


def test_c04_stars():
    check(4, "subdivided stars, 3-5 legs, <= 13 vertices", "stars", limit=120, max_n=13)


def test_c05_binary_trees():
    res = check(5, "complete binary trees d<=3", "binary-trees", limit=60)
    assert res.notes["t3_seconds"] < 60


def test_c06_super_lemma():
    res = check(6, "super lemma on 500 planted-twin graphs", "super-lemma", max_n=9, count=500)
    assert res.notes["pairings_applied"] > 0


def test_c07_decompose():
    check(7, "decomposed graph on 500 positions", "decompose", max_n=9, count=500)


def test_c08_milnor():
    check(8, "sum bounds on 200 two-component unions", "milnor", max_n=6, count=200)


def test_c09_fpt():
    res = check(9, "neighbourhood diversity solver", "fpt", max_n=20, count=100)
    assert res.notes["slowest_nd_seconds"] < 1.0
    assert "faster" not in res.notes["brute_force"]


def test_c10_gadget():
    res = check(10, "acyclicity gadget on 200 formulas", "gadget", count=200)
    assert res.notes["gadget_applications"] > 0


def test_c11_occurrences():
    res = check(11, "occurrence bounding on 200 formulas", "occurrences", count=200)
    assert res.notes["removals"] > 0


@pytest.mark.slow
def test_c12_reduction():
    check(12, "tree reduction round trip, <= 2 vars and clauses", "reduction", limit=600,
          vars=2, clauses=2)


def test_c13_caterpillar():
    check(13, "caterpillar shape on 100 inputs", "caterpillar", count=100)


def test_c14_pds():
    res = check(14, "pairing dominating sets imply (0,0)", "pds", max_n=9)
    assert res.notes["with_pds"] > 0


if __name__ == "__main__":
    import sys
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_c"):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
