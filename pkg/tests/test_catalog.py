import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from bgrlab import catalog
from bgrlab.catalog import (CatalogConflict, FormulaResult, HypothesisError, OutOfTheoremRange,
                            bgr_value, bipartition_stats, br2_path, check_hypotheses,
                            formula_value, hypotheses, li_bounds)
from bgrlab.core import Biclique, EvenCycle, PathV, RainbowPattern, Star, TargetGraph, parse_target

P4, P5, K13 = RainbowPattern.P4, RainbowPattern.P5, RainbowPattern.K13


def _random_target(rng):
    comps = []
    for _ in range(rng.randint(1, 4)):
        kind = rng.randrange(4)
        if kind == 0:
            comps.append(PathV(rng.randint(2, 9)))
        elif kind == 1:
            comps.append(EvenCycle(2 * rng.randint(2, 5)))
        elif kind == 2:
            comps.append(Star(rng.randint(2, 6)))
        else:
            s = rng.randint(2, 4)
            comps.append(Biclique(s, rng.randint(s, 5)))
    return TargetGraph(tuple(comps))


def test_stats_examples():
    st_ = bipartition_stats(parse_target("2xK1,2"))
    assert (st_.s, st_.t, st_.s_star, st_.t_star) == (2, 4, 3, 3)
    assert bipartition_stats(parse_target("P2+P4")).to_dict() == {"s": 3, "t": 3, "sStar": 3, "tStar": 3}


def test_stats_against_oracle():
    rng = random.Random(2024)
    for _ in range(200):
        h = _random_target(rng)
        got = bipartition_stats(h)
        assert (got.s, got.t, got.s_star, got.t_star) == oracles.bipartition_stats(h)
        assert got.s + got.t == h.vertex_count == got.s_star + got.t_star
        assert got.s <= got.s_star <= got.t_star <= got.t


@pytest.mark.parametrize("text", ["P2+P4", "P3+P5", "P4+P7", "C4+C6", "P3+C6", "P5+C8"])
@pytest.mark.parametrize("k", [3, 4, 6])
def test_li_bounds_bracket_t31(text, k):
    res = bgr_value(P4, parse_target(text), k)
    assert isinstance(res, FormulaResult) and res.theorem_id == "T31"
    lb = li_bounds(parse_target(text), k)
    assert lb.lower <= res.value <= lb.upper
    if lb.exact is not None:
        assert lb.exact == res.value


def test_li_hypotheses():
    with pytest.raises(HypothesisError, match="k >= 3"):
        li_bounds(parse_target("P4+P4"), 2)
    with pytest.raises(HypothesisError, match="s\\(H\\)"):
        li_bounds(parse_target("P2"), 3)


def test_formula_examples():
    assert bgr_value(K13, parse_target("K1,5"), 5).value == 6
    assert bgr_value(K13, parse_target("K2,5"), 5).value == 7
    assert bgr_value(P4, parse_target("P2+P4"), 3).value == 7
    assert bgr_value(P5, parse_target("K3,3"), 5).value == 11
    res = bgr_value(P5, parse_target("2xP10"), 5)
    assert res.value == 46 and res.theorem_id == "T32" and "T33" in res.also_matched


def test_out_of_range():
    res = bgr_value(P5, parse_target("P10"), 3)
    assert isinstance(res, OutOfTheoremRange)
    # T32 and T33 each miss one clause; ties go to the earlier theorem
    assert res.nearest_theorem == "T32" and "k >= 4" in res.violated_clause
    assert res.to_dict()["theoremId"] is None
    res = bgr_value(P4, parse_target("P5"), 3)
    assert res.nearest_theorem is None
    assert bgr_value(K13, parse_target("K1,5"), 8).nearest_theorem == "T41"


def test_value_squared_guard():
    # T34 hypotheses hold for P2 at k=4 but its value is 1
    assert all(ok for _, ok in hypotheses("T34", {"k": 4, "ls": [2]}))
    assert isinstance(bgr_value(P5, parse_target("P2"), 4), OutOfTheoremRange)


@given(st.lists(st.integers(2, 6), min_size=1, max_size=3), st.integers(0, 30))
def test_t34_without_paths_is_c31(ms, extra):
    k = 2 + sum(ms) + extra
    assert formula_value("T34", {"k": k, "ms": ms}) == formula_value("C31", {"k": k, "ls": ms})
    assert all(ok for _, ok in hypotheses("T34", {"k": k, "ms": ms}))
    assert all(ok for _, ok in hypotheses("C31", {"k": k, "ls": ms}))


@given(st.lists(st.integers(10, 30), min_size=1, max_size=3), st.integers(5, 200))
def test_t33_t34_agree_on_paths(ls, k):
    assert formula_value("T33", {"k": k, "ls": ls}) == formula_value("T34", {"k": k, "ls": ls})


@given(st.integers(3, 40))
def test_br2_path(n):
    assert br2_path(n) == (n - 1 if n % 2 == 0 else n)


def test_br2_examples_and_range():
    assert [br2_path(n) for n in (4, 5, 6)] == [3, 5, 5]
    with pytest.raises(ValueError):
        br2_path(2)


def test_check_hypotheses():
    assert check_hypotheses("T41", {"k": "5", "t": "5"})[0] == "t >= 5"
    with pytest.raises(HypothesisError, match="parameter t"):
        check_hypotheses("T41", {"k": 5})
    with pytest.raises(HypothesisError, match="unknown theorem"):
        hypotheses("T99", {"k": 5})


def test_conflict_detection(monkeypatch):
    real = catalog.formula_value

    def skewed(tid, params):
        return real(tid, params) + (1 if tid == "T33" else 0)

    monkeypatch.setattr(catalog, "formula_value", skewed)
    with pytest.raises(CatalogConflict, match="T32"):
        bgr_value(P5, parse_target("2xP10"), 5)
