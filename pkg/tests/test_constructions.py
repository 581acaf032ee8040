import pytest
from hypothesis import given
from hypothesis import strategies as st

from bgrlab.catalog import PATTERN_OF, formula_value, target_for
from bgrlab.constructions import (HypothesisError, col_blocks, diagonal, even_split,
                                  lower_bound_for, row_blocks, sporadic_p5)
from bgrlab.patterns import find_monochromatic, find_rainbow

VALID = [
    ("T31", {"k": 3, "r": 2, "l": 2}),
    ("T31", {"k": 3, "l1": 2, "l2": 3}),
    ("T31", {"k": 4, "m": 2, "l": 2}),
    ("T32", {"k": 4, "r": 1, "l": 10}),
    ("T33", {"k": 5, "ls": [10]}),
    ("T34", {"k": 5, "ls": [4]}),
    ("T34", {"k": 4, "ms": [2]}),
    ("C31", {"k": 4, "ls": [2]}),
    ("T36", {"k": 5, "t": 3}),
    ("T41", {"k": 5, "t": 5}),
    ("T41", {"k": 6, "t": 5}),
    ("T42", {"k": 5, "s": 2, "t": 5}),
    ("T42", {"k": 7, "s": 2, "t": 5}),
]


@pytest.mark.parametrize("theorem,params", VALID, ids=[f"{t}-{i}" for i, (t, _) in enumerate(VALID)])
def test_lower_bound_avoids_both(theorem, params):
    g = lower_bound_for(theorem, params)
    v = formula_value(theorem, params)
    assert g.a == g.b == v - 1
    assert g.is_exact() and g.k == params["k"]
    assert find_rainbow(g, PATTERN_OF[theorem]) is None
    assert find_monochromatic(g, target_for(theorem, params)) is None


@pytest.mark.parametrize("theorem,params,clause", [
    ("T41", {"k": 4, "t": 5}, "t <= k"),
    ("T42", {"k": 4, "s": 2, "t": 5}, "k <= t + s"),
    ("T33", {"k": 5, "ls": [8]}, "l_i >= 10"),
    ("T34", {"k": 4, "ls": [2]}, "value^2 >= k"),
    ("T36", {"k": 4, "t": 3}, "k >= t + 2"),
    ("T31", {"k": 3}, "give r,l"),
])
def test_hypothesis_errors(theorem, params, clause):
    with pytest.raises(HypothesisError, match=clause.replace("+", r"\+").replace("^", r"\^")):
        lower_bound_for(theorem, params)


def test_sporadic():
    assert sporadic_p5("n3").rows == [(1, 3, 2), (2, 4, 1), (3, 1, 4)]
    assert sporadic_p5("n4").k == 4
    with pytest.raises(ValueError):
        sporadic_p5("n5")


def test_block_shapes():
    g = row_blocks(5, 3, [2, 2, 1])
    assert g.rows[4] == (3,) * 5
    assert col_blocks(5, 3, [2, 2, 1]) == g.transpose()
    d = diagonal(4, 4, [2, 1, 1], [1, 1, 2], base_color=1)
    assert d.color_of(0, 0) == 2 and d.color_of(3, 3) == 4 and d.color_of(0, 3) == 1
    with pytest.raises(ValueError):
        row_blocks(4, 3, [2, 2])
    with pytest.raises(ValueError):
        diagonal(3, 2, [3], [3])


@given(st.integers(1, 60), st.integers(1, 12))
def test_even_split(n, parts):
    sizes = even_split(n, parts)
    assert sum(sizes) == n and len(sizes) == parts
    assert max(sizes) - min(sizes) <= 1
    assert sizes == sorted(sizes, reverse=True)
