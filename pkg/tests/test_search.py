import random

import pytest

from conftest import random_coloring
from oracles import all_colorings, group_images
from bgrlab.constructions import row_blocks, sporadic_p5
from bgrlab.core import ColoredBigraph, RainbowPattern, parse_target
from bgrlab.patterns import find_monochromatic, find_rainbow
from bgrlab.search import (BudgetExceeded, MonoPruner, canonical_form, canonical_representative,
                           check_structure_theorem, enumerate_colorings, exists_avoiding,
                           randomized_adversary, verify_bgr_point)

P4, P5, K13 = RainbowPattern.P4, RainbowPattern.P5, RainbowPattern.K13


def _scramble(g, rng):
    rp = list(range(g.a))
    cp = list(range(g.b))
    rng.shuffle(rp)
    rng.shuffle(cp)
    colors = sorted(g.used_colors())
    top = max(g.k, len(colors)) + 2
    image = rng.sample(range(1, top + 1), len(colors))
    h = g.permute(rp, cp).relabel(dict(zip(colors, image)), top)
    return h.transpose() if g.is_square and rng.random() < 0.5 else h


def test_canonical_invariance():
    rng = random.Random(7)
    for _ in range(500):
        n = rng.randint(1, 5)
        g = random_coloring(rng, n, rng.choice([n, rng.randint(1, 5)]), rng.randint(1, 5))
        assert canonical_form(_scramble(g, rng)) == canonical_form(g)


def test_canonical_separates_orbits():
    rng = random.Random(11)
    for _ in range(60):
        g = random_coloring(rng, 3, 3, 3)
        h = random_coloring(rng, 3, 3, 3)
        same = h.cells in group_images(g, 3)
        assert (canonical_form(g) == canonical_form(h)) == same


def test_canonical_representative():
    g = sporadic_p5("n3")
    rep = canonical_representative(g)
    assert canonical_form(rep) == canonical_form(g)
    with pytest.raises(ValueError):
        canonical_form(ColoredBigraph(9, 1, 1, bytes(9)))


@pytest.mark.parametrize("n,k", [(1, 3), (2, 2), (2, 3), (3, 2), (3, 3)])
def test_orbit_reconciliation(n, k):
    reps = []
    enumerate_colorings(n, k, visitor=lambda g: reps.append(g))
    total = sum(len(group_images(g, k)) for g in reps)
    assert total == k ** (n * n)
    # and the visited set is one per orbit
    seen = {canonical_form(g) for g in all_colorings(n, n, k)}
    assert len(reps) == len(seen)


def test_enumeration_counts():
    # 2x2 matrices up to symmetry with at most two colors
    st = enumerate_colorings(2, 2)
    assert st.visited == 4 and not st.stopped
    assert enumerate_colorings(2, 2, require_exact=True).visited == 3
    st = enumerate_colorings(3, 3, visitor=lambda g: True)
    assert st.stopped and st.visited == 1
    with pytest.raises(BudgetExceeded):
        enumerate_colorings(3, 3, budget=10)
    with pytest.raises(ValueError):
        enumerate_colorings(6, 2)


def test_pattern_pruning_matches_filter():
    reps = []
    enumerate_colorings(3, 4, pattern=P4, visitor=lambda g: reps.append(g))
    every = []
    enumerate_colorings(3, 4, visitor=lambda g: every.append(g))
    assert {canonical_form(g) for g in reps} == {canonical_form(g) for g in every
                                                  if find_rainbow(g, P4) is None}


def _naive_exists(n, k, rb, h):
    for g in all_colorings(n, n, k):
        if not g.is_exact():
            continue
        if rb is not None and find_rainbow(g, rb) is not None:
            continue
        if h is not None and find_monochromatic(g, h) is not None:
            continue
        return True
    return False


@pytest.mark.parametrize("n,k,rb,h", [
    (2, 2, None, "P3"), (2, 2, None, "C4"), (3, 2, None, "P4"), (3, 2, None, "P2+P2"),
    (3, 3, P4, "P2+P4"), (3, 3, K13, "K1,3"), (3, 3, P5, "C4"), (2, 3, P4, "P2"),
    (3, 3, None, "C6"),
])
def test_pruned_matches_naive(n, k, rb, h):
    target = parse_target(h)
    res = exists_avoiding(n, k, rb, target)
    assert (res.status == "found") == _naive_exists(n, k, rb, target)
    assert res.status != "inconclusive"


def test_avoidance_examples():
    assert exists_avoiding(3, 2, forbid_mono=parse_target("P4")).status == "absent"
    r = exists_avoiding(2, 2, forbid_mono=parse_target("P4"))
    assert r.status == "found" and find_monochromatic(r.coloring, parse_target("P4")) is None
    assert exists_avoiding(3, 4, K13, budget=5).status == "inconclusive"


def test_mono_pruner_star_path():
    pr = MonoPruner(3, 3, parse_target("K1,3"))
    mat = bytearray([2, 2, 2, 0, 0, 0, 0, 0, 0])
    assert pr(mat, 2)
    mat = bytearray([2, 1, 0, 2, 0, 0, 2, 0, 0])
    assert pr(mat, 6)
    assert not pr(bytearray([2, 1, 2, 1, 0, 0, 0, 0, 0]), 3)


def test_structure_small():
    rep = check_structure_theorem("T13", 2, 4)
    assert rep.answer == "holds" and rep.method == "exhaustive"
    rep = check_structure_theorem("T21", 3, 5)
    assert rep.answer == "holds"
    assert rep.stats["cases"]["NA"] > 0 and rep.stats["cases"]["d"] > 0
    rep = check_structure_theorem("T14", 3, 5)
    assert rep.stats["cases"]["d"] == 1
    assert check_structure_theorem("T21", 3, 5, budget=100).answer == "inconclusive"


def test_jobs_do_not_change_results():
    one = check_structure_theorem("T21", 3, 4, jobs=1).to_dict(include_timing=False)
    two = check_structure_theorem("T21", 3, 4, jobs=2).to_dict(include_timing=False)
    one["question"].pop("jobs", None)
    two["question"].pop("jobs", None)
    assert one == two
    a = exists_avoiding(3, 3, P4, parse_target("P2+P4"), jobs=1)
    b = exists_avoiding(3, 3, P4, parse_target("P2+P4"), jobs=2)
    assert a.to_dict() == b.to_dict()


def test_randomized_determinism():
    h = parse_target("K1,5")
    r1 = randomized_adversary(K13, h, 5, 6, 150, seed=3)
    r2 = randomized_adversary(K13, h, 5, 6, 150, seed=3)
    assert r1 == r2 and not r1["avoiding"]
    v1 = verify_bgr_point(K13, h, 5, method="randomized", samples=100, seed=1).to_dict(False)
    v2 = verify_bgr_point(K13, h, 5, method="randomized", samples=100, seed=1).to_dict(False)
    assert v1 == v2 and v1["answer"] == "holds"


def test_randomized_detects_wrong_value():
    # at N = v - 1 the construction itself avoids both, and the sampler finds such colorings
    adv = randomized_adversary(P4, parse_target("P2+P4"), 3, 6, 300, seed=0)
    assert adv["avoiding"]


def test_verify_bgr_exhaustive():
    rep = verify_bgr_point(P4, parse_target("P2+P4"), 3, expected=7, method="exhaustive")
    assert rep.answer == "holds"
    assert [c["check"] for c in rep.checks] == ["construction", "upper", "upper", "value"]
    bad = verify_bgr_point(P4, parse_target("P2+P4"), 3, expected=8, method="exhaustive")
    assert bad.answer != "holds"
    with pytest.raises(ValueError):
        verify_bgr_point(P5, parse_target("P10"), 3)


@pytest.mark.parametrize("n", [2, 3])
def test_restriction_spot_check(n):
    # restricting a rainbow-free coloring to a sub-biclique keeps it rainbow-free
    g = row_blocks(6, 3, [2, 2, 2])
    sub = ColoredBigraph.from_rows([row[:n] for row in g.rows[:n]])
    assert find_rainbow(sub, P4) is None
