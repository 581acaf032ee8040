import random
from dataclasses import replace

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_coloring
from oracles import contains_subgraph, has_mono, has_rainbow
from bgrlab.constructions import diagonal, row_blocks, sporadic_p5
from bgrlab.core import (Biclique, ColoredBigraph, EvenCycle, PathV, RainbowPattern, Star,
                         TargetGraph, parse_target)
from bgrlab.patterns import (BipartiteHost, biclique_contains, check_certificate, embed,
                             find_monochromatic, find_rainbow)

SMALL_TARGETS = ["P2", "P3", "P4", "P5", "C4", "K1,3", "P2+P2", "P2+P3", "2xP2+P2", "K2,2+P2"]
COMPONENTS = st.one_of(
    st.builds(PathV, st.integers(2, 7)),
    st.builds(EvenCycle, st.sampled_from([4, 6, 8])),
    st.builds(Star, st.integers(2, 5)),
    st.tuples(st.integers(2, 3), st.integers(3, 4)).map(lambda st_: Biclique(*st_)),
)
targets = st.lists(COMPONENTS, min_size=1, max_size=3).map(lambda cs: TargetGraph.of(*cs))


def test_rainbow_examples():
    assert find_rainbow(ColoredBigraph.from_rows([[1] * 3] * 3), RainbowPattern.P4) is None
    assert find_rainbow(sporadic_p5("n3"), RainbowPattern.P5) is None
    g = sporadic_p5("n3")
    cert = find_rainbow(g, RainbowPattern.P4)
    assert cert is not None and check_certificate(g, cert, RainbowPattern.P4)
    star = ColoredBigraph.from_rows([[1, 2, 3], [1, 1, 1], [1, 1, 1]])
    cert = find_rainbow(star, RainbowPattern.K13)
    assert cert and cert.vertex_map[0][1] == (0, 0)


@pytest.mark.parametrize("pattern", ["P4", "P5", "K13"])
def test_rainbow_matches_oracle(pattern):
    rng = random.Random(pattern)
    p = RainbowPattern.parse(pattern)
    for _ in range(150):
        a, b = rng.randint(1, 3), rng.randint(1, 4)
        g = random_coloring(rng, a, b, rng.randint(1, 5))
        cert = find_rainbow(g, p)
        assert (cert is not None) == has_rainbow(g, pattern)
        if cert:
            assert check_certificate(g, cert, p)


def test_embed_examples():
    assert embed(parse_target("P2+P4"), BipartiteHost.complete(3, 3)) is not None
    assert embed(parse_target("K1,5"), BipartiteHost.complete(4, 4)) is None
    assert embed(parse_target("C6"), BipartiteHost.complete(2, 4)) is None
    c6 = BipartiteHost.from_edges(3, 3, [(0, 0), (0, 1), (1, 1), (1, 2), (2, 2), (2, 0)])
    assert embed(parse_target("C6"), c6) is not None
    assert embed(parse_target("P2+P2"), BipartiteHost.from_edges(2, 2, [(0, 0), (0, 1)])) is None


@pytest.mark.parametrize("text", SMALL_TARGETS)
def test_embed_matches_oracle(text):
    h = parse_target(text)
    rng = random.Random(text)
    for _ in range(40):
        a, b = rng.randint(1, 4), rng.randint(1, 4)
        edges = [(u, v) for u in range(a) for v in range(b) if rng.random() < 0.6]
        got = embed(h, BipartiteHost.from_edges(a, b, edges))
        assert (got is not None) == contains_subgraph(a, b, edges, h)


@pytest.mark.parametrize("text", ["P2+P4", "C6", "K1,5", "K2,5", "P3+P3"])
def test_mono_matches_oracle(text):
    h = parse_target(text)
    rng = random.Random(text)
    for _ in range(25):
        g = random_coloring(rng, 3, 3, rng.randint(1, 3))
        cert = find_monochromatic(g, h)
        assert (cert is not None) == has_mono(g, h)
        if cert:
            assert check_certificate(g, cert, h)


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 6), st.integers(1, 6), targets)
def test_embed_agrees_with_subset_sum(a, b, h):
    if h.vertex_count > 8:
        h = TargetGraph.of(h.components[0])
    assert (embed(h, BipartiteHost.complete(a, b)) is not None) == biclique_contains(a, b, h)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 6), st.integers(1, 6), targets)
def test_biclique_monotone_and_symmetric(a, b, h):
    if biclique_contains(a, b, h):
        assert biclique_contains(a + 1, b, h) and biclique_contains(a, b + 1, h)
    assert biclique_contains(a, b, h) == biclique_contains(b, a, h)


@settings(max_examples=60, deadline=None)
@given(st.randoms(use_true_random=False))
def test_mono_monotone_under_added_edges(rnd):
    h = parse_target(rnd.choice(["P4", "P2+P3", "C4", "K1,3"]))
    a, b = rnd.randint(2, 4), rnd.randint(2, 4)
    edges = [(u, v) for u in range(a) for v in range(b) if rnd.random() < 0.4]
    more = edges + [(u, v) for u in range(a) for v in range(b) if rnd.random() < 0.3]
    if embed(h, BipartiteHost.from_edges(a, b, edges)) is not None:
        assert embed(h, BipartiteHost.from_edges(a, b, more)) is not None


def test_block_constructions_avoid_mono():
    assert find_monochromatic(row_blocks(6, 3, [2, 2, 2]), parse_target("P2+P4")) is None
    assert find_monochromatic(diagonal(5, 5, [2, 1, 1, 1], [2, 1, 1, 1]), parse_target("K1,5")) is None


def test_certificate_tampering():
    g = sporadic_p5("n3")
    cert = find_rainbow(g, RainbowPattern.P4)
    assert not check_certificate(g, cert, RainbowPattern.P5)
    assert not check_certificate(g, cert, parse_target("P4"))
    bad_edges = replace(cert, edges=cert.edges[:-1] + ((0, 0),))
    assert not check_certificate(g, bad_edges, RainbowPattern.P4)
    vm = list(cert.vertex_map)
    vm[0] = (vm[0][0], vm[1][1])
    assert not check_certificate(g, replace(cert, vertex_map=tuple(vm)), RainbowPattern.P4)
    mono = ColoredBigraph.from_rows([[1, 1], [2, 1]])
    mc = find_monochromatic(mono, parse_target("P3"))
    assert mc.color == 1 and check_certificate(mono, mc, parse_target("P3"))
    assert not check_certificate(mono, replace(mc, color=2), parse_target("P3"))
