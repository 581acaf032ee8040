import random
from dataclasses import replace

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import has_rainbow
from bgrlab.constructions import diagonal, row_blocks, sporadic_p5
from bgrlab.core import ColoredBigraph, read_coloring
from bgrlab.patterns import check_certificate
from bgrlab.structure import (THEOREMS, StructureWitness, WitnessError, classify,
                              classify_k13_free, classify_p4_free, classify_p5_free,
                              verify_witness)

T21_D = ColoredBigraph.from_rows([[1, 1, 2], [2, 3, 2], [1, 1, 4]])
T21_E = read_coloring("4 4 4\n1 1 4 4\n1 1 4 4\n2 3 2 3\n2 3 2 3\n")
PATTERN_NAME = {"T13": "P4", "T14": "P5", "T21": "K13"}


def _scramble(g, rng):
    rp = list(range(g.a))
    cp = list(range(g.b))
    rng.shuffle(rp)
    rng.shuffle(cp)
    colors = sorted(g.used_colors())
    shuffled = colors[:]
    rng.shuffle(shuffled)
    h = g.permute(rp, cp).relabel(dict(zip(colors, shuffled)))
    return h.transpose() if rng.random() < 0.5 else h


def test_examples():
    assert classify_k13_free(diagonal(6, 5, [2, 2, 1, 1], [2, 2, 1, 1])).case == "b"
    assert classify_k13_free(T21_D).case == "d"
    assert classify_k13_free(T21_E).case == "e"
    assert classify_p5_free(sporadic_p5("n3")).case == "d"
    assert classify_p5_free(sporadic_p5("n4")).case == "e"
    assert classify_p4_free(row_blocks(6, 3, [2, 2, 2])).case == "b"
    assert classify_p4_free(ColoredBigraph.from_rows([[1, 2], [2, 1]])).case == "a"


def test_rainbow_gives_certificate():
    g = ColoredBigraph.from_rows([[1, 2, 3], [3, 1, 2], [2, 3, 1]])
    c = classify(g, "T13")
    assert c.case == "NA" and c.witness is None
    assert check_certificate(g, c.certificate, THEOREMS["T13"])


def test_input_errors():
    with pytest.raises(ValueError):
        classify(ColoredBigraph.from_rows([[1, 2, 2]]), "T13")
    with pytest.raises(ValueError):
        classify(ColoredBigraph(3, 3, 4, bytes([1] * 9)), "T21")
    with pytest.raises(ValueError):
        classify(T21_D, "T99")


def test_witness_round_trip_and_verify():
    for g, th in ((T21_D, "T21"), (T21_E, "T21"), (sporadic_p5("n4"), "T14"),
                  (diagonal(6, 5, [2, 2, 1, 1], [2, 2, 1, 1]), "T21")):
        w = classify(g, th).witness
        assert verify_witness(g, w)
        assert StructureWitness.from_dict(w.to_dict()) == w


def test_swapped_witness_rejected():
    g = diagonal(6, 5, [2, 2, 1, 1], [2, 2, 1, 1])
    w = classify(g, "T21").witness
    parts = [list(p) for p in w.u_partition]
    big = next(i for i, p in enumerate(parts) if len(p) == 2)
    other = next(i for i, p in enumerate(parts) if p and i != big)
    parts[big][0], parts[other][0] = parts[other][0], parts[big][0]
    assert not verify_witness(g, replace(w, u_partition=parts))
    e = classify(T21_E, "T21").witness
    swapped = dict(e.color_assignment)
    swapped["U1"], swapped["U2"] = swapped["U2"], swapped["U1"]
    assert not verify_witness(T21_E, replace(e, color_assignment=swapped))


def test_malformed_witness():
    w = classify(T21_E, "T21").witness
    with pytest.raises(WitnessError):
        verify_witness(T21_E, replace(w, case="z"))
    with pytest.raises(WitnessError):
        verify_witness(T21_E, replace(w, color_map={1: 1, 2: 1, 3: 3, 4: 4}))
    with pytest.raises(WitnessError):
        verify_witness(T21_E, replace(w, u_partition=[[0, 1], [1, 2, 3]]))


@pytest.mark.parametrize("theorem", sorted(THEOREMS))
def test_case_invariant_under_symmetry(theorem):
    rng = random.Random(theorem)
    samples = [T21_D, T21_E, sporadic_p5("n3"), sporadic_p5("n4"),
               diagonal(6, 5, [2, 2, 1, 1], [2, 2, 1, 1]), row_blocks(6, 3, [2, 2, 2])]
    for g in samples:
        base = classify(g, theorem).case
        for _ in range(5):
            h = _scramble(g, rng)
            c = classify(h, theorem)
            assert c.case == base
            if c.witness:
                assert verify_witness(h, c.witness)


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(sorted(THEOREMS)), st.integers(3, 4), st.integers(1, 5), st.randoms(use_true_random=False))
def test_dichotomy(theorem, n, k, rnd):
    # either a checkable rainbow copy or a witness that verifies, never neither
    cells = list(range(1, k + 1)) + [rnd.randint(1, k) for _ in range(n * n - k)]
    if len(cells) != n * n:
        return
    rnd.shuffle(cells)
    g = ColoredBigraph(n, n, k, bytes(cells))
    c = classify(g, theorem)
    assert c.case != "none"
    if c.case == "NA":
        assert check_certificate(g, c.certificate, THEOREMS[theorem])
    else:
        assert verify_witness(g, c.witness)
        if n == 3:
            assert not has_rainbow(g, PATTERN_NAME[theorem])


def test_low_color_structures_are_free():
    # small colour counts land in case (a)
    g = ColoredBigraph.from_rows([[1, 2, 1], [2, 2, 1], [1, 1, 1]])
    assert classify(g, "T21").case == "a"
    assert classify(g, "T13").case in ("a", "NA")
