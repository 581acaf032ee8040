"""Extremal colorings: block constructions and the two sporadic P5 colorings.

``lower_bound_for`` builds, for each closed-form value ``v`` in the catalog,
the coloring of ``K_{v-1,v-1}`` that avoids both the rainbow pattern and the
monochromatic target.
"""

from __future__ import annotations

from typing import Sequence

from .catalog import (THEOREM_IDS, HypothesisError, check_hypotheses, formula_value,
                      normalize_params)
from .core import ColoredBigraph

__all__ = ["SPORADIC_P5", "THEOREM_IDS", "HypothesisError", "col_blocks", "diagonal",
           "even_split", "lower_bound_for", "row_blocks", "sporadic_p5"]


SPORADIC_P5 = {
    "n3": ((1, 3, 2),
           (2, 4, 1),
           (3, 1, 4)),
    "n4": ((1, 3, 2, 4),
           (2, 4, 1, 3),
           (3, 1, 4, 2),
           (4, 2, 3, 1)),
}


def sporadic_p5(which: str) -> ColoredBigraph:
    """The rainbow-P5-free sporadic coloring of ``K_{3,3}`` (``n3``) or ``K_{4,4}`` (``n4``)."""
    if which not in SPORADIC_P5:
        raise ValueError(f"unknown sporadic coloring {which!r} (expected n3 or n4)")
    return ColoredBigraph.from_rows(SPORADIC_P5[which], 4)


def _check_sizes(n: int, k: int, sizes: Sequence[int], parts: int, what: str):
    if len(sizes) != parts:
        raise ValueError(f"{what}: expected {parts} part sizes, got {len(sizes)}")
    if any(s < 1 for s in sizes):
        raise ValueError(f"{what}: part sizes must be positive, got {list(sizes)}")
    if sum(sizes) != n:
        raise ValueError(f"{what}: part sizes sum to {sum(sizes)}, expected n={n}")


def even_split(n: int, parts: int) -> list[int]:
    """As equal as possible, remainder to the low-index parts."""
    q, r = divmod(n, parts)
    return [q + 1] * r + [q] * (parts - r)


def row_blocks(n: int, k: int, sizes: Sequence[int]) -> ColoredBigraph:
    """``c(U_i, V) = i`` with ``|U_i| = sizes[i-1]``."""
    _check_sizes(n, k, sizes, k, "row_blocks")
    rows = []
    for color, size in enumerate(sizes, start=1):
        rows.extend([[color] * n] * size)
    return ColoredBigraph.from_rows(rows, k)


def col_blocks(n: int, k: int, sizes: Sequence[int]) -> ColoredBigraph:
    """``c(U, V_i) = i``; the transpose of :func:`row_blocks`."""
    return row_blocks(n, k, sizes).transpose()


def diagonal(n: int, k: int, u_sizes: Sequence[int], v_sizes: Sequence[int],
             base_color: int | None = None) -> ColoredBigraph:
    """``c(U_i, V_i) = i`` for the ``k-1`` diagonal blocks, ``base_color`` elsewhere.

    ``base_color`` defaults to ``k``; the diagonal colors are the other
    ``k-1`` colors in increasing order.
    """
    if k < 3:
        raise ValueError("diagonal construction needs k >= 3 to use every color")
    _check_sizes(n, k, u_sizes, k - 1, "diagonal (U)")
    _check_sizes(n, k, v_sizes, k - 1, "diagonal (V)")
    base = k if base_color is None else base_color
    if not 1 <= base <= k:
        raise ValueError(f"base color {base} outside 1..{k}")
    block_colors = [c for c in range(1, k + 1) if c != base]
    u_part = [i for i, s in enumerate(u_sizes) for _ in range(s)]
    v_part = [i for i, s in enumerate(v_sizes) for _ in range(s)]
    rows = [[block_colors[pu] if pu == pv else base for pv in v_part] for pu in u_part]
    return ColoredBigraph.from_rows(rows, k)


# ---------------------------------------------------------------------------
# lower-bound constructions per theorem


def _block_size(theorem_id: str, params: dict) -> int:
    """Common block size: the lower-bound coloring has ``k * block`` vertices per side."""
    k = int(params["k"])
    return (formula_value(theorem_id, params) - 1) // k


def lower_bound_for(theorem_id: str, params: dict) -> ColoredBigraph:
    """The extremal coloring of ``K_{v-1,v-1}`` for the theorem's value ``v``.

    Raises :class:`HypothesisError` naming the first violated clause.
    """
    check_hypotheses(theorem_id, params)
    p = normalize_params(theorem_id, params)
    k = p["k"]
    value = formula_value(theorem_id, p)
    if value * value < k:
        raise HypothesisError(theorem_id, f"value^2 >= k ({value}^2 < {k})")
    if theorem_id in ("T31", "T32", "T33", "T34", "C31", "T36"):
        block = _block_size(theorem_id, p)
        if theorem_id == "T31":
            return row_blocks(k * block, k, [block] * k)
        return col_blocks(k * block, k, [block] * k)
    n = value - 1
    sizes = even_split(n, k - 1)
    if theorem_id == "T42" and max(sizes) > p["t"] - 1:
        raise HypothesisError("T42", "blocks |U_i| = |V_i| <= t - 1 impossible for these sizes")
    return diagonal(n, k, sizes, sizes)
