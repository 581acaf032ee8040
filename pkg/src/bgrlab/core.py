"""Colored complete bipartite graphs, target graphs and certificates.

A :class:`ColoredBigraph` is an edge-coloring of ``K_{a,b}`` stored as an
``a x b`` matrix: rows are the left part ``U``, columns the right part ``V``,
entry ``(u, v)`` is the color of edge ``uv``.  Colors are 1-based.

Vertices are addressed as ``(side, index)`` with ``side`` either :data:`U`
(0) or :data:`V` (1) and 0-based indices.
"""

from __future__ import annotations

import enum
import json
import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

U, V = 0, 1
SIDE_NAMES = ("u", "v")


class ColoringFormatError(ValueError):
    """Malformed ``.cbg`` text or JSON coloring."""


@dataclass(frozen=True)
class ColoredBigraph:
    a: int
    b: int
    k: int
    cells: bytes = field(repr=False)

    def __post_init__(self):
        if self.a < 1 or self.b < 1:
            raise ValueError(f"part sizes must be positive, got {self.a}x{self.b}")
        if not 1 <= self.k <= 255:
            raise ValueError(f"color count must be in 1..255, got {self.k}")
        cells = bytes(self.cells)
        object.__setattr__(self, "cells", cells)
        if len(cells) != self.a * self.b:
            raise ValueError("cell count does not match a*b")
        bad = [c for c in set(cells) if not 1 <= c <= self.k]
        if bad:
            raise ValueError(f"color {min(bad)} outside 1..{self.k}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], k: int | None = None) -> "ColoredBigraph":
        rows = [list(r) for r in rows]
        if not rows or not rows[0]:
            raise ValueError("empty matrix")
        b = len(rows[0])
        if any(len(r) != b for r in rows):
            raise ValueError("ragged rows")
        if k is None:
            k = max(max(r) for r in rows)
        return cls(len(rows), b, k, bytes(c for r in rows for c in r))

    @property
    def n(self) -> int:
        if self.a != self.b:
            raise ValueError(f"coloring of K_{{{self.a},{self.b}}} is not square")
        return self.a

    @property
    def is_square(self) -> bool:
        return self.a == self.b

    @property
    def rows(self) -> list[tuple[int, ...]]:
        b = self.b
        return [tuple(self.cells[i * b:(i + 1) * b]) for i in range(self.a)]

    def color_of(self, u: int, v: int) -> int:
        if not (0 <= u < self.a and 0 <= v < self.b):
            raise IndexError(f"edge ({u},{v}) outside K_{{{self.a},{self.b}}}")
        return self.cells[u * self.b + v]

    def _check_vertex(self, side: int, x: int):
        size = self.a if side == U else self.b
        if side not in (U, V) or not 0 <= x < size:
            raise IndexError(f"no vertex {SIDE_NAMES[side] if side in (U, V) else side}{x}")

    def incident_colors(self, side: int, x: int) -> list[int]:
        self._check_vertex(side, x)
        if side == U:
            return list(self.cells[x * self.b:(x + 1) * self.b])
        return list(self.cells[x::self.b])

    def palette(self, side: int, x: int) -> frozenset[int]:
        """The set of colors on edges at vertex ``x`` of ``side``."""
        return frozenset(self.incident_colors(side, x))

    def color_degree(self, side: int, x: int) -> int:
        return len(self.palette(side, x))

    def color_degree_of_set(self, side: int, vertices: Iterable[int]) -> int:
        """Number of distinct colors on edges between ``vertices`` and the other side."""
        vertices = list(vertices)
        if not vertices:
            raise ValueError("vertex set must be nonempty")
        colors = set()
        for x in vertices:
            colors.update(self.incident_colors(side, x))
        return len(colors)

    def min_max_color_degree(self) -> tuple[int, int]:
        degs = [self.color_degree(U, i) for i in range(self.a)]
        degs += [self.color_degree(V, j) for j in range(self.b)]
        return min(degs), max(degs)

    def used_colors(self) -> frozenset[int]:
        return frozenset(self.cells)

    def color_class(self, color: int) -> list[tuple[int, int]]:
        """Edges ``(u, v)`` of the given color, row-major."""
        b = self.b
        return [divmod(p, b) for p, c in enumerate(self.cells) if c == color]

    def is_exact(self) -> bool:
        return len(self.used_colors()) == self.k

    def transpose(self) -> "ColoredBigraph":
        a, b = self.a, self.b
        cells = bytes(self.cells[r * b + c] for c in range(b) for r in range(a))
        return ColoredBigraph(b, a, self.k, cells)

    def relabel(self, mapping: dict[int, int], k: int | None = None) -> "ColoredBigraph":
        cells = bytes(mapping[c] for c in self.cells)
        return ColoredBigraph(self.a, self.b, k if k is not None else self.k, cells)

    def permute(self, row_order: Sequence[int], col_order: Sequence[int]) -> "ColoredBigraph":
        """Matrix whose row ``r`` is old row ``row_order[r]`` (same for columns)."""
        b = self.b
        cells = bytes(self.cells[i * b + j] for i in row_order for j in col_order)
        return ColoredBigraph(len(row_order), len(col_order), self.k, cells)

    def to_dict(self) -> dict:
        return {"a": self.a, "b": self.b, "k": self.k, "colors": [list(r) for r in self.rows]}

    @classmethod
    def from_dict(cls, data: dict) -> "ColoredBigraph":
        try:
            g = cls.from_rows(data["colors"], int(data["k"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise ColoringFormatError(str(exc)) from exc
        if (g.a, g.b) != (data.get("a", g.a), data.get("b", g.b)):
            raise ColoringFormatError("declared sizes do not match the matrix")
        return g


def read_coloring(text: str) -> ColoredBigraph:
    """Parse ``.cbg`` text: header ``a b k`` (or ``n k``), then ``a`` rows.

    Lines starting with ``#`` are comments.  A JSON object is accepted too.
    """
    stripped = text.strip()
    if stripped.startswith("{"):
        try:
            return ColoredBigraph.from_dict(json.loads(stripped))
        except json.JSONDecodeError as exc:
            raise ColoringFormatError(f"bad JSON: {exc}") from exc
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ColoringFormatError("empty input")
    try:
        header = [int(x) for x in lines[0].split()]
    except ValueError:
        raise ColoringFormatError(f"malformed header {lines[0]!r}") from None
    if len(header) == 2:
        a = b = header[0]
        k = header[1]
    elif len(header) == 3:
        a, b, k = header
    else:
        raise ColoringFormatError(f"header must be 'a b k' or 'n k', got {lines[0]!r}")
    if a < 1 or b < 1 or not 1 <= k <= 255:
        raise ColoringFormatError(f"bad header values {header}")
    body = lines[1:]
    if len(body) != a:
        raise ColoringFormatError(f"expected {a} rows, found {len(body)}")
    rows = []
    for ln in body:
        try:
            row = [int(x) for x in ln.split()]
        except ValueError:
            raise ColoringFormatError(f"non-integer entry in row {ln!r}") from None
        if len(row) != b:
            raise ColoringFormatError(f"ragged row {ln!r}: expected {b} entries")
        for c in row:
            if not 1 <= c <= k:
                raise ColoringFormatError(f"entry {c} outside 1..{k}")
        rows.append(row)
    return ColoredBigraph.from_rows(rows, k)


def write_coloring(g: ColoredBigraph) -> str:
    lines = [f"{g.a} {g.b} {g.k}"]
    lines += [" ".join(str(c) for c in row) for row in g.rows]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# rainbow patterns and target graphs


class RainbowPattern(enum.Enum):
    P4 = 1
    P5 = 2
    K13 = 3

    @property
    def edge_count(self) -> int:
        return 3 if self is RainbowPattern.K13 else self.value + 2

    @classmethod
    def parse(cls, text: str) -> "RainbowPattern":
        key = text.strip().upper().replace(",", "").replace("_", "")
        aliases = {"P4": cls.P4, "P5": cls.P5, "K13": cls.K13, "K1,3": cls.K13}
        if key not in aliases:
            raise ValueError(f"unknown rainbow pattern {text!r} (expected P4, P5 or K13)")
        return aliases[key]


@dataclass(frozen=True, order=True)
class PathV:
    """Path on ``length`` vertices."""

    length: int

    def __post_init__(self):
        if self.length < 2:
            raise ValueError("paths need at least 2 vertices")

    @property
    def footprint(self) -> tuple[int, int]:
        return ((self.length + 1) // 2, self.length // 2)

    def local_edges(self) -> list[tuple[int, int]]:
        return [(i, i + 1) for i in range(self.length - 1)]

    def sides(self) -> list[int]:
        return [i % 2 for i in range(self.length)]

    def __str__(self):
        return f"P{self.length}"


@dataclass(frozen=True, order=True)
class EvenCycle:
    """Cycle on ``length`` vertices (even, at least 4)."""

    length: int

    def __post_init__(self):
        if self.length < 4 or self.length % 2:
            raise ValueError(f"C{self.length} is not an even cycle of length >= 4")

    @property
    def footprint(self) -> tuple[int, int]:
        return (self.length // 2, self.length // 2)

    def local_edges(self) -> list[tuple[int, int]]:
        n = self.length
        return [(i, (i + 1) % n) for i in range(n)]

    def sides(self) -> list[int]:
        return [i % 2 for i in range(self.length)]

    def __str__(self):
        return f"C{self.length}"


@dataclass(frozen=True, order=True)
class Star:
    """``K_{1,leaves}``; vertex 0 is the center."""

    leaves: int

    def __post_init__(self):
        if self.leaves < 1:
            raise ValueError("stars need at least one leaf")

    @property
    def footprint(self) -> tuple[int, int]:
        return (1, self.leaves)

    def local_edges(self) -> list[tuple[int, int]]:
        return [(0, i) for i in range(1, self.leaves + 1)]

    def sides(self) -> list[int]:
        return [0] + [1] * self.leaves

    def __str__(self):
        return f"K1,{self.leaves}"


@dataclass(frozen=True, order=True)
class Biclique:
    """``K_{s,t}`` with ``1 <= s <= t``; vertices ``0..s-1`` form the small side."""

    s: int
    t: int

    def __post_init__(self):
        if not 1 <= self.s <= self.t:
            raise ValueError(f"K{self.s},{self.t} needs 1 <= s <= t")

    @property
    def footprint(self) -> tuple[int, int]:
        return (self.s, self.t)

    def local_edges(self) -> list[tuple[int, int]]:
        return [(i, self.s + j) for i in range(self.s) for j in range(self.t)]

    def sides(self) -> list[int]:
        return [0] * self.s + [1] * self.t

    def __str__(self):
        return f"K{self.s},{self.t}"


Component = PathV | EvenCycle | Star | Biclique


def component_vertex_count(c: Component) -> int:
    x, y = c.footprint
    return x + y


def normalize_component(c: Component) -> Component:
    """Representative of the isomorphism class (K1,1=P2, K1,2=P3, K2,2=C4)."""
    if isinstance(c, Biclique) and c.s == 1:
        c = Star(c.t)
    if isinstance(c, Star) and c.leaves <= 2:
        return PathV(c.leaves + 1)
    if isinstance(c, Biclique) and c.s == c.t == 2:
        return EvenCycle(4)
    return c


_KIND_ORDER = {PathV: 0, EvenCycle: 1, Star: 2, Biclique: 3}


@dataclass(frozen=True)
class TargetGraph:
    """Disjoint union of paths, even cycles, stars and bicliques."""

    components: tuple[Component, ...]

    def __post_init__(self):
        comps = tuple(self.components)
        if not comps:
            raise ValueError("target graph needs at least one component")
        object.__setattr__(self, "components", comps)

    @classmethod
    def of(cls, *components: Component) -> "TargetGraph":
        return cls(tuple(components))

    @property
    def vertex_count(self) -> int:
        return sum(component_vertex_count(c) for c in self.components)

    @property
    def edge_count(self) -> int:
        return sum(len(c.local_edges()) for c in self.components)

    def normalized(self) -> "TargetGraph":
        comps = sorted((normalize_component(c) for c in self.components),
                       key=lambda c: (_KIND_ORDER[type(c)], c))
        return TargetGraph(tuple(comps))

    def __str__(self):
        return "+".join(str(c) for c in self.components)


@dataclass(frozen=True)
class Certificate:
    """An explicit rainbow or monochromatic copy inside a coloring.

    ``vertex_map`` sends pattern vertices ``(component, local)`` to host
    vertices ``(side, index)``; ``edges`` are host edges ``(u, v)`` in the
    order of the pattern's edge list.
    """

    kind: str
    graph: str
    edges: tuple[tuple[int, int], ...]
    vertex_map: tuple[tuple[tuple[int, int], tuple[int, int]], ...]
    color: int | None = None

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "graph": self.graph,
            "color": self.color,
            "edges": [list(e) for e in self.edges],
            "vertexMap": [[c, l, s, x] for (c, l), (s, x) in self.vertex_map],
        }


def parse_target(text: str) -> TargetGraph:
    """Parse the target grammar: ``P4+C6+K1,5+K2,3``; ``3xP10`` repeats."""
    comps: list[Component] = []
    text = text.strip()
    if not text:
        raise ValueError("empty target")
    for raw in text.split("+"):
        part = raw.strip().replace(" ", "")
        m = re.fullmatch(r"(?:(\d+)[xX*])?([PCK])(\d+)(?:,(\d+))?", part, re.IGNORECASE)
        if not m:
            raise ValueError(f"cannot parse target component {raw!r}")
        count = int(m.group(1) or 1)
        kind = m.group(2).upper()
        p = int(m.group(3))
        q = m.group(4)
        if count < 1:
            raise ValueError(f"repeat count must be positive in {raw!r}")
        if kind == "P":
            if q is not None:
                raise ValueError(f"paths take one size: {raw!r}")
            comp = PathV(p)
        elif kind == "C":
            if q is not None:
                raise ValueError(f"cycles take one size: {raw!r}")
            if p % 2:
                raise ValueError(f"C{p} is an odd cycle; it is not bipartite and never embeds "
                                 "in a bipartite host")
            comp = EvenCycle(p)
        else:
            if q is None:
                raise ValueError(f"bicliques need two sizes, e.g. K2,3: {raw!r}")
            s, t = sorted((p, int(q)))
            comp = Star(t) if s == 1 else Biclique(s, t)
        comps.extend([comp] * count)
    return TargetGraph(tuple(comps))
