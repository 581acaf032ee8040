"""Rainbow and monochromatic subgraph detection.

``embed`` is a complete backtracking search for a :class:`TargetGraph` in an
arbitrary bipartite host.  It prunes with two sound rules only: interchangeable
(twin) host vertices are tried once per class, and a branch is cut when the
free host vertices cannot cover the remaining target vertices per side.
``biclique_contains`` is the analytic counterpart for complete bipartite
hosts; the test-suite checks the two against each other.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import kernels
from .core import (U, V, Biclique, Certificate, ColoredBigraph, PathV, RainbowPattern, Star,
                   TargetGraph, component_vertex_count)

_KERNEL_CODE = {RainbowPattern.P4: kernels.P4, RainbowPattern.P5: kernels.P5,
                RainbowPattern.K13: kernels.K13}


def pattern_graph(p: RainbowPattern) -> TargetGraph:
    return TargetGraph.of({RainbowPattern.P4: PathV(4), RainbowPattern.P5: PathV(5),
                           RainbowPattern.K13: Star(3)}[p])


@dataclass
class BipartiteHost:
    """Bipartite graph on sides A (``a`` vertices) and B (``b`` vertices).

    ``adj_a[i]`` is a bitmask over B, ``adj_b[j]`` a bitmask over A.
    """

    a: int
    b: int
    adj_a: list[int]
    adj_b: list[int]

    @classmethod
    def from_edges(cls, a: int, b: int, edges) -> "BipartiteHost":
        adj_a = [0] * a
        adj_b = [0] * b
        for i, j in edges:
            adj_a[i] |= 1 << j
            adj_b[j] |= 1 << i
        return cls(a, b, adj_a, adj_b)

    @classmethod
    def complete(cls, a: int, b: int) -> "BipartiteHost":
        return cls(a, b, [(1 << b) - 1] * a, [(1 << a) - 1] * b)

    def neighbors(self, side: int, x: int) -> int:
        return self.adj_a[x] if side == U else self.adj_b[x]


def _component_order(comp) -> list[int]:
    """Local vertex order in which every vertex after the first touches an earlier one."""
    n = component_vertex_count(comp)
    if not isinstance(comp, Biclique):
        return list(range(n))
    # one small-side vertex, the whole big side, then the rest
    s = comp.s
    return [0] + list(range(s, n)) + list(range(1, s))


def embed(target: TargetGraph, host: BipartiteHost) -> dict | None:
    """Embed ``target`` into ``host`` with vertex-disjoint components.

    Returns ``{(component, local_vertex): (side, index)}`` or None.  The
    search is exhaustive: None means no embedding exists.
    """
    comps = sorted(range(len(target.components)),
                   key=lambda ci: -component_vertex_count(target.components[ci]))
    plans = []
    for ci in comps:
        comp = target.components[ci]
        order = _component_order(comp)
        pos = {v: idx for idx, v in enumerate(order)}
        earlier = [[] for _ in order]
        for p, q in comp.local_edges():
            if pos[p] < pos[q]:
                earlier[pos[q]].append(pos[p])
            else:
                earlier[pos[p]].append(pos[q])
        sides = comp.sides()
        fx, fy = comp.footprint
        plans.append((ci, order, earlier, [sides[v] for v in order], min(fx, fy), fx + fy))

    # suffix sums of (min side, total) over later components
    later_min = [0] * (len(plans) + 1)
    later_tot = [0] * (len(plans) + 1)
    for idx in range(len(plans) - 1, -1, -1):
        later_min[idx] = later_min[idx + 1] + plans[idx][4]
        later_tot[idx] = later_tot[idx + 1] + plans[idx][5]

    live = ([i for i in range(host.a) if host.adj_a[i]], [j for j in range(host.b) if host.adj_b[j]])
    free = [len(live[0]), len(live[1])]
    used = [0, 0]
    images: list[list[tuple[int, int]]] = [[] for _ in plans]

    def feasible(pi, need):
        if free[0] < need[0] + later_min[pi + 1] or free[1] < need[1] + later_min[pi + 1]:
            return False
        return free[0] + free[1] >= need[0] + need[1] + later_tot[pi + 1]

    def place_component(pi) -> bool:
        if pi == len(plans):
            return True
        _, order, earlier, lsides, _, _ = plans[pi]
        img = images[pi]
        n = len(order)

        for first_side in (U, V):
            # host side of local vertex with local side ls
            need = [0, 0]
            for ls in lsides:
                need[first_side ^ ls ^ lsides[0]] += 1
            if not feasible(pi, need):
                continue
            if extend(pi, 0, first_side, need, order, earlier, lsides, img, n):
                return True
        return False

    def extend(pi, idx, first_side, need, order, earlier, lsides, img, n) -> bool:
        if idx == n:
            return place_component(pi + 1)
        side = first_side ^ lsides[idx] ^ lsides[0]
        if earlier[idx]:
            mask = -1
            for e in earlier[idx]:
                s, x = img[e]
                mask &= host.neighbors(s, x)
            mask &= ~used[side]
            cands = []
            while mask:
                low = mask & -mask
                cands.append(low.bit_length() - 1)
                mask ^= low
        else:
            cands = [x for x in live[side] if not (used[side] >> x) & 1]
        tried = set()
        for x in cands:
            cls = host.neighbors(side, x)
            if cls in tried:
                continue
            tried.add(cls)
            used[side] |= 1 << x
            free[side] -= 1
            need[side] -= 1
            img.append((side, x))
            if feasible(pi, need) and extend(pi, idx + 1, first_side, need, order, earlier,
                                             lsides, img, n):
                return True
            img.pop()
            need[side] += 1
            free[side] += 1
            used[side] &= ~(1 << x)
        return False

    if sum(p[5] for p in plans) > free[0] + free[1]:
        return None
    if not place_component(0):
        return None
    result = {}
    for (ci, order, *_), img in zip(plans, images):
        for local, hv in zip(order, img):
            result[(ci, local)] = hv
    return result


def biclique_contains(a: int, b: int, target: TargetGraph) -> bool:
    """Whether ``K_{a,b}`` contains ``target``, by subset-sum over orientations.

    Each component occupies ``(x, y)`` vertices on the two sides (either
    orientation); a copy fits iff some orientation choice keeps both sums
    within ``a`` and ``b``.
    """
    if a < 0 or b < 0:
        raise ValueError("part sizes must be non-negative")
    total = target.vertex_count
    reach = {0}
    for comp in target.components:
        x, y = comp.footprint
        reach = {r + x for r in reach} | {r + y for r in reach}
    return any(r <= a and total - r <= b for r in reach)


# ---------------------------------------------------------------------------
# detectors on colorings


def _decode(g: ColoredBigraph, x: int) -> tuple[int, int]:
    return (U, x) if x < g.a else (V, x - g.a)


def _host_edge(p: tuple[int, int], q: tuple[int, int]) -> tuple[int, int]:
    return (p[1], q[1]) if p[0] == U else (q[1], p[1])


def _certificate(kind, graph_name, target, vertex_map, color=None) -> Certificate:
    edges = []
    for ci, comp in enumerate(target.components):
        for p, q in comp.local_edges():
            edges.append(_host_edge(vertex_map[(ci, p)], vertex_map[(ci, q)]))
    vm = tuple(sorted(vertex_map.items()))
    return Certificate(kind, graph_name, tuple(edges), vm, color)


def find_rainbow(g: ColoredBigraph, p: RainbowPattern) -> Certificate | None:
    """A rainbow copy of ``p`` in ``g``, or None after exhaustive search."""
    found = kernels.find_rainbow(g.cells, g.a, g.b, _KERNEL_CODE[p])
    if found is None:
        return None
    vm = {(0, i): _decode(g, x) for i, x in enumerate(found)}
    return _certificate("rainbow", p.name, pattern_graph(p), vm)


def color_host(g: ColoredBigraph, color: int) -> BipartiteHost:
    return BipartiteHost.from_edges(g.a, g.b, g.color_class(color))


def find_monochromatic(g: ColoredBigraph, target: TargetGraph) -> Certificate | None:
    """First color (in increasing order) whose class contains ``target``."""
    need = target.edge_count
    for color in sorted(g.used_colors()):
        edges = g.color_class(color)
        if len(edges) < need:
            continue
        vm = embed(target, BipartiteHost.from_edges(g.a, g.b, edges))
        if vm is not None:
            return _certificate("monochromatic", str(target), target, vm, color)
    return None


def check_certificate(g: ColoredBigraph, cert: Certificate,
                      what: RainbowPattern | TargetGraph) -> bool:
    """Re-check a certificate against ``g`` in time linear in its size."""
    target = pattern_graph(what) if isinstance(what, RainbowPattern) else what
    expected_kind = "rainbow" if isinstance(what, RainbowPattern) else "monochromatic"
    if cert.kind != expected_kind:
        return False
    vm = dict(cert.vertex_map)
    if len(vm) != len(cert.vertex_map):
        return False
    wanted = {(ci, v) for ci, comp in enumerate(target.components)
              for v in range(component_vertex_count(comp))}
    if set(vm) != wanted:
        return False
    images = list(vm.values())
    if len(set(images)) != len(images):
        return False
    for side, x in images:
        if side not in (U, V) or not 0 <= x < (g.a if side == U else g.b):
            return False
    edges = []
    for ci, comp in enumerate(target.components):
        for p, q in comp.local_edges():
            hp, hq = vm[(ci, p)], vm[(ci, q)]
            if hp[0] == hq[0]:
                return False
            edges.append(_host_edge(hp, hq))
    if tuple(edges) != tuple(tuple(e) for e in cert.edges):
        return False
    colors = [g.color_of(u, v) for u, v in edges]
    if expected_kind == "rainbow":
        return len(set(colors)) == len(colors)
    return cert.color is not None and all(c == cert.color for c in colors)
