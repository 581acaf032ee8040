"""Brute-force reference implementations used only by the tests.

Everything here is deliberately naive: direct enumeration over vertex
tuples, orientations, injective maps and group elements.
"""

from itertools import permutations, product

from bgrlab.core import U, V, ColoredBigraph, component_vertex_count


def rainbow_paths(g, edges):
    """All rainbow paths with ``edges`` edges, as vertex tuples of (side, idx)."""
    verts = [(U, i) for i in range(g.a)] + [(V, j) for j in range(g.b)]
    found = []
    for seq in permutations(verts, edges + 1):
        colors = []
        ok = True
        for p, q in zip(seq, seq[1:]):
            if p[0] == q[0]:
                ok = False
                break
            u, v = (p[1], q[1]) if p[0] == U else (q[1], p[1])
            colors.append(g.color_of(u, v))
        if ok and len(set(colors)) == len(colors):
            found.append(seq)
    return found


def has_rainbow(g, pattern_name):
    if pattern_name == "K13":
        for side, size, other in ((U, g.a, g.b), (V, g.b, g.a)):
            for x in range(size):
                for ys in permutations(range(other), 3):
                    cols = [g.color_of(x, y) if side == U else g.color_of(y, x) for y in ys]
                    if len(set(cols)) == 3:
                        return True
        return False
    return bool(rainbow_paths(g, 3 if pattern_name == "P4" else 4))


def contains_subgraph(a, b, host_edges, target):
    """Whether the bipartite host (edge set over U x V) contains ``target``."""
    hv = [(U, i) for i in range(a)] + [(V, j) for j in range(b)]
    tv = []
    tedges = []
    for ci, comp in enumerate(target.components):
        base = len(tv)
        tv.extend((ci, x) for x in range(component_vertex_count(comp)))
        tedges.extend((base + p, base + q) for p, q in comp.local_edges())
    if len(tv) > len(hv):
        return False
    edges = set(host_edges)
    for image in permutations(hv, len(tv)):
        ok = True
        for p, q in tedges:
            x, y = image[p], image[q]
            if x[0] == y[0]:
                ok = False
                break
            e = (x[1], y[1]) if x[0] == U else (y[1], x[1])
            if e not in edges:
                ok = False
                break
        if ok:
            return True
    return False


def has_mono(g, target):
    return any(contains_subgraph(g.a, g.b, g.color_class(c), target) for c in g.used_colors())


def bipartition_stats(target):
    comps = target.components
    total = sum(component_vertex_count(c) for c in comps)
    pairs = []
    for flips in product((0, 1), repeat=len(comps)):
        s = sum(c.footprint[f] for c, f in zip(comps, flips))
        pairs.append((s, total - s))
    valid = [(s, t) for s, t in pairs if s <= t]
    return (min(s for s, _ in valid), max(t for _, t in valid),
            max(s for s, _ in valid), min(t for _, t in valid))


def group_images(g, k):
    """Every image of ``g`` under row/col permutations, transpose and injective recoloring into 1..k."""
    used = sorted(g.used_colors())
    views = [g]
    if g.is_square:
        views.append(g.transpose())
    out = set()
    for h in views:
        for rp in permutations(range(h.a)):
            for cp in permutations(range(h.b)):
                m = h.permute(rp, cp)
                for img in permutations(range(1, k + 1), len(used)):
                    mp = dict(zip(used, img))
                    out.add(bytes(mp[c] for c in m.cells))
    return out


def all_colorings(a, b, k):
    for cells in product(range(1, k + 1), repeat=a * b):
        yield ColoredBigraph(a, b, k, bytes(cells))
