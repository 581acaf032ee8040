"""Pure-Python search kernels.

Reference implementation of the hot loops: rainbow detection, canonical
forms and the pruned enumeration DFS.  ``bgrlab._ckernels`` (Cython) mirrors
these functions one-to-one and must return identical results; the package
picks whichever is available at import time (see :mod:`bgrlab.kernels`).

Matrices are flat, row-major byte sequences of length ``a * b``.  A zero
entry means "not yet colored" (partial colorings inside the DFS); colors are
``1..255``.  Vertices are encoded as ints: rows ``0..a-1`` then columns
``a..a+b-1``.
"""

from itertools import permutations, product

P4, P5, K13 = 1, 2, 3
PATH_EDGES = {P4: 3, P5: 4}

DONE, STOPPED, BUDGET = 0, 1, 2


class _BudgetExceeded(Exception):
    pass


def _palette_masks(mat, a, b):
    masks = [0] * (a + b)
    for i in range(a):
        base = i * b
        for j in range(b):
            c = mat[base + j]
            if c:
                bit = 1 << c
                masks[i] |= bit
                masks[a + j] |= bit
    return masks


def path_through(mat, a, b, i, j, length, masks=None):
    """Rainbow path with ``length`` edges that uses edge (i, j), or None.

    The path is returned as a list of encoded vertices.  ``masks`` (palette
    bitmasks per vertex) only enables early cut-offs; results do not depend
    on it.
    """
    c0 = mat[i * b + j]
    if not c0:
        return None
    nv = a + b
    used_v = [False] * nv
    used_v[i] = True
    used_v[a + j] = True
    left = [i]
    right = [a + j]

    def rec(lend, rend, lrem, rrem, cmask):
        if lrem:
            end, rem_here = lend, True
        elif rrem:
            end, rem_here = rend, False
        else:
            return True
        if masks is not None and not (masks[end] & ~cmask):
            return False
        if end < a:
            base = end * b
            for y in range(b):
                c = mat[base + y]
                w = a + y
                if c and not used_v[w] and not (cmask >> c) & 1:
                    used_v[w] = True
                    if rem_here:
                        left.append(w)
                        ok = rec(w, rend, lrem - 1, rrem, cmask | (1 << c))
                        if ok:
                            return True
                        left.pop()
                    else:
                        right.append(w)
                        ok = rec(lend, w, lrem, rrem - 1, cmask | (1 << c))
                        if ok:
                            return True
                        right.pop()
                    used_v[w] = False
        else:
            y = end - a
            for x in range(a):
                c = mat[x * b + y]
                if c and not used_v[x] and not (cmask >> c) & 1:
                    used_v[x] = True
                    if rem_here:
                        left.append(x)
                        ok = rec(x, rend, lrem - 1, rrem, cmask | (1 << c))
                        if ok:
                            return True
                        left.pop()
                    else:
                        right.append(x)
                        ok = rec(lend, x, lrem, rrem - 1, cmask | (1 << c))
                        if ok:
                            return True
                        right.pop()
                    used_v[x] = False
        return False

    for nleft in range(length):
        if rec(i, a + j, nleft, length - 1 - nleft, 1 << c0):
            return left[::-1] + right
    return None


def _star_at(mat, a, b, v):
    seen = []
    leaves = []
    if v < a:
        base = v * b
        for y in range(b):
            c = mat[base + y]
            if c and c not in seen:
                seen.append(c)
                leaves.append(a + y)
                if len(leaves) == 3:
                    return [v] + leaves
    else:
        y = v - a
        for x in range(a):
            c = mat[x * b + y]
            if c and c not in seen:
                seen.append(c)
                leaves.append(x)
                if len(leaves) == 3:
                    return [v] + leaves
    return None


def find_rainbow(mat, a, b, pattern):
    """First rainbow copy of ``pattern`` in a (full or partial) matrix.

    K13 returns ``[center, leaf, leaf, leaf]``; paths return the vertex
    sequence.  Search order: stars by center (rows, then columns), paths by
    the row-major position of an edge they use.
    """
    if pattern == K13:
        for v in range(a + b):
            star = _star_at(mat, a, b, v)
            if star is not None:
                return star
        return None
    length = PATH_EDGES[pattern]
    masks = _palette_masks(mat, a, b)
    for i in range(a):
        for j in range(b):
            if mat[i * b + j]:
                p = path_through(mat, a, b, i, j, length, masks)
                if p is not None:
                    return p
    return None


def rainbow_at(mat, a, b, pos, pattern):
    """True if the partial matrix has a rainbow ``pattern`` through cell ``pos``."""
    i, j = divmod(pos, b)
    if pattern == K13:
        return _star_at(mat, a, b, i) is not None or _star_at(mat, a, b, a + j) is not None
    return path_through(mat, a, b, i, j, PATH_EDGES[pattern]) is not None


# ---------------------------------------------------------------------------
# canonical form


def _row_options(row, cells, cmap, nextlabel):
    """All minimal relabelings of ``row`` under the column partition ``cells``.

    Within a cell, already-labeled colors come first in label order; new
    colors follow by decreasing multiplicity.  New colors of equal
    multiplicity are interchangeable here but not later, so every order is
    returned.
    """
    out = []

    def go(ci, vals, newcells, cm, nl):
        if ci == len(cells):
            out.append((tuple(vals), newcells, cm, nl))
            return
        groups = {}
        for col in cells[ci]:
            groups.setdefault(row[col], []).append(col)
        known = sorted((cm[c], c) for c in groups if cm[c])
        vals2 = list(vals)
        cells2 = list(newcells)
        for lab, c in known:
            vals2.extend([lab] * len(groups[c]))
            cells2.append(groups[c])
        fresh = [c for c in groups if not cm[c]]
        if not fresh:
            go(ci + 1, vals2, cells2, cm, nl)
            return
        mults = sorted({len(groups[c]) for c in fresh}, reverse=True)
        tiers = [sorted(c for c in fresh if len(groups[c]) == m) for m in mults]
        for choice in product(*(permutations(t) for t in tiers)):
            cm2 = list(cm)
            v = list(vals2)
            nc = list(cells2)
            lab = nl
            for tier in choice:
                for c in tier:
                    cm2[c] = lab
                    v.extend([lab] * len(groups[c]))
                    nc.append(groups[c])
                    lab += 1
            go(ci + 1, v, nc, cm2, lab)

    go(0, [], [], cmap, nextlabel)
    return out


def _canon_orient(mat, a, b, transposed, best):
    rows = [tuple(mat[r * b:(r + 1) * b]) for r in range(a)]
    out_rows = []
    order = []

    def search(used, cells, cmap, nl):
        depth = len(out_rows)
        if depth == a:
            if best[0] is None or out_rows < best[0]:
                cols = [c for cell in cells for c in cell]
                best[0] = list(out_rows)
                best[1] = (transposed, tuple(order), tuple(cols), tuple(cmap))
            return
        options = []
        seen = set()
        for r in range(a):
            if (used >> r) & 1 or rows[r] in seen:
                continue
            seen.add(rows[r])
            for vals, ncells, cm, nl2 in _row_options(rows[r], cells, cmap, nl):
                options.append((vals, r, ncells, cm, nl2))
        low = min(o[0] for o in options)
        if best[0] is not None:
            mine = out_rows + [low]
            if mine > best[0][:depth + 1]:
                return
        for vals, r, ncells, cm, nl2 in options:
            if vals != low:
                continue
            out_rows.append(vals)
            order.append(r)
            search(used | (1 << r), ncells, cm, nl2)
            out_rows.pop()
            order.pop()

    search(0, [list(range(b))], [0] * 256, 1)


def canonical_form(mat, a, b, allow_transpose):
    """Lexicographically least relabeling of the matrix over its symmetry group.

    The group is row permutations x column permutations x color relabelings,
    plus transposition when ``allow_transpose`` and the matrix is square.
    Returns ``(cells, transform)`` where ``cells`` is the canonical flat
    matrix as bytes and ``transform = (transposed, row_order, col_order,
    color_map)`` satisfies
    ``cells[r*b + c] == color_map[M'[row_order[r]][col_order[c]]]`` with
    ``M'`` the (possibly transposed) input.
    """
    best = [None, None]
    _canon_orient(mat, a, b, False, best)
    if allow_transpose and a == b:
        t = bytes(mat[r * b + c] for c in range(b) for r in range(a))
        _canon_orient(t, b, a, True, best)
    cells = bytes(v for row in best[0] for v in row)
    return cells, best[1]


# ---------------------------------------------------------------------------
# enumeration DFS


def dfs(a, b, k, pattern, mat, start, stop, lex, canon, require_exact,
        budget, on_leaf, on_partial):
    """Depth-first coloring of cells ``start..stop-1`` in row-major order.

    ``mat`` (a bytearray) carries the prefix in cells ``< start`` and is
    mutated in place; callbacks read it.  Colors are introduced in order
    (a new color is always ``max used + 1``).  With ``lex`` rows and columns
    are kept lexicographically non-decreasing; with ``canon`` only complete
    colorings equal to their canonical form reach ``on_leaf``.
    ``pattern`` (0 = none) prunes partial colorings containing that rainbow
    pattern; ``on_partial(pos)`` returning True prunes as well.
    ``on_leaf()`` returning True stops the search.

    Returns ``(nodes, status)`` with status DONE, STOPPED or BUDGET.
    """
    total = a * b
    square = a == b
    rowcnt = [[0] * (k + 2) for _ in range(a)]
    colcnt = [[0] * (k + 2) for _ in range(b)]
    rowdist = [0] * a
    coldist = [0] * b
    rowtie = [[False] * b for _ in range(a)]
    coltie = [[False] * b for _ in range(a)]
    maxc = [0] * (total + 1)
    nodes = 0
    plen = PATH_EDGES.get(pattern, 0)

    def place(p, c):
        i, j = divmod(p, b)
        if rowcnt[i][c] == 0:
            rowdist[i] += 1
        rowcnt[i][c] += 1
        if colcnt[j][c] == 0:
            coldist[j] += 1
        colcnt[j][c] += 1
        if i:
            rowtie[i][j] = (j == 0 or rowtie[i][j - 1]) and c == mat[p - b]
        if j:
            coltie[i][j] = (i == 0 or coltie[i - 1][j]) and c == mat[p - 1]
        maxc[p + 1] = c if c > maxc[p] else maxc[p]

    def unplace(p, c):
        i, j = divmod(p, b)
        rowcnt[i][c] -= 1
        if rowcnt[i][c] == 0:
            rowdist[i] -= 1
        colcnt[j][c] -= 1
        if colcnt[j][c] == 0:
            coldist[j] -= 1

    for p in range(start):
        place(p, mat[p])
    for p in range(start, total):
        mat[p] = 0

    def leaf():
        if canon and stop == total:
            code, _ = canonical_form(mat, a, b, square)
            if code != bytes(mat):
                return False
        return bool(on_leaf())

    def rec(p):
        nonlocal nodes
        if p == stop:
            return leaf()
        i, j = divmod(p, b)
        top = maxc[p] + 1
        if top > k:
            top = k
        for c in range(1, top + 1):
            if lex:
                if i and (j == 0 or rowtie[i][j - 1]) and c < mat[p - b]:
                    continue
                if j and (i == 0 or coltie[i - 1][j]) and mat[p - 1] > c:
                    continue
            nodes += 1
            if nodes > budget:
                raise _BudgetExceeded
            mat[p] = c
            place(p, c)
            pruned = False
            if require_exact and k - maxc[p + 1] > total - p - 1:
                pruned = True
            elif pattern == K13:
                pruned = rowdist[i] >= 3 or coldist[j] >= 3
            elif plen:
                pruned = path_through(mat, a, b, i, j, plen) is not None
            if not pruned and on_partial is not None:
                pruned = bool(on_partial(p))
            if not pruned and rec(p + 1):
                return True
            unplace(p, c)
            mat[p] = 0
        return False

    try:
        stopped = rec(start)
    except _BudgetExceeded:
        return nodes, BUDGET
    return nodes, (STOPPED if stopped else DONE)
