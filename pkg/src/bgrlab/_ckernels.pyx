# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled search kernels; mirrors ``bgrlab._pykernels`` exactly."""

from itertools import permutations, product

from libc.stdlib cimport malloc, calloc, free
from libc.string cimport memset

DEF MAXV = 512

cdef int P4 = 1
cdef int P5 = 2
cdef int K13 = 3

DONE, STOPPED, BUDGET = 0, 1, 2


cdef struct PathCtx:
    const unsigned char *mat
    int a
    int b
    unsigned long long *masks    # NULL disables palette cut-offs
    unsigned char *used_v
    int *left
    int nleft
    int *right
    int nright


cdef inline int _bit(unsigned long long *m, int c) nogil:
    return (m[c >> 6] >> (c & 63)) & 1


cdef int _rec(PathCtx *ctx, int lend, int rend, int lrem, int rrem,
              unsigned long long *cmask) nogil:
    cdef int end, here_left, y, x, c, w, base, q, ok
    cdef int a = ctx.a
    cdef int b = ctx.b
    if lrem:
        end = lend
        here_left = 1
    elif rrem:
        end = rend
        here_left = 0
    else:
        return 1
    if ctx.masks != NULL:
        ok = 0
        for q in range(4):
            if ctx.masks[end * 4 + q] & ~cmask[q]:
                ok = 1
                break
        if not ok:
            return 0
    if end < a:
        base = end * b
        for y in range(b):
            c = ctx.mat[base + y]
            w = a + y
            if c and not ctx.used_v[w] and not _bit(cmask, c):
                ctx.used_v[w] = 1
                cmask[c >> 6] |= (1ULL << (c & 63))
                if here_left:
                    ctx.left[ctx.nleft] = w
                    ctx.nleft += 1
                    if _rec(ctx, w, rend, lrem - 1, rrem, cmask):
                        return 1
                    ctx.nleft -= 1
                else:
                    ctx.right[ctx.nright] = w
                    ctx.nright += 1
                    if _rec(ctx, lend, w, lrem, rrem - 1, cmask):
                        return 1
                    ctx.nright -= 1
                cmask[c >> 6] &= ~(1ULL << (c & 63))
                ctx.used_v[w] = 0
    else:
        y = end - a
        for x in range(a):
            c = ctx.mat[x * b + y]
            if c and not ctx.used_v[x] and not _bit(cmask, c):
                ctx.used_v[x] = 1
                cmask[c >> 6] |= (1ULL << (c & 63))
                if here_left:
                    ctx.left[ctx.nleft] = x
                    ctx.nleft += 1
                    if _rec(ctx, x, rend, lrem - 1, rrem, cmask):
                        return 1
                    ctx.nleft -= 1
                else:
                    ctx.right[ctx.nright] = x
                    ctx.nright += 1
                    if _rec(ctx, lend, x, lrem, rrem - 1, cmask):
                        return 1
                    ctx.nright -= 1
                cmask[c >> 6] &= ~(1ULL << (c & 63))
                ctx.used_v[x] = 0
    return 0


cdef int _path_through(const unsigned char *mat, int a, int b, int i, int j,
                       int length, unsigned long long *masks,
                       int *out) nogil:
    """Writes the path into ``out`` and returns its vertex count, or 0."""
    cdef unsigned char used_v[MAXV]
    cdef int left[8]
    cdef int right[8]
    cdef unsigned long long cmask[4]
    cdef PathCtx ctx
    cdef int c0 = mat[i * b + j]
    cdef int nl, q, n
    if not c0:
        return 0
    memset(used_v, 0, a + b)
    used_v[i] = 1
    used_v[a + j] = 1
    ctx.mat = mat
    ctx.a = a
    ctx.b = b
    ctx.masks = masks
    ctx.used_v = used_v
    ctx.left = left
    ctx.right = right
    for nl in range(length):
        ctx.left[0] = i
        ctx.nleft = 1
        ctx.right[0] = a + j
        ctx.nright = 1
        for q in range(4):
            cmask[q] = 0
        cmask[c0 >> 6] |= (1ULL << (c0 & 63))
        if _rec(&ctx, i, a + j, nl, length - 1 - nl, cmask):
            n = 0
            for q in range(ctx.nleft - 1, -1, -1):
                out[n] = ctx.left[q]
                n += 1
            for q in range(ctx.nright):
                out[n] = ctx.right[q]
                n += 1
            return n
    return 0


cdef int _star_at(const unsigned char *mat, int a, int b, int v, int *out) nogil:
    cdef int seen[3]
    cdef int nseen = 0
    cdef int x, y, c, q, dup
    out[0] = v
    if v < a:
        for y in range(b):
            c = mat[v * b + y]
            if not c:
                continue
            dup = 0
            for q in range(nseen):
                if seen[q] == c:
                    dup = 1
            if not dup:
                seen[nseen] = c
                nseen += 1
                out[nseen] = a + y
                if nseen == 3:
                    return 4
    else:
        y = v - a
        for x in range(a):
            c = mat[x * b + y]
            if not c:
                continue
            dup = 0
            for q in range(nseen):
                if seen[q] == c:
                    dup = 1
            if not dup:
                seen[nseen] = c
                nseen += 1
                out[nseen] = x
                if nseen == 3:
                    return 4
    return 0


def path_through(const unsigned char[:] mat, int a, int b, int i, int j,
                 int length, masks=None):
    cdef int out[8]
    cdef int n
    if a + b > MAXV:
        raise ValueError("matrix too large for kernel")
    n = _path_through(&mat[0], a, b, i, j, length, NULL, out)
    if n == 0:
        return None
    return [out[q] for q in range(n)]


def find_rainbow(const unsigned char[:] mat, int a, int b, int pattern):
    cdef int out[8]
    cdef int n = 0
    cdef int v, i, j, c, length
    cdef unsigned long long *masks
    if a + b > MAXV:
        raise ValueError("matrix too large for kernel")
    if a == 0 or b == 0:
        return None
    if pattern == K13:
        for v in range(a + b):
            n = _star_at(&mat[0], a, b, v, out)
            if n:
                return [out[q] for q in range(n)]
        return None
    length = 3 if pattern == P4 else 4
    masks = <unsigned long long *> calloc((a + b) * 4, sizeof(unsigned long long))
    if masks == NULL:
        raise MemoryError()
    try:
        for i in range(a):
            for j in range(b):
                c = mat[i * b + j]
                if c:
                    masks[i * 4 + (c >> 6)] |= (1ULL << (c & 63))
                    masks[(a + j) * 4 + (c >> 6)] |= (1ULL << (c & 63))
        for i in range(a):
            for j in range(b):
                if mat[i * b + j]:
                    n = _path_through(&mat[0], a, b, i, j, length, masks, out)
                    if n:
                        return [out[q] for q in range(n)]
        return None
    finally:
        free(masks)


def rainbow_at(const unsigned char[:] mat, int a, int b, int pos, int pattern):
    cdef int out[8]
    cdef int i = pos // b
    cdef int j = pos % b
    if pattern == K13:
        return bool(_star_at(&mat[0], a, b, i, out) or _star_at(&mat[0], a, b, a + j, out))
    return _path_through(&mat[0], a, b, i, j, 3 if pattern == P4 else 4, NULL, out) > 0


# ---------------------------------------------------------------------------
# canonical form


cdef list _row_options(tuple row, list cells, list cmap, int nextlabel):
    cdef list out = []
    _row_go(row, cells, 0, [], [], cmap, nextlabel, out)
    return out


cdef void _row_go(tuple row, list cells, int ci, list vals, list newcells,
                  list cm, int nl, list out):
    cdef dict groups
    cdef int col, c, lab, m
    cdef list vals2, cells2, fresh, known, tiers, cm2, v, nc
    if ci == len(cells):
        out.append((tuple(vals), newcells, cm, nl))
        return
    groups = {}
    for col in cells[ci]:
        c = row[col]
        if c in groups:
            (<list> groups[c]).append(col)
        else:
            groups[c] = [col]
    known = sorted([(cm[c], c) for c in groups if cm[c]])
    vals2 = list(vals)
    cells2 = list(newcells)
    for lab, c in known:
        vals2.extend([lab] * len(groups[c]))
        cells2.append(groups[c])
    fresh = [c for c in groups if not cm[c]]
    if not fresh:
        _row_go(row, cells, ci + 1, vals2, cells2, cm, nl, out)
        return
    mults = sorted({len(groups[c]) for c in fresh}, reverse=True)
    tiers = [sorted([c for c in fresh if len(groups[c]) == m]) for m in mults]
    for choice in product(*[permutations(t) for t in tiers]):
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
        _row_go(row, cells, ci + 1, v, nc, cm2, lab, out)


cdef class _Canon:
    cdef list rows
    cdef int a
    cdef int b
    cdef bint transposed
    cdef list out_rows
    cdef list order
    cdef list best

    def __init__(self, list rows, int a, int b, bint transposed, list best):
        self.rows = rows
        self.a = a
        self.b = b
        self.transposed = transposed
        self.out_rows = []
        self.order = []
        self.best = best

    cdef void search(self, long long used, list cells, list cmap, int nl):
        cdef int depth = len(self.out_rows)
        cdef int r
        cdef list options, mine
        cdef set seen
        cdef tuple low
        if depth == self.a:
            if self.best[0] is None or self.out_rows < self.best[0]:
                self.best[0] = list(self.out_rows)
                self.best[1] = (self.transposed, tuple(self.order),
                                tuple([c for cell in cells for c in cell]),
                                tuple(cmap))
            return
        options = []
        seen = set()
        for r in range(self.a):
            if (used >> r) & 1 or self.rows[r] in seen:
                continue
            seen.add(self.rows[r])
            for vals, ncells, cm, nl2 in _row_options(self.rows[r], cells, cmap, nl):
                options.append((vals, r, ncells, cm, nl2))
        low = min([o[0] for o in options])
        if self.best[0] is not None:
            mine = self.out_rows + [low]
            if mine > self.best[0][:depth + 1]:
                return
        for vals, r, ncells, cm, nl2 in options:
            if vals != low:
                continue
            self.out_rows.append(vals)
            self.order.append(r)
            self.search(used | (1LL << r), ncells, cm, nl2)
            self.out_rows.pop()
            self.order.pop()


def canonical_form(mat, int a, int b, bint allow_transpose):
    cdef list best = [None, None]
    cdef bytes m = bytes(mat)
    cdef bytes t
    if a > 62 or b > 62:
        raise ValueError("matrix too large for canonical form")
    _Canon([tuple(m[r * b:(r + 1) * b]) for r in range(a)], a, b, False, best).search(
        0, [list(range(b))], [0] * 256, 1)
    if allow_transpose and a == b:
        t = bytes([m[r * b + c] for c in range(b) for r in range(a)])
        _Canon([tuple(t[r * a:(r + 1) * a]) for r in range(b)], b, a, True, best).search(
            0, [list(range(a))], [0] * 256, 1)
    return bytes([v for row in best[0] for v in row]), best[1]


# ---------------------------------------------------------------------------
# enumeration DFS


cdef class _Dfs:
    cdef int a, b, k, total, start, stop, pattern, plen
    cdef bint lex, canon, require_exact, square
    cdef long long nodes, budget
    cdef unsigned char *mat
    cdef object buf
    cdef object on_leaf
    cdef object on_partial
    cdef int *rowcnt
    cdef int *colcnt
    cdef int *rowdist
    cdef int *coldist
    cdef unsigned char *rowtie
    cdef unsigned char *coltie
    cdef int *maxc
    cdef int over_budget

    def __cinit__(self):
        self.rowcnt = NULL
        self.colcnt = NULL
        self.rowdist = NULL
        self.coldist = NULL
        self.rowtie = NULL
        self.coltie = NULL
        self.maxc = NULL

    def __dealloc__(self):
        free(self.rowcnt)
        free(self.colcnt)
        free(self.rowdist)
        free(self.coldist)
        free(self.rowtie)
        free(self.coltie)
        free(self.maxc)

    cdef inline void place(self, int p, int c):
        cdef int i = p // self.b
        cdef int j = p % self.b
        cdef int K = self.k + 2
        if self.rowcnt[i * K + c] == 0:
            self.rowdist[i] += 1
        self.rowcnt[i * K + c] += 1
        if self.colcnt[j * K + c] == 0:
            self.coldist[j] += 1
        self.colcnt[j * K + c] += 1
        if i:
            self.rowtie[p] = (j == 0 or self.rowtie[p - 1]) and c == self.mat[p - self.b]
        if j:
            self.coltie[p] = (i == 0 or self.coltie[p - self.b]) and c == self.mat[p - 1]
        self.maxc[p + 1] = c if c > self.maxc[p] else self.maxc[p]

    cdef inline void unplace(self, int p, int c):
        cdef int i = p // self.b
        cdef int j = p % self.b
        cdef int K = self.k + 2
        self.rowcnt[i * K + c] -= 1
        if self.rowcnt[i * K + c] == 0:
            self.rowdist[i] -= 1
        self.colcnt[j * K + c] -= 1
        if self.colcnt[j * K + c] == 0:
            self.coldist[j] -= 1

    cdef int leaf(self) except -1:
        cdef bytes code
        if self.canon and self.stop == self.total:
            code, _ = canonical_form(self.buf, self.a, self.b, self.square)
            if code != bytes(self.buf):
                return 0
        return 1 if self.on_leaf() else 0

    cdef int rec(self, int p) except -1:
        cdef int i, j, c, top, pruned
        cdef int out[8]
        if p == self.stop:
            return self.leaf()
        i = p // self.b
        j = p % self.b
        top = self.maxc[p] + 1
        if top > self.k:
            top = self.k
        for c in range(1, top + 1):
            if self.lex:
                if i and (j == 0 or self.rowtie[p - 1]) and c < self.mat[p - self.b]:
                    continue
                if j and (i == 0 or self.coltie[p - self.b]) and self.mat[p - 1] > c:
                    continue
            self.nodes += 1
            if self.nodes > self.budget:
                self.over_budget = 1
                return 1
            self.mat[p] = c
            self.place(p, c)
            pruned = 0
            if self.require_exact and self.k - self.maxc[p + 1] > self.total - p - 1:
                pruned = 1
            elif self.pattern == K13:
                pruned = self.rowdist[i] >= 3 or self.coldist[j] >= 3
            elif self.plen:
                pruned = _path_through(self.mat, self.a, self.b, i, j, self.plen, NULL, out) > 0
            if not pruned and self.on_partial is not None:
                pruned = 1 if self.on_partial(p) else 0
            if not pruned and self.rec(p + 1):
                return 1
            self.unplace(p, c)
            self.mat[p] = 0
        return 0

    def run(self, int a, int b, int k, int pattern, bytearray mat, int start,
            int stop, bint lex, bint canon, bint require_exact, long long budget,
            on_leaf, on_partial):
        cdef int p
        cdef int total = a * b
        if a + b > MAXV:
            raise ValueError("matrix too large for kernel")
        self.a = a
        self.b = b
        self.k = k
        self.total = total
        self.start = start
        self.stop = stop
        self.pattern = pattern
        self.plen = 3 if pattern == P4 else (4 if pattern == P5 else 0)
        self.lex = lex
        self.canon = canon
        self.require_exact = require_exact
        self.square = a == b
        self.budget = budget
        self.nodes = 0
        self.over_budget = 0
        self.buf = mat
        self.mat = <unsigned char *> mat
        self.on_leaf = on_leaf
        self.on_partial = on_partial
        self.rowcnt = <int *> calloc(a * (k + 2), sizeof(int))
        self.colcnt = <int *> calloc(b * (k + 2), sizeof(int))
        self.rowdist = <int *> calloc(a, sizeof(int))
        self.coldist = <int *> calloc(b, sizeof(int))
        self.rowtie = <unsigned char *> calloc(total + 1, 1)
        self.coltie = <unsigned char *> calloc(total + 1, 1)
        self.maxc = <int *> calloc(total + 1, sizeof(int))
        if (self.rowcnt == NULL or self.colcnt == NULL or self.rowdist == NULL
                or self.coldist == NULL or self.rowtie == NULL
                or self.coltie == NULL or self.maxc == NULL):
            raise MemoryError()
        for p in range(start):
            self.place(p, self.mat[p])
        for p in range(start, total):
            self.mat[p] = 0
        stopped = self.rec(start)
        if self.over_budget:
            return self.nodes, BUDGET
        return self.nodes, (STOPPED if stopped else DONE)


def dfs(int a, int b, int k, int pattern, bytearray mat, int start, int stop,
        bint lex, bint canon, bint require_exact, long long budget,
        on_leaf, on_partial):
    return _Dfs().run(a, b, k, pattern, mat, start, stop, lex, canon,
                      require_exact, budget, on_leaf, on_partial)
