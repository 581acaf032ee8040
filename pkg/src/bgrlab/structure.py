"""Case classification of rainbow-free colorings, with checkable witnesses.

Three structure theorems are covered, keyed ``T13`` (no rainbow P4),
``T14`` (no rainbow P5) and ``T21`` (no rainbow K_{1,3}).  A classifier
either returns a rainbow certificate (the theorem does not apply) or the
first matching case in the order a < b < c < d < e, trying the coloring
as given before its transpose.

Witnesses use theorem labels: ``color_map[i]`` is the actual color playing
the role of color ``i`` in the case statement.  Partitions list vertex
indices of the (possibly transposed) coloring; part ``j`` of
``u_partition`` is ``U_{j+1}``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations
from typing import Optional

from . import kernels
from .constructions import SPORADIC_P5
from .core import U, V, Certificate, ColoredBigraph, RainbowPattern
from .patterns import find_rainbow

THEOREMS = {"T13": RainbowPattern.P4, "T14": RainbowPattern.P5, "T21": RainbowPattern.K13}
MIN_N = {"T13": 2, "T14": 3, "T21": 3}
CASES = {"T13": "ab", "T14": "abcde", "T21": "abcde"}

# T21 palette templates in theorem labels
_T21_D = ((frozenset({1, 2}), frozenset({2, 3}), frozenset({1, 4})),
          (frozenset({1, 2}), frozenset({1, 3}), frozenset({2, 4})))
_T21_E = ((frozenset({1, 4}), frozenset({2, 3})),
          (frozenset({1, 2}), frozenset({1, 3}), frozenset({2, 4}), frozenset({3, 4})))
_T21_C_PAIRS = (frozenset({1, 2}), frozenset({1, 3}), frozenset({2, 3}))


class WitnessError(ValueError):
    """A witness that is malformed (wrong shape, labels or indices)."""


@dataclass
class StructureWitness:
    theorem: str
    case: str
    u_partition: list[list[int]] = field(default_factory=list)
    v_partition: Optional[list[list[int]]] = None
    base_color: Optional[int] = None
    color_map: dict[int, int] = field(default_factory=dict)
    color_assignment: dict[str, list[int]] = field(default_factory=dict)
    transposed: bool = False

    def to_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "case": self.case,
            "transposed": self.transposed,
            "uPartition": [list(p) for p in self.u_partition],
            "vPartition": None if self.v_partition is None else [list(p) for p in self.v_partition],
            "baseColor": self.base_color,
            "colorMap": {str(k): v for k, v in sorted(self.color_map.items())},
            "colorAssignment": {k: list(v) for k, v in self.color_assignment.items()},
        }

    @classmethod
    def from_dict(cls, data: dict) -> "StructureWitness":
        try:
            return cls(
                theorem=data["theorem"],
                case=data["case"],
                u_partition=[list(map(int, p)) for p in data.get("uPartition") or []],
                v_partition=(None if data.get("vPartition") is None
                             else [list(map(int, p)) for p in data["vPartition"]]),
                base_color=data.get("baseColor"),
                color_map={int(k): int(v) for k, v in (data.get("colorMap") or {}).items()},
                color_assignment={k: list(map(int, v))
                                  for k, v in (data.get("colorAssignment") or {}).items()},
                transposed=bool(data.get("transposed", False)),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise WitnessError(f"malformed witness: {exc}") from exc


@dataclass
class Classification:
    """Outcome of a classifier.

    ``case`` is ``"NA"`` (rainbow certificate in ``certificate``), a case
    letter, or ``"none"`` when the coloring is rainbow-free yet matches no
    case (a counterexample to the theorem; never expected).
    """

    theorem: str
    case: str
    witness: Optional[StructureWitness] = None
    certificate: Optional[Certificate] = None

    def to_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "case": self.case,
            "witness": self.witness.to_dict() if self.witness else None,
            "certificate": self.certificate.to_dict() if self.certificate else None,
        }


# ---------------------------------------------------------------------------
# helpers


def _orient(g: ColoredBigraph, transposed: bool) -> ColoredBigraph:
    return g.transpose() if transposed else g


def _palettes(g: ColoredBigraph):
    return ([g.palette(U, i) for i in range(g.a)], [g.palette(V, j) for j in range(g.b)])


def _label_map(used, first=None) -> dict[int, int]:
    """Theorem labels 1.. onto actual colors: ``first`` (if given) then ascending."""
    rest = sorted(c for c in used if c != first)
    order = ([first] if first is not None else []) + rest
    return {i + 1: c for i, c in enumerate(order)}


def _check_input(g: ColoredBigraph, theorem: str):
    if theorem not in THEOREMS:
        raise ValueError(f"unknown theorem {theorem!r} (expected T13, T14 or T21)")
    if not g.is_square:
        raise ValueError(f"structure theorems need a square coloring, got {g.a}x{g.b}")
    if g.n < MIN_N[theorem]:
        raise ValueError(f"{theorem} needs n >= {MIN_N[theorem]}, got n={g.n}")
    if not g.is_exact():
        missing = sorted(set(range(1, g.k + 1)) - g.used_colors())
        raise ValueError(f"coloring is not exact: color(s) {missing} unused")


def _names(side: str, count: int) -> list[str]:
    return [f"{side}{j + 1}" for j in range(count)]


def _sorted_assignment(u_bounds, v_bounds) -> dict[str, list[int]]:
    out = {}
    for name, bound in zip(_names("U", len(u_bounds)), u_bounds):
        out[name] = sorted(bound)
    for name, bound in zip(_names("V", len(v_bounds)), v_bounds):
        out[name] = sorted(bound)
    return out


# ---------------------------------------------------------------------------
# case recognizers; each returns a witness or None


def _case_a(theorem: str, g: ColoredBigraph) -> StructureWitness | None:
    limit = 3 if theorem == "T14" else 2
    used = g.used_colors()
    if len(used) > limit:
        return None
    return StructureWitness(theorem, "a", color_map=_label_map(used))


def _t13_b(g: ColoredBigraph, transposed: bool) -> StructureWitness | None:
    h = _orient(g, transposed)
    rows = h.rows
    if any(len(set(r)) != 1 for r in rows):
        return None
    cmap = _label_map(h.used_colors())
    parts = [[i for i, r in enumerate(rows) if r[0] == cmap[lab]] for lab in sorted(cmap)]
    return StructureWitness("T13", "b", u_partition=parts, color_map=cmap,
                            color_assignment=_sorted_assignment([[cmap[l]] for l in sorted(cmap)], []),
                            transposed=transposed)


def _t14_b(g: ColoredBigraph, transposed: bool) -> StructureWitness | None:
    h = _orient(g, transposed)
    rows = h.rows
    for beta in sorted(h.used_colors()):
        u2 = [i for i, r in enumerate(rows) if all(c == beta for c in r)]
        u1 = [i for i in range(h.a) if i not in set(u2)]
        if not u1 or any(rows[i] != rows[u1[0]] for i in u1):
            continue
        ref = rows[u1[0]]
        cmap = _label_map(h.used_colors(), beta)
        vparts = [[j for j in range(h.b) if ref[j] == cmap[lab]] for lab in sorted(cmap)]
        if any(not p for p in vparts[1:]):
            continue
        vb = [sorted({cmap[lab]} | ({beta} if u2 else set())) for lab in sorted(cmap)]
        return StructureWitness("T14", "b", u_partition=[u1, u2], v_partition=vparts,
                                base_color=beta, color_map=cmap,
                                color_assignment=_sorted_assignment([sorted(set(ref)), [beta]], vb),
                                transposed=transposed)
    return None


def _block_diagonal(theorem: str, case: str, g: ColoredBigraph) -> StructureWitness | None:
    """Parts U_i, V_i with only colors {1, i} on E(U_i, V_i) and color 1 elsewhere."""
    pu, pv = _palettes(g)
    used = g.used_colors()
    for beta in sorted(used):
        if any(len(p - {beta}) > 1 for p in pu + pv):
            continue
        cmap = _label_map(used, beta)
        inv = {c: lab for lab, c in cmap.items()}

        def split(pals):
            parts = [[] for _ in cmap]
            for x, p in enumerate(pals):
                extra = p - {beta}
                parts[inv[next(iter(extra))] - 1 if extra else 0].append(x)
            return parts

        uparts, vparts = split(pu), split(pv)
        bounds = [[beta]] + [sorted({beta, cmap[lab]}) for lab in sorted(cmap) if lab > 1]
        return StructureWitness(theorem, case, u_partition=uparts, v_partition=vparts,
                                base_color=beta, color_map=cmap,
                                color_assignment=_sorted_assignment(bounds, bounds))
    return None


def _sporadic(case: str, g: ColoredBigraph) -> StructureWitness | None:
    key = "n3" if case == "d" else "n4"
    rows = SPORADIC_P5[key]
    n = len(rows)
    if g.n != n or len(g.used_colors()) != 4:
        return None
    ref = ColoredBigraph.from_rows(rows, 4)
    if kernels.canonical_form(g.cells, n, n, True)[0] != kernels.canonical_form(ref.cells, n, n, True)[0]:
        return None
    # same orbit: recover an explicit isomorphism for the witness
    for transposed in (False, True):
        h = _orient(g, transposed)
        for ru in permutations(range(n)):
            for cv in permutations(range(n)):
                cmap: dict[int, int] = {}
                ok = True
                for p in range(n):
                    for q in range(n):
                        lab, c = rows[p][q], h.color_of(ru[p], cv[q])
                        if cmap.setdefault(lab, c) != c:
                            ok = False
                            break
                    if not ok:
                        break
                if ok and len(set(cmap.values())) == 4:
                    bounds_u = [sorted({cmap[x] for x in rows[p]}) for p in range(n)]
                    bounds_v = [sorted({cmap[rows[p][q]] for p in range(n)}) for q in range(n)]
                    return StructureWitness("T14", case, u_partition=[[x] for x in ru],
                                            v_partition=[[x] for x in cv], color_map=cmap,
                                            color_assignment=_sorted_assignment(bounds_u, bounds_v),
                                            transposed=transposed)
    return None  # pragma: no cover - equal canonical forms imply an isomorphism


def _assign(pals, templates):
    """Each palette to the first template containing it; None if one fits nowhere."""
    parts = [[] for _ in templates]
    for x, p in enumerate(pals):
        for idx, t in enumerate(templates):
            if p <= t:
                parts[idx].append(x)
                break
        else:
            return None
    return parts


def _t21_c(g: ColoredBigraph) -> StructureWitness | None:
    used = g.used_colors()
    if len(used) != 3:
        return None
    cmap = _label_map(used)
    pairs = [frozenset(cmap[x] for x in pr) for pr in _T21_C_PAIRS]
    pu, pv = _palettes(g)
    uparts, vparts = _assign(pu, pairs), _assign(pv, pairs)
    if uparts is None or vparts is None:
        return None
    bounds = [sorted(p) for p in pairs]
    return StructureWitness("T21", "c", u_partition=uparts, v_partition=vparts, color_map=cmap,
                            color_assignment=_sorted_assignment(bounds, bounds))


def _t21_template(case: str, g: ColoredBigraph, transposed: bool) -> StructureWitness | None:
    h = _orient(g, transposed)
    used = h.used_colors()
    if len(used) != 4:
        return None
    tu, tv = _T21_D if case == "d" else _T21_E
    pu, pv = _palettes(h)
    for perm in permutations(sorted(used)):
        cmap = {i + 1: c for i, c in enumerate(perm)}
        su = [frozenset(cmap[x] for x in t) for t in tu]
        sv = [frozenset(cmap[x] for x in t) for t in tv]
        uparts, vparts = _assign(pu, su), _assign(pv, sv)
        if uparts is None or vparts is None:
            continue
        w = StructureWitness("T21", case, u_partition=uparts, v_partition=vparts, color_map=cmap,
                             color_assignment=_sorted_assignment([sorted(s) for s in su],
                                                                 [sorted(s) for s in sv]),
                             transposed=transposed)
        # palette containment is necessary; the edge check settles it
        if verify_witness(g, w):
            return w
    return None


def _recognize(theorem: str, case: str, g: ColoredBigraph) -> StructureWitness | None:
    if case == "a":
        return _case_a(theorem, g)
    if theorem == "T13":
        return _t13_b(g, False) or _t13_b(g, True)
    if theorem == "T14":
        if case == "b":
            return _t14_b(g, False) or _t14_b(g, True)
        if case == "c":
            return _block_diagonal("T14", "c", g)
        return _sporadic(case, g)
    if case == "b":
        return _block_diagonal("T21", "b", g)
    if case == "c":
        return _t21_c(g)
    return _t21_template(case, g, False) or _t21_template(case, g, True)


def classify(g: ColoredBigraph, theorem: str) -> Classification:
    """Classify ``g`` under ``theorem`` (``T13``, ``T14`` or ``T21``)."""
    _check_input(g, theorem)
    cert = find_rainbow(g, THEOREMS[theorem])
    if cert is not None:
        return Classification(theorem, "NA", certificate=cert)
    for case in CASES[theorem]:
        w = _recognize(theorem, case, g)
        if w is not None:
            return Classification(theorem, case, witness=w)
    return Classification(theorem, "none")


def classify_p4_free(g: ColoredBigraph) -> Classification:
    return classify(g, "T13")


def classify_p5_free(g: ColoredBigraph) -> Classification:
    return classify(g, "T14")


def classify_k13_free(g: ColoredBigraph) -> Classification:
    return classify(g, "T21")


# ---------------------------------------------------------------------------
# verification


def _check_partition(parts, size: int, what: str):
    seen = []
    for p in parts:
        seen.extend(p)
    if sorted(seen) != list(range(size)):
        raise WitnessError(f"{what} is not a partition of 0..{size - 1}")


def _allowed_fn(w: StructureWitness, h: ColoredBigraph):
    """Allowed actual colors on E(U_i, V_j) as a function of part indices (i, j)."""
    cm = w.color_map
    th, case = w.theorem, w.case
    k = len(cm)
    if th == "T13":
        return lambda i, j: {cm[i + 1]}
    if th == "T14" and case == "b":
        return lambda i, j: {cm[j + 1]} if i == 0 else {cm[1]}
    if case in ("b", "c") and (th, case) != ("T21", "c"):
        return lambda i, j: {cm[1], cm[i + 1]} if i == j else {cm[1]}
    if th == "T14":
        rows = SPORADIC_P5["n3" if case == "d" else "n4"]
        return lambda i, j: {cm[rows[i][j]]}
    if case == "c":
        ua = [set(w.color_assignment[f"U{j + 1}"]) for j in range(3)]
        va = [set(w.color_assignment[f"V{j + 1}"]) for j in range(3)]
        return lambda i, j: ua[i] & va[j]
    tu, tv = _T21_D if case == "d" else _T21_E
    su = [{cm[x] for x in t} for t in tu]
    sv = [{cm[x] for x in t} for t in tv]
    return lambda i, j: su[i] & sv[j]


def _shape(w: StructureWitness, n: int, k: int):
    """Validate part counts and the case's size lower bounds."""
    th, case = w.theorem, w.case
    nu = len(w.u_partition)
    nv = None if w.v_partition is None else len(w.v_partition)
    sizes_u = [len(p) for p in w.u_partition]
    sizes_v = [] if w.v_partition is None else [len(p) for p in w.v_partition]
    if th == "T13":
        if nu != k or nv is not None or min(sizes_u) < 1:
            raise WitnessError("T13(b) needs k nonempty U parts and no V partition")
        return
    if nv is None:
        raise WitnessError(f"{th}({case}) needs a V partition")
    if th == "T14" and case == "b":
        if nu != 2 or nv != k or sizes_u[0] < 1 or min(sizes_v[1:], default=1) < 1:
            raise WitnessError("T14(b) needs U1 (nonempty), U2 and k V parts with V2..Vk nonempty")
    elif case in ("b", "c") and (th, case) != ("T21", "c"):
        if nu != k or nv != k or min(sizes_u[1:] + sizes_v[1:], default=1) < 1:
            raise WitnessError(f"{th}({case}) needs k parts per side, parts 2..k nonempty")
    elif th == "T14":
        if k != 4 or nu != n or nv != n or set(sizes_u + sizes_v) != {1}:
            raise WitnessError(f"T14({case}) needs singleton parts and 4 colors")
        if n != (3 if case == "d" else 4):
            raise WitnessError(f"T14({case}) has a fixed order")
    elif case == "c":
        if k != 3 or nu != 3 or nv != 3:
            raise WitnessError("T21(c) needs 3 colors and 3 parts per side")
        for name in _names("U", 3) + _names("V", 3):
            pal = set(w.color_assignment.get(name, ()))
            if not pal <= set(w.color_map.values()) or len(pal) > 2:
                raise WitnessError(f"T21(c) part {name} needs at most two of the three colors")
    else:
        tu, tv = _T21_D if case == "d" else _T21_E
        if k != 4 or nu != len(tu) or nv != len(tv):
            raise WitnessError(f"T21({case}) needs 4 colors and {len(tu)}/{len(tv)} parts")


def verify_witness(g: ColoredBigraph, w: StructureWitness) -> bool:
    """True iff every edge of ``g`` obeys the constraints of the witnessed case.

    Raises :class:`WitnessError` for witnesses that are not shape-valid.
    """
    if w.theorem not in THEOREMS or w.case not in CASES[w.theorem]:
        raise WitnessError(f"no case {w.case!r} for theorem {w.theorem!r}")
    if not g.is_square:
        raise WitnessError("structure witnesses apply to square colorings")
    used = g.used_colors()
    if w.case == "a":
        return len(used) <= (3 if w.theorem == "T14" else 2)
    cm = w.color_map
    k = len(cm)
    if sorted(cm) != list(range(1, k + 1)) or len(set(cm.values())) != k:
        raise WitnessError("color map must be a bijection from labels 1..k")
    if set(cm.values()) != used:
        return False
    if w.base_color is not None and w.base_color != cm[1]:
        return False
    h = _orient(g, w.transposed)
    n = h.a
    _shape(w, n, k)
    _check_partition(w.u_partition, h.a, "U partition")
    if w.v_partition is not None:
        _check_partition(w.v_partition, h.b, "V partition")
    allowed = _allowed_fn(w, h)
    vparts = w.v_partition if w.v_partition is not None else [list(range(h.b))]
    for i, up in enumerate(w.u_partition):
        for j, vp in enumerate(vparts):
            ok = allowed(i, j)
            for x in up:
                for y in vp:
                    if h.color_of(x, y) not in ok:
                        return False
    # stated palette bounds must hold as well
    named = list(zip(_names("U", len(w.u_partition)), w.u_partition, [U] * len(w.u_partition)))
    named += list(zip(_names("V", len(vparts)), vparts, [V] * len(vparts)))
    for name, part, side in named:
        bound = w.color_assignment.get(name)
        if bound is None:
            continue
        if any(not h.palette(side, x) <= set(bound) for x in part):
            return False
    return True
