"""Closed-form bipartite Gallai-Ramsey values, Li's bounds, bipartition statistics.

Theorem ids: ``T31`` (rainbow P4; two-component targets), ``T32``, ``T33``,
``T34``, ``C31``, ``T36`` (rainbow P5), ``T41``, ``T42`` (rainbow K_{1,3}).
Hypotheses are evaluated literally; :func:`hypotheses` is the single source
used both here and by the constructions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .core import Biclique, EvenCycle, PathV, RainbowPattern, Star, TargetGraph

THEOREM_IDS = ("T31", "T32", "T33", "T34", "C31", "T36", "T41", "T42")
PATTERN_OF = {"T31": RainbowPattern.P4, "T32": RainbowPattern.P5, "T33": RainbowPattern.P5,
              "T34": RainbowPattern.P5, "C31": RainbowPattern.P5, "T36": RainbowPattern.P5,
              "T41": RainbowPattern.K13, "T42": RainbowPattern.K13}


class HypothesisError(ValueError):
    """Parameters outside a theorem's hypotheses; ``clause`` names the violated one."""

    def __init__(self, theorem_id: str, clause: str):
        super().__init__(f"{theorem_id}: hypothesis violated: {clause}")
        self.theorem_id = theorem_id
        self.clause = clause


class CatalogConflict(RuntimeError):
    """Two theorems apply to the same instance but give different values."""


# ---------------------------------------------------------------------------
# bipartition statistics


@dataclass(frozen=True)
class BipartitionStats:
    s: int
    t: int
    s_star: int
    t_star: int

    def to_dict(self) -> dict:
        return {"s": self.s, "t": self.t, "sStar": self.s_star, "tStar": self.t_star}


def bipartition_stats(h: TargetGraph) -> BipartitionStats:
    """s(H), t(H), s*(H), t*(H) over all bipartitions with ``|S| <= |T|``.

    Components are connected, so a bipartition is a choice of orientation per
    component; the reachable ``|S|`` values are a subset-sum.
    """
    if not h.components:
        raise ValueError("target must have at least one component")
    total = h.vertex_count
    reach = {0}
    for comp in h.components:
        x, y = comp.footprint
        reach = {r + x for r in reach} | {r + y for r in reach}
    smalls = sorted({min(r, total - r) for r in reach})
    s, s_star = smalls[0], smalls[-1]
    return BipartitionStats(s=s, t=total - s, s_star=s_star, t_star=total - s_star)


@dataclass(frozen=True)
class LiBounds:
    lower: int
    upper: int
    exact: Optional[int]
    stats: BipartitionStats

    def to_dict(self) -> dict:
        return {"lower": self.lower, "upper": self.upper, "exact": self.exact,
                "stats": self.stats.to_dict()}


def li_bounds(h: TargetGraph, k: int) -> LiBounds:
    """Li's bounds on bgr_k(P4 : H).

    ``exact`` is set when ``s(H) = s*(H)`` or when the two bounds meet.
    """
    st = bipartition_stats(h)
    if k < 3:
        raise HypothesisError("Li", "k >= 3")
    if st.s < 2:
        raise HypothesisError("Li", "s(H) >= 2")
    lower = max(st.t_star, (st.s - 1) * k + 1)
    upper = min(max(st.t, (st.s - 1) * k + 1), max(st.t_star, (st.s_star - 1) * k + 1))
    if st.s == st.s_star:
        exact = max(st.t, (st.s - 1) * k + 1)
    else:
        exact = lower if lower == upper else None
    return LiBounds(lower, upper, exact, st)


def br2_path(n: int) -> int:
    """Two-color bipartite Ramsey number of the path on ``n`` vertices."""
    if n < 3:
        raise ValueError(f"br2(P_n) needs n >= 3, got {n}")
    return n - 1 if n % 2 == 0 else n


# ---------------------------------------------------------------------------
# per-theorem hypotheses and formulas


def _ints(value) -> list[int]:
    if isinstance(value, int):
        return [value]
    if isinstance(value, str):
        return [int(x) for x in value.replace(";", ",").split(",") if x.strip()]
    return [int(x) for x in value]


def normalize_params(theorem_id: str, params: dict) -> dict:
    """Coerce CLI-style parameters (strings, lists) to ints and int lists."""
    out = {}
    for key, val in params.items():
        out[key] = _ints(val) if key in ("ls", "ms") else int(val)
    if theorem_id == "T32":
        out.setdefault("r", 1)
    if theorem_id == "T34":
        out.setdefault("ls", [])
        out.setdefault("ms", [])
    return out


def _t31_variant(p: dict) -> str:
    if "r" in p:
        return "paths"
    if "l1" in p:
        return "cycles"
    if "m" in p:
        return "mixed"
    raise HypothesisError("T31", "give r,l (paths) or l1,l2 (cycles) or m,l (path and cycle)")


def hypotheses(theorem_id: str, params: dict) -> list[tuple[str, bool]]:
    """The theorem's hypothesis clauses with their truth values, in statement order."""
    if theorem_id not in THEOREM_IDS:
        raise HypothesisError(theorem_id, f"unknown theorem id (expected one of {', '.join(THEOREM_IDS)})")
    p = normalize_params(theorem_id, params)
    if "k" not in p:
        raise HypothesisError(theorem_id, "parameter k is required")
    k = p["k"]
    try:
        if theorem_id == "T31":
            v = _t31_variant(p)
            if v == "paths":
                cl = [("r >= 2", p["r"] >= 2), ("l >= 2", p["l"] >= 2)]
            elif v == "cycles":
                cl = [("l1 >= 2", p["l1"] >= 2), ("l2 >= 2", p["l2"] >= 2)]
            else:
                cl = [("m >= 2", p["m"] >= 2), ("l >= 2", p["l"] >= 2)]
            return cl + [("k >= 3", k >= 3)]
        if theorem_id == "T32":
            return [("k >= 4", k >= 4), ("l >= 10", p["l"] >= 10), ("r >= 1", p["r"] >= 1)]
        if theorem_id == "T33":
            ls = p["ls"]
            return [("k >= 5", k >= 5), ("at least one path", len(ls) >= 1),
                    ("l_i >= 10", all(x >= 10 for x in ls))]
        if theorem_id == "T34":
            ls, ms = p["ls"], p["ms"]
            bound = 2 + sum(x // 2 + 1 for x in ls) + sum(ms)
            return [("r, s not both 0", len(ls) + len(ms) >= 1),
                    ("l_i >= 2", all(x >= 2 for x in ls)),
                    ("m_j >= 2", all(x >= 2 for x in ms)),
                    (f"k >= 2 + sum(floor(l_i/2)+1) + sum(m_j) = {bound}", k >= bound)]
        if theorem_id == "C31":
            ls = p["ls"]
            return [("at least one cycle", len(ls) >= 1), ("l_i >= 2", all(x >= 2 for x in ls)),
                    (f"k >= 2 + sum(l_i) = {2 + sum(ls)}", k >= 2 + sum(ls))]
        if theorem_id == "T36":
            t = p["t"]
            return [("t >= 3", t >= 3), (f"k >= t + 2 = {t + 2}", k >= t + 2)]
        if theorem_id == "T41":
            t = p["t"]
            return [("t >= 5", t >= 5), (f"t <= k <= t + 1 (t={t})", t <= k <= t + 1)]
        s, t = p["s"], p["t"]
        lo = t + s - t // 2
        return [("2 <= s < t", 2 <= s < t), ("t >= 5", t >= 5),
                (f"t + s - floor(t/2) <= k <= t + s ({lo}..{t + s})", lo <= k <= t + s)]
    except KeyError as exc:
        raise HypothesisError(theorem_id, f"parameter {exc.args[0]} is required") from None


def check_hypotheses(theorem_id: str, params: dict) -> list[str]:
    """Clause texts, after raising :class:`HypothesisError` on the first violated one."""
    clauses = hypotheses(theorem_id, params)
    for text, ok in clauses:
        if not ok:
            raise HypothesisError(theorem_id, text)
    return [text for text, _ in clauses]


def formula_value(theorem_id: str, params: dict) -> int:
    """The closed-form value (no hypothesis check)."""
    p = normalize_params(theorem_id, params)
    k = p["k"]
    if theorem_id == "T31":
        v = _t31_variant(p)
        if v == "paths":
            q = p["r"] // 2 + (p["r"] + p["l"]) // 2
        elif v == "cycles":
            q = p["l1"] + p["l2"]
        else:
            q = p["l"] + p["m"] // 2
        return k * q - k + 1
    if theorem_id == "T32":
        return k * p["r"] * (p["l"] // 2) - k + 1
    if theorem_id == "T33":
        return k * sum(x // 2 for x in p["ls"]) - k + 1
    if theorem_id == "T34":
        return k * (sum(x // 2 for x in p["ls"]) + sum(p["ms"])) - k + 1
    if theorem_id == "C31":
        return k * sum(p["ls"]) - k + 1
    if theorem_id == "T36":
        return k * p["t"] - k + 1
    if theorem_id == "T41":
        return p["t"] + 1
    if theorem_id == "T42":
        return p["t"] + p["s"]
    raise HypothesisError(theorem_id, "unknown theorem id")


def target_for(theorem_id: str, params: dict) -> TargetGraph:
    p = normalize_params(theorem_id, params)
    if theorem_id == "T31":
        v = _t31_variant(p)
        if v == "paths":
            return TargetGraph.of(PathV(p["r"]), PathV(p["r"] + p["l"]))
        if v == "cycles":
            return TargetGraph.of(EvenCycle(2 * p["l1"]), EvenCycle(2 * p["l2"]))
        return TargetGraph.of(PathV(p["m"]), EvenCycle(2 * p["l"]))
    if theorem_id == "T32":
        return TargetGraph(tuple([PathV(p["l"])] * p["r"]))
    if theorem_id == "T33":
        return TargetGraph(tuple(PathV(x) for x in p["ls"]))
    if theorem_id == "T34":
        return TargetGraph(tuple(PathV(x) for x in p["ls"]) + tuple(EvenCycle(2 * m) for m in p["ms"]))
    if theorem_id == "C31":
        return TargetGraph(tuple(EvenCycle(2 * x) for x in p["ls"]))
    if theorem_id == "T36":
        return TargetGraph.of(Biclique(p["t"], p["t"]))
    if theorem_id == "T41":
        return TargetGraph.of(Star(p["t"]))
    return TargetGraph.of(Biclique(p["s"], p["t"]))


# ---------------------------------------------------------------------------
# matching (pattern, target, k) against the theorems


def _shape_matches(p: RainbowPattern, h: TargetGraph, k: int) -> list[tuple[str, dict]]:
    """Theorems whose target shape fits ``h``, with the extracted parameters."""
    comps = h.normalized().components
    paths = [c.length for c in comps if isinstance(c, PathV)]
    cycles = [c.length // 2 for c in comps if isinstance(c, EvenCycle)]
    others = [c for c in comps if not isinstance(c, (PathV, EvenCycle))]
    out: list[tuple[str, dict]] = []
    if p is RainbowPattern.P4:
        if len(comps) == 2 and not others:
            if len(paths) == 2:
                a, b = sorted(paths)
                out.append(("T31", {"k": k, "r": a, "l": b - a}))
            elif len(cycles) == 2:
                l1, l2 = sorted(cycles)
                out.append(("T31", {"k": k, "l1": l1, "l2": l2}))
            else:
                out.append(("T31", {"k": k, "m": paths[0], "l": cycles[0]}))
    elif p is RainbowPattern.P5:
        if not others and comps:
            if paths and not cycles and len(set(paths)) == 1:
                out.append(("T32", {"k": k, "r": len(paths), "l": paths[0]}))
            if paths and not cycles:
                out.append(("T33", {"k": k, "ls": sorted(paths)}))
            out.append(("T34", {"k": k, "ls": sorted(paths), "ms": sorted(cycles)}))
            if cycles and not paths:
                out.append(("C31", {"k": k, "ls": sorted(cycles)}))
        if len(comps) == 1:
            c = comps[0]
            if isinstance(c, Biclique) and c.s == c.t:
                out.append(("T36", {"k": k, "t": c.t}))
            elif isinstance(c, EvenCycle) and c.length == 4:
                out.append(("T36", {"k": k, "t": 2}))
    else:
        if len(comps) == 1:
            c = comps[0]
            if isinstance(c, Star):
                out.append(("T41", {"k": k, "t": c.leaves}))
            elif isinstance(c, PathV) and c.length <= 3:
                out.append(("T41", {"k": k, "t": c.length - 1}))
            elif isinstance(c, Biclique):
                out.append(("T42", {"k": k, "s": c.s, "t": c.t}))
            elif isinstance(c, EvenCycle) and c.length == 4:
                out.append(("T42", {"k": k, "s": 2, "t": 2}))
    return out


@dataclass
class FormulaResult:
    theorem_id: str
    value: int
    hypotheses_checked: list[str]
    params: dict
    also_matched: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"theoremId": self.theorem_id, "value": self.value,
                "hypothesesChecked": list(self.hypotheses_checked),
                "params": dict(self.params), "alsoMatched": list(self.also_matched)}


@dataclass
class OutOfTheoremRange:
    nearest_theorem: Optional[str]
    violated_clause: str
    params: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"theoremId": None, "outOfRange": True, "nearestTheorem": self.nearest_theorem,
                "violatedClause": self.violated_clause, "params": dict(self.params)}


def bgr_value(p: RainbowPattern, h: TargetGraph, k: int) -> FormulaResult | OutOfTheoremRange:
    """Closed-form bgr_k(p : h) when some theorem covers the instance.

    Every applicable theorem is evaluated; differing values raise
    :class:`CatalogConflict`.
    """
    candidates = _shape_matches(p, h, k)
    hits = []
    misses = []
    for tid, params in candidates:
        clauses = hypotheses(tid, params)
        bad = [text for text, ok in clauses if not ok]
        value = formula_value(tid, params)
        if not bad and value * value < k:
            bad = [f"value^2 >= k ({value}^2 < {k})"]
        if bad:
            misses.append((len(bad), tid, bad[0], params))
        else:
            hits.append((tid, value, [t for t, _ in clauses], params))
    if hits:
        values = {v for _, v, _, _ in hits}
        if len(values) > 1:
            detail = ", ".join(f"{tid}={v}" for tid, v, _, _ in hits)
            raise CatalogConflict(f"theorems disagree on {p.name} vs {h}, k={k}: {detail}")
        tid, value, checked, params = hits[0]
        return FormulaResult(tid, value, checked, params, [x[0] for x in hits[1:]])
    if misses:
        _, tid, clause, params = min(misses, key=lambda m: (m[0], THEOREM_IDS.index(m[1])))
        return OutOfTheoremRange(tid, clause, params)
    return OutOfTheoremRange(None, f"no theorem covers rainbow {p.name} with target {h}")

