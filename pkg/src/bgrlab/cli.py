"""``bgrlab`` command line.

Exit codes: 0 answered yes (holds / found / value), 1 answered no (fails /
absent / out of range), 2 usage or input error, 3 inconclusive (budget).
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .catalog import (FormulaResult, HypothesisError, bgr_value, bipartition_stats, br2_path,
                      li_bounds)
from .constructions import (col_blocks, diagonal, even_split, lower_bound_for, row_blocks,
                            sporadic_p5)
from .core import (ColoredBigraph, ColoringFormatError, RainbowPattern, parse_target,
                   read_coloring, write_coloring)
from .patterns import find_monochromatic, find_rainbow
from .search import (DEFAULT_BUDGET, DEFAULT_SAMPLES, canonical_form, check_structure_theorem,
                     exists_avoiding, verify_bgr_point)
from .structure import classify

EXIT_YES, EXIT_NO, EXIT_USAGE, EXIT_INCONCLUSIVE = 0, 1, 2, 3
BR2_DESK_MAX = 6  # br2 value scans beyond P6 need --extended


class UsageError(ValueError):
    pass


def _ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(";", ",").split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"expected a comma-separated list of integers, got {text!r}") from None


def _load(path: str) -> ColoredBigraph:
    try:
        if path == "-":
            return read_coloring(sys.stdin.read())
        with open(path, encoding="utf-8") as fh:
            return read_coloring(fh.read())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


# ---------------------------------------------------------------------------
# subcommands; each returns (exit code, status word, result dict, text lines)


def cmd_detect(args):
    g = _load(args.input)
    if (args.rainbow is None) == (args.mono is None):
        raise UsageError("give exactly one of --rainbow or --mono")
    if args.rainbow:
        cert = find_rainbow(g, RainbowPattern.parse(args.rainbow))
        what = f"rainbow {RainbowPattern.parse(args.rainbow).name}"
    else:
        target = parse_target(args.mono)
        cert = find_monochromatic(g, target)
        what = f"monochromatic {target}"
    result = {"query": what, "found": cert is not None,
              "certificate": cert.to_dict() if cert else None}
    if cert is None:
        return EXIT_NO, "absent", result, [f"{what}: absent"]
    lines = [f"{what}: found", f"  edges: {' '.join(f'u{u}v{v}' for u, v in cert.edges)}"]
    if cert.color is not None:
        lines.append(f"  color: {cert.color}")
    return EXIT_YES, "found", result, lines


def cmd_classify(args):
    g = _load(args.input)
    res = classify(g, args.theorem)
    out = res.to_dict()
    if res.case == "NA":
        return EXIT_NO, "not-applicable", out, [f"{args.theorem}: not applicable (rainbow copy present)"]
    if res.case == "none":
        return EXIT_NO, "fails", out, [f"{args.theorem}: no case matches (counterexample)"]
    lines = [f"{args.theorem}: case {res.case}"]
    w = res.witness
    if w.u_partition:
        lines.append(f"  U parts: {w.u_partition}" + ("  (transposed)" if w.transposed else ""))
    if w.v_partition is not None:
        lines.append(f"  V parts: {w.v_partition}")
    if w.base_color is not None:
        lines.append(f"  base color: {w.base_color}")
    return EXIT_YES, "holds", out, lines


_THEOREM_PARAMS = ("k", "r", "l", "l1", "l2", "m", "s", "t")


def cmd_construct(args):
    if args.theorem:
        params = {p: getattr(args, p) for p in _THEOREM_PARAMS if getattr(args, p) is not None}
        if args.ls is not None:
            params["ls"] = _ints(args.ls)
        if args.ms is not None:
            params["ms"] = _ints(args.ms)
        g = lower_bound_for(args.theorem, params)
        label = f"{args.theorem} lower-bound coloring"
    else:
        kind = args.kind
        if kind == "sporadic":
            g = sporadic_p5(args.which or "n3")
        else:
            if args.n is None or args.k is None:
                raise UsageError(f"{kind} needs --n and --k")
            if kind in ("rowblocks", "colblocks"):
                sizes = _ints(args.sizes) if args.sizes else even_split(args.n, args.k)
                g = (row_blocks if kind == "rowblocks" else col_blocks)(args.n, args.k, sizes)
            else:
                us = _ints(args.usizes) if args.usizes else even_split(args.n, args.k - 1)
                vs = _ints(args.vsizes) if args.vsizes else list(us)
                g = diagonal(args.n, args.k, us, vs, args.base)
        label = f"{kind} coloring"
    text = write_coloring(g)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    result = {"label": label, "coloring": g.to_dict()}
    lines = [] if args.output else [text.rstrip("\n")]
    return EXIT_YES, "value", result, lines


def cmd_formula(args):
    p = RainbowPattern.parse(args.pattern)
    h = parse_target(args.target)
    res = bgr_value(p, h, args.k)
    out = res.to_dict()
    if isinstance(res, FormulaResult):
        lines = [f"bgr_{args.k}({p.name} : {h}) = {res.value}  [{res.theorem_id}]"]
        lines += [f"  checked: {c}" for c in res.hypotheses_checked]
        if res.also_matched:
            lines.append(f"  also matched: {', '.join(res.also_matched)}")
        return EXIT_YES, "value", out, lines
    near = res.nearest_theorem or "-"
    return EXIT_NO, "out-of-range", out, [f"out of theorem range (nearest {near}): {res.violated_clause}"]


def cmd_stats(args):
    h = parse_target(args.target)
    st = bipartition_stats(h)
    out = {"target": str(h), "stats": st.to_dict(), "liBounds": None}
    lines = [f"{h}: s={st.s} t={st.t} s*={st.s_star} t*={st.t_star}"]
    if args.k is not None:
        lb = li_bounds(h, args.k)
        out["liBounds"] = lb.to_dict()
        lines.append(f"  Li bounds (k={args.k}): {lb.lower} <= bgr <= {lb.upper}"
                     + (f", exact {lb.exact}" if lb.exact is not None else ""))
    return EXIT_YES, "value", out, lines


def _avoid_exit(status):
    return {"found": EXIT_YES, "absent": EXIT_NO, "inconclusive": EXIT_INCONCLUSIVE}[status]


def cmd_search_br2(args):
    h = parse_target(args.target)
    if args.n is not None:
        r = exists_avoiding(args.n, 2, None, h, True, budget=args.budget, jobs=args.jobs)
        out = r.to_dict()
        lines = [f"2-coloring of K_{args.n},{args.n} avoiding monochromatic {h}: {r.status}"]
        if r.coloring is not None:
            lines.append(write_coloring(r.coloring).rstrip("\n"))
        return _avoid_exit(r.status), r.status, out, lines
    # value scan: smallest n at which no avoiding coloring exists
    comps = h.normalized().components
    expected = None
    if len(comps) == 1 and type(comps[0]).__name__ == "PathV" and comps[0].length >= 3:
        expected = br2_path(comps[0].length)
        if comps[0].length > BR2_DESK_MAX and not args.extended:
            raise UsageError(f"br2 scans beyond P{BR2_DESK_MAX} are outside desk scale; pass --extended")
    steps = []
    n = 1
    while True:
        r = exists_avoiding(n, 2, None, h, n * n >= 2, budget=args.budget, jobs=args.jobs)
        steps.append({"n": n, "status": r.status, "nodes": r.nodes})
        if r.status != "found":
            break
        n += 1
    out = {"target": str(h), "steps": steps, "expected": expected,
           "value": n if r.status == "absent" else None}
    lines = [f"  n={s['n']}: {s['status']}" for s in steps]
    if r.status == "inconclusive":
        return EXIT_INCONCLUSIVE, "inconclusive", out, [f"br2({h}): inconclusive at n={n}"] + lines
    ok = expected is None or expected == n
    lines.insert(0, f"br2({h}) = {n}" + ("" if expected is None else f"  (formula {expected})"))
    return (EXIT_YES if ok else EXIT_NO), ("value" if ok else "fails"), out, lines


def cmd_search_avoid(args):
    p = RainbowPattern.parse(args.rainbow) if args.rainbow else None
    h = parse_target(args.mono) if args.mono else None
    r = exists_avoiding(args.n, args.k, p, h, not args.allow_inexact, budget=args.budget,
                        jobs=args.jobs)
    lines = [f"avoiding coloring of K_{args.n},{args.n} with {args.k} colors: {r.status}"]
    if r.coloring is not None:
        lines.append(write_coloring(r.coloring).rstrip("\n"))
    return _avoid_exit(r.status), r.status, r.to_dict(), lines


def cmd_search_canon(args):
    g = _load(args.input)
    code = canonical_form(g)
    rep = ColoredBigraph(code[0], code[1], max(code[2:]), code[2:])
    out = {"code": code.hex(), "representative": rep.to_dict()}
    return EXIT_YES, "value", out, [f"code {code.hex()}", write_coloring(rep).rstrip("\n")]


def _report_exit(answer):
    return {"holds": EXIT_YES, "counterexample": EXIT_NO, "inconclusive": EXIT_INCONCLUSIVE}[answer]


def _report_lines(rep):
    lines = [f"answer: {rep.answer}   method: {rep.method}"]
    for key, val in rep.stats.items():
        lines.append(f"  {key:<10} {val}")
    for c in rep.checks:
        extra = {k: v for k, v in c.items() if k not in ("check", "passed")}
        lines.append(f"  [{'pass' if c.get('passed') else 'FAIL'}] {c['check']} {json.dumps(extra)}")
    lines += [f"  note: {n}" for n in rep.notes]
    return lines


def cmd_verify_structure(args):
    rep = check_structure_theorem(args.theorem, args.n, args.kmax, budget=args.budget, jobs=args.jobs)
    out = rep.to_dict(include_timing=not args.no_timing)
    return _report_exit(rep.answer), rep.answer, out, _report_lines(rep)


def cmd_verify_bgr(args):
    p = RainbowPattern.parse(args.pattern)
    h = parse_target(args.target)
    nvals = _ints(args.nvalues) if args.nvalues else None
    rep = verify_bgr_point(p, h, args.k, nvals, expected=args.expected, method=args.method,
                           seed=args.seed, samples=args.samples, budget=args.budget, jobs=args.jobs)
    out = rep.to_dict(include_timing=not args.no_timing)
    return _report_exit(rep.answer), rep.answer, out, _report_lines(rep)


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized checks (default 0)")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="DFS node budget")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for searches")
    common.add_argument("--no-timing", action="store_true", help="omit wall times from reports")

    parser = argparse.ArgumentParser(prog="bgrlab", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"bgrlab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("detect", parents=[common], help="find a rainbow or monochromatic copy")
    p.add_argument("--input", required=True, help=".cbg file or - for stdin")
    p.add_argument("--rainbow", help="P4, P5 or K13")
    p.add_argument("--mono", help="target, e.g. P4+C6 or K2,3")
    p.set_defaults(func=cmd_detect)

    p = sub.add_parser("classify", parents=[common], help="structure-theorem case of a coloring")
    p.add_argument("--theorem", required=True, choices=["T13", "T14", "T21"])
    p.add_argument("--input", required=True)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("construct", parents=[common], help="emit an extremal coloring (.cbg)")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--theorem", choices=["T31", "T32", "T33", "T34", "C31", "T36", "T41", "T42"])
    src.add_argument("--kind", choices=["rowblocks", "colblocks", "diagonal", "sporadic"])
    for name in _THEOREM_PARAMS + ("n", "base"):
        p.add_argument(f"--{name}", type=int)
    p.add_argument("--ls", help="comma-separated l_i")
    p.add_argument("--ms", help="comma-separated m_j")
    p.add_argument("--sizes")
    p.add_argument("--usizes")
    p.add_argument("--vsizes")
    p.add_argument("--which", choices=["n3", "n4"])
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("formula", parents=[common], help="closed-form bgr value")
    p.add_argument("--pattern", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_formula)

    p = sub.add_parser("stats", parents=[common], help="bipartition statistics and Li's bounds")
    p.add_argument("--target", required=True)
    p.add_argument("--k", type=int)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("search", help="avoidance searches")
    ssub = p.add_subparsers(dest="search_command", required=True)
    q = ssub.add_parser("br2", parents=[common], help="2-colorings avoiding a monochromatic target")
    q.add_argument("--target", required=True)
    q.add_argument("--n", type=int, help="check one size; omit to scan for the value")
    q.add_argument("--extended", action="store_true", help="allow value scans beyond P6")
    q.set_defaults(func=cmd_search_br2)
    q = ssub.add_parser("avoid", parents=[common], help="coloring avoiding rainbow and mono copies")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--k", type=int, required=True)
    q.add_argument("--rainbow")
    q.add_argument("--mono")
    q.add_argument("--allow-inexact", action="store_true", help="do not require all k colors")
    q.set_defaults(func=cmd_search_avoid)
    q = ssub.add_parser("canon", parents=[common], help="canonical form of a coloring")
    q.add_argument("--input", required=True)
    q.set_defaults(func=cmd_search_canon)

    p = sub.add_parser("verify", help="machine checks of theorems")
    vsub = p.add_subparsers(dest="verify_command", required=True)
    q = vsub.add_parser("structure", parents=[common], help="exhaustive structure-theorem check")
    q.add_argument("--theorem", required=True, choices=["T13", "T14", "T21"])
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--kmax", type=int, default=5)
    q.set_defaults(func=cmd_verify_structure)
    q = vsub.add_parser("bgr", parents=[common], help="check a catalog value")
    q.add_argument("--pattern", required=True)
    q.add_argument("--target", required=True)
    q.add_argument("--k", type=int, required=True)
    q.add_argument("--nvalues", help="comma-separated N values (default v,v+1)")
    q.add_argument("--expected", type=int)
    q.add_argument("--method", choices=["auto", "exhaustive", "randomized"], default="auto")
    q.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    q.set_defaults(func=cmd_verify_bgr)
    return parser


def _command_name(args) -> str:
    parts = [args.command]
    for attr in ("search_command", "verify_command"):
        if getattr(args, attr, None):
            parts.append(getattr(args, attr))
    return " ".join(parts)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    name = _command_name(args)
    try:
        code, status, result, lines = args.func(args)
    except (UsageError, ColoringFormatError, HypothesisError, ValueError) as exc:
        if args.json:
            print(json.dumps({"command": name, "status": "error", "exitCode": EXIT_USAGE,
                              "error": str(exc)}, sort_keys=True))
        print(f"bgrlab {name}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.json:
        print(json.dumps({"command": name, "status": status, "exitCode": code, "result": result},
                         sort_keys=True))
    else:
        for line in lines:
            print(line)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
