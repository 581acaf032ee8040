"""Compare the compiled and pure-Python kernels.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import random
import timeit

from bgrlab import kernels


def _colorings(count, n, k, seed=0):
    rng = random.Random(seed)
    return [bytes(rng.randint(1, k) for _ in range(n * n)) for _ in range(count)]


def _cases(mod):
    mats5 = _colorings(200, 5, 3)
    mats6 = _colorings(50, 6, 3)

    def rainbow():
        for m in mats5:
            for p in (kernels.P4, kernels.P5, kernels.K13):
                mod.find_rainbow(m, 5, 5, p)

    def canon():
        for m in mats6:
            mod.canonical_form(m, 6, 6, True)

    def dfs():
        mat = bytearray(9)
        mod.dfs(3, 3, 5, 0, mat, 0, 9, True, True, False, 10 ** 8, lambda: False, None)

    return {"find_rainbow 5x5 x600": rainbow, "canonical_form 6x6 x50": canon,
            "dfs all orbits K33 k<=5": dfs}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    mods = kernels.backends()
    if "cython" not in mods:
        print("compiled kernels not built; timing the Python backend only")
    timings = {name: {} for name in mods}
    for name, mod in mods.items():
        for label, fn in _cases(mod).items():
            timings[name][label] = min(timeit.repeat(fn, number=1, repeat=args.repeat))
    labels = list(timings["python"])
    width = max(len(x) for x in labels)
    print(f"{'case':<{width}}  " + "  ".join(f"{n:>10}" for n in mods) + ("  speedup" if len(mods) > 1 else ""))
    for label in labels:
        row = "  ".join(f"{timings[n][label]:>9.4f}s" for n in mods)
        extra = ""
        if "cython" in timings:
            extra = f"  {timings['python'][label] / timings['cython'][label]:>6.1f}x"
        print(f"{label:<{width}}  {row}{extra}")


if __name__ == "__main__":
    main()
