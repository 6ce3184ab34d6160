"""Compare the compiled and numpy kernel backends.

    python benchmarks/bench_kernels.py [--repeat N]

Times form evaluation, form+gradient, and a full multi-start solve on a few
instance sizes, and checks that both backends give the same numbers.
"""
import argparse
import time

import numpy as np

from hyperspec import kernels
from hyperspec.generators import BlowupSpec, complete_rgraph, counterexample_4graph, kpartite_blowup

CASES = [
    ("K_6^2", lambda: complete_rgraph(6, 2)[0], 2.0),
    ("K_8^4", lambda: complete_rgraph(8, 4)[0], 4.0),
    ("blowup(4,4,3)", lambda: kpartite_blowup(BlowupSpec(4, 4, 3))[0], 4.0),
    ("counterexample(8)", lambda: counterexample_4graph(8), 4.0),
]


def _best(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def bench(mod, h, p, repeat, restarts):
    idx, w, s = h.index_array, np.ascontiguousarray(h.weight_array), float(h.form_scale)
    rng = np.random.default_rng(0)
    xs = rng.uniform(-1, 1, (200, h.n))
    starts = rng.uniform(-1, 1, (restarts, h.n))

    def values():
        for x in xs:
            mod.form_value(idx, w, x, s)

    def grads():
        for x in xs:
            mod.form_value_grad(idx, w, x, s)

    best = []

    def solve():
        best.clear()
        for x0 in starts:
            best.append(mod.ascend(idx, w, x0, s, p, 10000, 1e-8, 1.0, 0.5, 1e-4, True)[1])

    return {"value": _best(values, repeat) / len(xs),
            "grad": _best(grads, repeat) / len(xs),
            "solve": _best(solve, repeat),
            "max": max(best)}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--restarts", type=int, default=16)
    args = ap.parse_args()
    try:
        cy = kernels.get_backend("cython")
    except ImportError:
        raise SystemExit("compiled extension not built; run `pip install -e . --no-build-isolation`")
    py = kernels.get_backend("python")

    head = f"{'instance':18s} {'m':>5s} {'op':>6s} {'cython':>11s} {'python':>11s} {'speedup':>8s}"
    print(head)
    print("-" * len(head))
    for name, make, p in CASES:
        h = make()
        a = bench(cy, h, p, args.repeat, args.restarts)
        b = bench(py, h, p, args.repeat, args.restarts)
        for op in ("value", "grad", "solve"):
            print(f"{name:18s} {h.m:5d} {op:>6s} {a[op]:11.3e} {b[op]:11.3e} {b[op] / a[op]:7.1f}x")
        print(f"{'':18s} {'':5s} {'max':>6s} {a['max']:11.6g} {b['max']:11.6g}"
              f"  rel diff {abs(a['max'] - b['max']) / abs(b['max']):.1e}")


if __name__ == "__main__":
    main()
