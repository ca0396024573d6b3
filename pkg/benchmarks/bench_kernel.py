#!/usr/bin/env python3
"""Benchmark the compiled kernel against the pure-Python fallback.

Times the raw kernel primitives and full engine runs through both backends
and prints a speedup table. Run from the repository root:

    python3 benchmarks/bench_kernel.py [--sizes 50,200,1000]
"""

import argparse
import random
import sys
import time

from treecover import _kernelpy as pure
from treecover import kernel
from treecover.hullcover import NaiveRayShooter, hull_cover_fast
from treecover.model import generate
from treecover.phicover import PHI, naive_phi_cover


def timeit(fn, repeats=3):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_primitives(backend, rng):
    pts = [(rng.randint(-500, 500), rng.randint(-500, 500)) for _ in range(6000)]

    def orient_loop():
        f = backend.orient
        for i in range(0, 6000 - 3, 3):
            f(pts[i][0], pts[i][1], pts[i + 1][0], pts[i + 1][1], pts[i + 2][0], pts[i + 2][1])

    def seg_loop():
        f = backend.seg_relation
        for i in range(0, 6000 - 4, 4):
            f(
                pts[i][0], pts[i][1], pts[i + 1][0], pts[i + 1][1],
                pts[i + 2][0], pts[i + 2][1], pts[i + 3][0], pts[i + 3][1],
            )

    return {"orient x2000": timeit(orient_loop), "seg_relation x1500": timeit(seg_loop)}


def bench_scan(backend, rng, n_obstacles=2000, shots=50):
    kinds, xs1, ys1, xs2, ys2 = [], [], [], [], []
    for _ in range(n_obstacles):
        kinds.append(pure.OB_SEGMENT)
        x1, y1 = rng.randint(-1000, 1000), rng.randint(-1000, 1000)
        x2, y2 = x1 + rng.randint(1, 20), y1 + rng.randint(-10, 10)
        xs1.append(x1)
        ys1.append(y1)
        xs2.append(x2)
        ys2.append(y2)
    tns = [0] * n_obstacles
    tds = [1] * n_obstacles
    owners = [i % 7 for i in range(n_obstacles)]
    parent = list(range(7))
    rays = [
        (rng.randint(-1000, 1000), rng.randint(-1000, 1000), rng.randint(-1000, 1000), rng.randint(-1000, 1000))
        for _ in range(shots)
    ]
    rays = [(ox, oy, tx, ty) for ox, oy, tx, ty in rays if (ox, oy) != (tx, ty)]

    def run():
        f = backend.scan
        for ox, oy, tx, ty in rays:
            f(ox, oy, tx, ty, kinds, xs1, ys1, xs2, ys2, tns, tds, owners, parent, 0)

    return timeit(run)


def bench_engine(kern, sizes):
    rows = []
    for n in sizes:
        inst = generate("combs", trees=max(2, n // 5), size=5, seed=1)

        def run():
            hull_cover_fast(
                inst, shooter_factory=lambda c, k, kern=kern: NaiveRayShooter(c, kern)
            )

        rows.append((inst.n, timeit(run)))
    return rows


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", default="50,200,1000")
    args = ap.parse_args(argv)
    sizes = [int(s) for s in args.sizes.split(",")]

    compiled = kernel.compiled
    if compiled is None:
        print("compiled kernel not built; nothing to compare", file=sys.stderr)
        return 1

    rng = random.Random(0)
    print(f"{'benchmark':<28}{'pure':>12}{'compiled':>12}{'speedup':>10}")
    for name, fn in (
        ("primitives", bench_primitives),
    ):
        p = fn(pure, random.Random(0))
        c = fn(compiled, random.Random(0))
        for key in p:
            print(f"{key:<28}{p[key]*1e3:>10.2f}ms{c[key]*1e3:>10.2f}ms{p[key]/c[key]:>9.1f}x")

    p = bench_scan(pure, random.Random(1))
    c = bench_scan(compiled, random.Random(1))
    print(f"{'shooter scan 2k obs x50':<28}{p*1e3:>10.2f}ms{c*1e3:>10.2f}ms{p/c:>9.1f}x")

    pe = bench_engine(pure, sizes)
    ce = bench_engine(compiled, sizes)
    for (n, tp), (_, tc) in zip(pe, ce):
        print(f"{f'hull_cover_fast n={n}':<28}{tp*1e3:>10.2f}ms{tc*1e3:>10.2f}ms{tp/tc:>9.1f}x")

    pn = timeit(lambda: naive_phi_cover(generate("combs", trees=20, size=5, seed=2), PHI["hull"]))
    print(f"\n(naive oracle n=100 for scale: {pn*1e3:.2f}ms with active backend "
          f"'{kernel.backend_name()}')")
    return 0


if __name__ == "__main__":
    sys.exit(main())
