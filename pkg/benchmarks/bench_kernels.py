"""Time the compiled kernels against the pure-Python twin.

    python benchmarks/bench_kernels.py --repeat 5
"""

import argparse
import time

import numpy as np

from heckesharp import kernels
from heckesharp.catalog import green_search
from heckesharp.hecke import RootDatumGL


def _hecke_products(seed, n_pairs):
    datum = RootDatumGL([(3, 0), (2, 1)])
    rng = np.random.default_rng(seed)
    pairs = [(datum.random_element(rng, n_terms=4, coord=3), datum.random_element(rng, n_terms=4, coord=3))
             for _ in range(n_pairs)]
    return lambda: [a * b for a, b in pairs]


def _green(q, d, m):
    return lambda: green_search(q, d, m)


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--pairs", type=int, default=20, help="random Hecke products per run")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    cases = [
        (f"hecke products GL3 x GL2 ({args.pairs} pairs)", _hecke_products(args.seed, args.pairs)),
        ("green search q=3 d=3 m=2", _green(3, 3, 2)),
        ("green search q=5 d=2 m=2", _green(5, 2, 2)),
        ("green search q=2 d=5 m=3", _green(2, 5, 3)),
    ]
    backends = kernels.available_backends()
    previous = kernels.BACKEND
    rows = []
    try:
        for name, fn in cases:
            row = {}
            for b in backends:
                kernels.set_backend(b)
                row[b] = best_of(fn, args.repeat)
            rows.append((name, row))
    finally:
        kernels.set_backend(previous)

    width = max(len(n) for n, _ in rows)
    print(f"{'case':<{width}}  " + "  ".join(f"{b:>10}" for b in backends) + "   speedup")
    for name, row in rows:
        cells = "  ".join(f"{row[b] * 1e3:8.2f}ms" for b in backends)
        speed = f"{row['python'] / row['compiled']:7.1f}x" if "compiled" in row else "      -"
        print(f"{name:<{width}}  {cells}  {speed}")


if __name__ == "__main__":
    main()
