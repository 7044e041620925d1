"""Compare the compiled and pure-Python localization kernels.

Usage: python benchmarks/bench_kernel.py [--repeat N]

Each case builds an instanton series at a fixed exact point with both
backends, checks that the coefficients agree exactly and prints the best
wall time of ``--repeat`` runs.
"""

import argparse
import time

from qblowup import kernel
from qblowup.exact import make_param_point
from qblowup.nekrasov import instanton_series, standard_theory

CASES = [
    ("F4 order 6", 1, ("t",), (4 * 6 + 1,)),
    ("F4 order 9", 1, ("t",), (4 * 9 + 1,)),
    ("F5 order (3,3)", 2, ("t", "1/y"), (4 * 3 + 1, 4 * 3 + 1)),
    ("F5 order (5,5)", 2, ("t", "1/y"), (4 * 5 + 1, 4 * 5 + 1)),
    ("F6 order (2,2,2)", 3, ("x/t", "t", "1/y"), (4 * 2 + 1,) * 3),
]


def run(backend, rank, vars, trunc, point):
    kernel.clear_cache()
    t0 = time.perf_counter()
    s = instanton_series(standard_theory(rank), point, vars, trunc, backend=backend)
    return time.perf_counter() - t0, s


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    backends = kernel.available_backends()
    if "cython" not in backends:
        print("compiled kernel not available; only the pure-Python timings are shown")
    point = make_param_point(args.seed)
    print(f"{'case':<20}" + "".join(f"{b:>12}" for b in backends) + f"{'speedup':>10}")
    for name, rank, vars, trunc in CASES:
        best = {}
        ref = None
        for b in backends:
            times = []
            for _ in range(args.repeat):
                dt, s = run(b, rank, vars, trunc, point)
                times.append(dt)
            if ref is None:
                ref = s.coeffs
            elif s.coeffs != ref:
                raise SystemExit(f"{name}: backends disagree")
            best[b] = min(times)
        line = f"{name:<20}" + "".join(f"{best[b]:>11.3f}s" for b in backends)
        if "cython" in best:
            line += f"{best['python'] / best['cython']:>9.2f}x"
        print(line)


if __name__ == "__main__":
    main()
