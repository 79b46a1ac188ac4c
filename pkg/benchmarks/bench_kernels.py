"""Time the compiled and pure-Python kernels side by side.

    python benchmarks/bench_kernels.py [--repeat N] [--max-crossings C]

Prints one row per workload with the best-of-N wall time of each backend
and checks that both return the same answer.
"""

from __future__ import annotations

import argparse
import math
import time

import numpy as np

from brunnian import _kernels_py
from brunnian.diagram import compile_program, delete_component, parse_program
from brunnian.families import FamilySpec, build

try:
    from brunnian import _kernels_c
except ImportError:
    _kernels_c = None

TREFOIL = "cup 1\ncup 2\ncross 1 over\ncross 1 over\ncross 1 over\ncap 2\ncap 1\n"


def best_of(repeat, fn, *args):
    best, result = math.inf, None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, result


def pd_array(d):
    labels = {a: i for i, a in enumerate(sorted(set(d.arcs)))}
    pd = np.array([[labels[x] for x in tup] for tup in d.crossings], dtype=np.int32)
    return np.ascontiguousarray(pd), len(labels)


def bracket_workloads(max_crossings):
    cases = [
        ("trefoil", compile_program(parse_program(TREFOIL))),
        ("Br(1,1)", build(FamilySpec.br(1, 1))),
        ("Ln(2) - 1 comp", delete_component(build(FamilySpec("Ln", 2)), 0)),
        ("Br(1,1,1)", build(FamilySpec.br(1, 1, 1))),
        ("Br(2,2)", build(FamilySpec.br(2, 2))),
        ("Br(1,2,1)", build(FamilySpec.br(1, 2, 1))),
        ("Br(2,1,2)", build(FamilySpec.br(2, 1, 2))),
    ]
    for name, d in cases:
        if d.crossing_count() <= max_crossings:
            yield name, d


def same_histogram(a, b):
    a, b = np.asarray(a), np.asarray(b)
    rows, cols = max(a.shape[0], b.shape[0]), max(a.shape[1], b.shape[1])
    pad = lambda h: np.pad(h, ((0, rows - h.shape[0]), (0, cols - h.shape[1])))  # noqa: E731
    return np.array_equal(pad(a), pad(b))


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--max-crossings", type=int, default=24)
    args = parser.parse_args()
    if _kernels_c is None:
        raise SystemExit("compiled extension not built; run `pip install -e . --no-build-isolation`")

    header = f"{'workload':<28}{'cython s':>12}{'python s':>12}{'ratio':>9}  agree"
    print(header)
    print("-" * len(header))

    def row(name, fast, slow, agree):
        ratio = slow / fast if fast > 0 else math.inf
        print(f"{name:<28}{fast:>12.5f}{slow:>12.5f}{ratio:>8.1f}x  {agree}")

    for name, d in bracket_workloads(args.max_crossings):
        pd, narcs = pd_array(d)
        fast, h1 = best_of(args.repeat, _kernels_c.bracket_histogram, pd, narcs)
        slow, h2 = best_of(args.repeat, _kernels_py.bracket_histogram, pd, narcs)
        row(f"bracket {name} ({d.crossing_count()}x)", fast, slow, same_histogram(h1, h2))

    for nterms in (10_000, 1_000_000, 10_000_000):
        fast, a = best_of(args.repeat, _kernels_c.fourier_clausen, 0.7, nterms)
        slow, b = best_of(args.repeat, _kernels_py.fourier_clausen, 0.7, nterms)
        row(f"fourier sum N={nterms:.0e}", fast, slow, abs(a - b) < 1e-12)


if __name__ == "__main__":
    main()
