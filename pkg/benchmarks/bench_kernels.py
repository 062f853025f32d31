"""Compare the compiled kernels with the pure-Python fallback.

Usage: python3 benchmarks/bench_kernels.py [--repeat N] [--seed S]

Times the raw kernels on random Laurent polynomials, then the canonical basis
of the Grassmannian Gr(2,4) end to end under each backend (in a subprocess so
the backend choice at import is honoured).
"""

import argparse
import os
import random
import subprocess
import sys
import timeit

from gkmk import _pykernels

try:
    from gkmk import _ckernels
except ImportError:
    _ckernels = None


def rand_poly(rng, n, terms, span=4):
    out = {}
    for _ in range(terms):
        e = tuple(rng.randint(-span, span) for _ in range(n))
        out[e] = out.get(e, 0) + rng.randint(-9, 9)
    return {k: v for k, v in out.items() if v}


def int_quo(c, d):
    q, r = divmod(c, d)
    return None if r else q


def kernel_cases(rng):
    a, b = rand_poly(rng, 3, 40), rand_poly(rng, 3, 40)
    c = rand_poly(rng, 3, 12)
    prod = _pykernels.mul(a, c)
    mat = [[1, 0, 2], [0, 1, -1], [0, 0, 1]]
    return {
        "mul 40x40": lambda k: k.mul(a, b),
        "divide exact": lambda k: k.divide(prod, c, int_quo),
        "axpy": lambda k: k.axpy(dict(a), b, 3, (1, 0, -1)),
        "linear_map": lambda k: k.linear_map(a, mat),
    }


E2E = (
    "import time;from gkmk import gkm,canon,kernels;"
    "g,c=gkm.gen_grassmannian(2,4);o=gkm.orient(g,gkm.grassmannian_polarization(4,c));"
    "t=time.perf_counter();canon.basis(g,o);print(kernels.BACKEND,time.perf_counter()-t)"
)


def end_to_end(pure):
    env = dict(os.environ, GKMK_PURE_PYTHON="1" if pure else "0")
    out = subprocess.run([sys.executable, "-c", E2E], env=env, capture_output=True, text=True, check=True)
    backend, seconds = out.stdout.split()
    return backend, float(seconds)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    if _ckernels is None:
        print("compiled kernels are not built; only the fallback can be timed")
    cases = kernel_cases(random.Random(args.seed))
    print(f"{'kernel':<16}{'python (us)':>14}{'cython (us)':>14}{'speedup':>10}")
    for name, fn in cases.items():
        tp = timeit.timeit(lambda: fn(_pykernels), number=args.repeat) / args.repeat * 1e6
        if _ckernels is None:
            print(f"{name:<16}{tp:>14.1f}{'-':>14}{'-':>10}")
            continue
        assert fn(_pykernels) == fn(_ckernels), name
        tc = timeit.timeit(lambda: fn(_ckernels), number=args.repeat) / args.repeat * 1e6
        print(f"{name:<16}{tp:>14.1f}{tc:>14.1f}{tp / tc:>9.2f}x")

    print()
    for pure in (True, False):
        backend, secs = end_to_end(pure)
        print(f"Gr(2,4) basis, {backend:<7} backend: {secs * 1e3:.1f} ms")


if __name__ == "__main__":
    main()
