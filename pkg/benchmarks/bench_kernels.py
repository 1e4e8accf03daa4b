"""Time the brute-force permutation kernels under both backends.

    python benchmarks/bench_kernels.py [--n 8] [--repeat 3]

The first numba call includes JIT compilation and is reported separately.
"""

import argparse
import time

from kottrace import _kernels
from kottrace.weylcomb import enumerate_G_theta_PQ


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=8)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    n = args.n
    perms = _kernels.all_permutations(n)
    lam = (2,) * (n // 2) + (1,) * (n % 2)
    mu = (1,) + (2,) * ((n - 1) // 2) + (1,) * ((n - 1) % 2)
    print(f"n = {n}, {len(perms)} permutations, lam = {lam}, mu = {mu}")

    impls = ["numpy"] + (["numba"] if _kernels.HAVE_NUMBA else [])
    for impl in impls:
        t0 = time.perf_counter()
        _kernels.double_coset_min_ranks(lam, mu, impl)
        first = time.perf_counter() - t0
        cosets = best_of(lambda: _kernels.double_coset_min_ranks(lam, mu, impl), args.repeat)
        inv = best_of(lambda: _kernels.inversion_counts(perms, impl), args.repeat)
        print(f"{impl:6s} first call {first:8.3f}s  min-ranks {cosets:8.4f}s  inversions {inv:8.4f}s")

    t0 = time.perf_counter()
    reps = enumerate_G_theta_PQ((2,) * 6, (2,) * 6)
    print(f"matrix enumeration, n = 12: {len(reps)} theta representatives in {time.perf_counter() - t0:.4f}s")


if __name__ == "__main__":
    main()
