#!/usr/bin/env python3
"""Benchmark the compiled trial-division kernels against the pure-Python
twins on the sieve's real workload: factoring norm values of f(alpha) =
alpha^2 - 4 theta over the region of volume x in Q(sqrt5).

Run after `pip install -e .`:  python3 bench/bench_kernel.py
"""

import time

from unitring import _kernel_py, kernel
from unitring.density import DensityParams, SievePolynomial, empirical_count
from unitring.field import NumberField
from unitring.geometry import RegionBox, enumerate_region
from unitring.linalg import identity
from unitring.order import SubOrder

try:
    from unitring import _kernel as _kernel_c
except ImportError:
    _kernel_c = None


def workload_norms(volume=4000):
    field = NumberField([-1, -1, 1])
    f = SievePolynomial.x_squared_minus(4 * field.theta)
    box = RegionBox.cube(field.signature, volume)
    norms = []
    for alpha in enumerate_region(field, box, identity(2)):
        val = f(alpha)
        if not val.is_zero():
            norms.append(abs(val.norm()))
    return norms


def time_backend(backend, norms, primes, repeat=3):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        acc = 0
        for n in norms:
            verdict = backend.power_free_part_known(n, 2, primes)
            if verdict == 2:
                fac, cof = backend.trial_divide(n, primes)
                acc += len(fac) + (cof > 1)
            else:
                acc += verdict
        best = min(best, time.perf_counter() - t0)
    return best, acc


def time_end_to_end(volume=2000):
    field = NumberField([-1, -1, 1])
    f = SievePolynomial.x_squared_minus(4 * field.theta)
    params = DensityParams(order=SubOrder.maximal(field), poly=f, excluded=(), m=2)
    box = RegionBox.cube(field.signature, volume)
    t0 = time.perf_counter()
    count = empirical_count(params, box)
    return time.perf_counter() - t0, count


def main():
    print(f"active backend: {kernel.BACKEND}")
    norms = workload_norms()
    print(f"workload: {len(norms)} norm values, max {max(norms)}")
    primes = kernel.prime_table(10**6)

    t_py, acc_py = time_backend(_kernel_py, norms, primes)
    print(f"pure python : {t_py * 1000:8.1f} ms   (checksum {acc_py})")
    if _kernel_c is not None:
        t_c, acc_c = time_backend(_kernel_c, norms, primes)
        if acc_c != acc_py:
            raise SystemExit("backend results disagree; kernels are broken")
        print(f"compiled    : {t_c * 1000:8.1f} ms   (checksum {acc_c})")
        print(f"speedup     : {t_py / t_c:8.1f} x")
    else:
        print("compiled    : not built (pip install -e . with a C toolchain)")

    t_e2e, count = time_end_to_end()
    print(f"end-to-end empirical_count(x=2000) with {kernel.BACKEND} kernels: "
          f"{t_e2e:.2f}s, N = {count}")


if __name__ == "__main__":
    main()
