# cython: language_level=3
# cython: boundscheck=False, wraparound=False
"""Compiled trial-division kernels for the sieve hot loop.

Mirrors _kernel_py exactly for inputs that fit in 64 bits; larger inputs
raise OverflowError and the dispatcher retries with the Python backend.
"""

from libc.stdint cimport uint64_t, int64_t

BACKEND = "c"

cdef uint64_t _U64_MAX_SAFE = (<uint64_t>1) << 62


def trial_divide(n_obj, primes):
    if n_obj < 0 or n_obj >= _U64_MAX_SAFE:
        raise OverflowError("trial_divide kernel handles n < 2**62 only")
    cdef uint64_t n = n_obj
    cdef uint64_t p
    cdef uint64_t last = 0
    cdef int e
    factors = []
    cdef uint64_t[::1] tab = primes
    cdef Py_ssize_t i, np = tab.shape[0]
    for i in range(np):
        p = tab[i]
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            factors.append((p, e))
    if np:
        last = tab[np - 1]
    if n > 1 and last and n <= last * last:
        factors.append((n, 1))
        n = 1
    return factors, n


def power_free_part_known(n_obj, m_obj, primes):
    if n_obj < 0 or n_obj >= _U64_MAX_SAFE:
        raise OverflowError("power_free kernel handles n < 2**62 only")
    cdef uint64_t n = n_obj
    cdef int m = m_obj
    cdef uint64_t p
    cdef uint64_t last = 0
    cdef int e
    cdef uint64_t[::1] tab = primes
    cdef Py_ssize_t i, np = tab.shape[0]
    for i in range(np):
        p = tab[i]
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            if e >= m:
                return 0
    if np:
        last = tab[np - 1]
    if n == 1 or (last and n <= last * last):
        return 1
    return 2
