"""Backend selection for the sieve hot kernels.

Imports the compiled extension when present, otherwise the pure-Python
twin.  The compiled kernels only accept inputs below 2**62; the wrappers
here retry oversized inputs on the Python backend so callers never see the
difference.
"""

from array import array

from . import _kernel_py

try:
    from . import _kernel  # compiled extension, optional

    BACKEND = _kernel.BACKEND
except ImportError:  # pragma: no cover - depends on build environment
    _kernel = None
    BACKEND = _kernel_py.BACKEND


def prime_table(limit):
    """array('Q') of all primes <= limit (simple sieve, cached by caller)."""
    if limit < 2:
        return array("Q", [])
    sieve = bytearray([1]) * (limit + 1)
    sieve[0] = sieve[1] = 0
    p = 2
    while p * p <= limit:
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(sieve[p * p :: p]))
        p += 1
    return array("Q", (i for i in range(limit + 1) if sieve[i]))


def trial_divide(n, primes):
    if _kernel is not None:
        try:
            return _kernel.trial_divide(n, primes)
        except OverflowError:
            pass
    return _kernel_py.trial_divide(n, primes)


def power_free_part_known(n, m, primes):
    if _kernel is not None:
        try:
            return _kernel.power_free_part_known(n, m, primes)
        except OverflowError:
            pass
    return _kernel_py.power_free_part_known(n, m, primes)
