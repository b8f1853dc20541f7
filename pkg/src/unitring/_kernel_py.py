"""Pure-Python implementations of the hot sieve kernels.

unitring.kernel prefers the compiled extension (_kernel) and falls back to
this module.  Both backends must return bit-identical results; the test
suite cross-checks them.
"""

BACKEND = "python"


def trial_divide(n, primes):
    """Strip all prime factors of n found in the sorted table `primes`.

    Returns (factors, cofactor) where factors is a list of (p, e) pairs in
    increasing p and cofactor carries whatever is left (1 if fully split).
    Stops early once p*p > n.
    """
    factors = []
    for p in primes:
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            factors.append((p, e))
    if n > 1 and primes and n <= primes[-1] * primes[-1]:
        # Cofactor below the square of the table limit is prime.
        factors.append((n, 1))
        n = 1
    return factors, n


def power_free_part_known(n, m, primes):
    """Three-way m-free test for n by trial division over `primes`.

    Returns 1 if n is certainly m-free, 0 if certainly not, 2 if the
    cofactor after trial division leaves the question open.
    """
    for p in primes:
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            if e >= m:
                return 0
    if n == 1 or (primes and n <= primes[-1] * primes[-1]):
        return 1
    return 2
