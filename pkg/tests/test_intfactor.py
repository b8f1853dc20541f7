import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from unitring import kernel
from unitring.intfactor import factor, is_power_free, is_prime, is_squarefree_int


def brute_factor(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1
    if n > 1:
        out.append((n, 1))
    return out


@settings(max_examples=300, deadline=None)
@given(st.integers(min_value=2, max_value=10**6))
def test_factor_matches_bruteforce(n):
    assert factor(n) == brute_factor(n)


@settings(max_examples=200, deadline=None)
@given(st.integers(min_value=2, max_value=10**5), st.integers(min_value=2, max_value=4))
def test_power_free_matches_bruteforce(n, m):
    expected = all(e < m for _, e in brute_factor(n))
    assert is_power_free(n, m) == expected


def test_factor_products_reconstruct():
    for n in [2, 12, 360, 2**10, 999983, 10**12 + 39, 2_305_843_009_213_693_951]:
        prod = 1
        for p, e in factor(n):
            assert is_prime(p)
            prod *= p**e
        assert prod == n


def test_large_semiprime():
    p, q = 1_000_003, 1_000_033
    assert factor(p * q) == [(p, 1), (q, 1)]


def test_beyond_trial_limit_square():
    p = 10_000_019  # above the 10^6 trial table
    assert not is_power_free(p * p, 2)
    assert is_power_free(p * p, 3)
    assert factor(p * p) == [(p, 2)]


def test_is_prime_spot_values():
    assert is_prime(2) and is_prime(3) and is_prime(999983)
    assert not is_prime(1) and not is_prime(561) and not is_prime(10**12)
    # Carmichael-heavy stress
    for n in (341, 561, 645, 1105, 1729, 2465, 2821, 6601):
        assert not is_prime(n)


def test_squarefree_negative_input():
    assert is_squarefree_int(-5)
    assert not is_squarefree_int(-12)
    with pytest.raises(ValueError):
        is_power_free(0, 2)


def test_factor_one_and_sign():
    assert factor(1) == []
    assert factor(-12) == [(2, 2), (3, 1)]
