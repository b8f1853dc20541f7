import pytest

from unitring.field import NumberField
from unitring.ideal import (
    IdealLattice,
    NonMonogenicError,
    ResidueCapError,
    element_is_mfree,
    element_valuation,
    is_fixed_divisor,
    is_mfree,
    iter_ideals,
    mobius,
    power_basis_index,
    split_prime,
)


@pytest.fixture(scope="module")
def q5():
    return NumberField([-1, -1, 1], name="Q(sqrt5)")


@pytest.fixture(scope="module")
def q5_ideals_200(q5):
    return iter_ideals(q5, 200)


def test_norm_examples(q5):
    assert IdealLattice.unit_ideal(q5).norm == 1
    assert IdealLattice.from_integer(q5, 2).norm == 4
    sqrt5 = 2 * q5.theta - q5.one
    assert IdealLattice.principal(sqrt5).norm == 5


def test_zero_ideal_rejected(q5):
    with pytest.raises(ValueError):
        IdealLattice.principal(q5.zero)
    with pytest.raises(ValueError):
        IdealLattice.from_integer(q5, 0)


def test_splitting_examples(q5):
    # (5) ramifies: X^2 - X - 1 == (X+2)^2 mod 5.
    fac5 = IdealLattice.from_integer(q5, 5).factor()
    assert len(fac5) == 1 and fac5[0][1] == 2
    assert fac5[0][0].residue_degree == 1 and fac5[0][0].ramification == 2
    # (2) inert.
    fac2 = IdealLattice.from_integer(q5, 2).factor()
    assert len(fac2) == 1 and fac2[0][1] == 1
    assert fac2[0][0].residue_degree == 2
    # (11) splits: X^2 - X - 1 == (X-4)(X-8) mod 11.
    fac11 = IdealLattice.from_integer(q5, 11).factor()
    assert len(fac11) == 2 and all(e == 1 for _, e in fac11)
    assert all(pid.norm == 11 for pid, _ in fac11)
    gens = sorted(pid.generator_poly for pid, _ in fac11)
    assert gens == [(3, 1), (7, 1)]  # X-8 = X+3, X-4 = X+7 mod 11


def test_norm_multiplicativity_up_to_500(q5):
    ideals = iter_ideals(q5, 22)
    for a in ideals:
        for b in ideals:
            if a.norm * b.norm <= 500:
                assert (a * b).norm == a.norm * b.norm


def test_mobius_sum_up_to_200(q5, q5_ideals_200):
    # sum_{a | b} mu(a) = [b == (1)], over every ideal b of norm <= 200.
    for b in q5_ideals_200:
        fac = b.factor()
        divisor_sum = 0

        def rec(idx, current):
            nonlocal divisor_sum
            if idx == len(fac):
                divisor_sum += mobius(current)
                return
            pid, e = fac[idx]
            cur = current
            for k in range(e + 1):
                rec(idx + 1, cur)
                if k < e:
                    cur = cur * pid.ideal

        rec(0, IdealLattice.unit_ideal(b.field))
        assert divisor_sum == (1 if b.is_unit_ideal() else 0), f"b norm {b.norm}"


def test_mobius_examples(q5):
    assert mobius(IdealLattice.unit_ideal(q5)) == 1
    p2 = split_prime(q5, 2)[0]
    assert mobius(p2.ideal) == -1
    assert mobius(IdealLattice.from_integer(q5, 5)) == 0
    assert mobius(IdealLattice.from_integer(q5, 11)) == 1  # two distinct primes


def test_mfree_examples(q5):
    th = q5.theta
    assert not is_mfree(IdealLattice.from_integer(q5, 4), 2)
    # Element of norm -19: theta^2 - 4*(2 + sqrt5).
    eta = q5.rational(2) + (2 * th - q5.one)
    val = th * th - 4 * eta
    assert val.norm() == -19
    assert is_mfree(IdealLattice.principal(val), 2)
    assert not is_mfree(IdealLattice.from_integer(q5, 5), 2)
    assert is_mfree(IdealLattice.from_integer(q5, 5), 3)
    assert element_is_mfree(val, 2)
    assert not element_is_mfree(q5.rational(2) * q5.rational(2), 2)


def test_element_valuation(q5):
    p5 = split_prime(q5, 5)[0]
    sqrt5 = 2 * q5.theta - q5.one
    assert element_valuation(sqrt5, p5) == 1
    assert element_valuation(q5.rational(5), p5) == 2
    assert element_valuation(q5.rational(25), p5) == 4
    assert element_valuation(q5.one, p5) == 0


def test_fixed_divisor_examples(q5):
    th = q5.theta
    two = IdealLattice.from_integer(q5, 2)
    unit = IdealLattice.unit_ideal(q5)
    # f = X^2 - 4 theta: f(1) = 1 - 4 theta is odd.
    f1 = [(-4) * th, q5.zero, q5.one]
    assert is_fixed_divisor(f1, unit)
    assert not is_fixed_divisor(f1, two)
    # f = X^2 - X: f(theta) = theta^2 - theta = 1 not in (2).
    f2 = [q5.zero, -q5.one, q5.one]
    assert not is_fixed_divisor(f2, two)


def test_residue_systems(q5):
    two = IdealLattice.from_integer(q5, 2)
    res = list(two.residues())
    assert len(res) == 4
    assert len({two.reduce(r).coords for r in res}) == 4
    with pytest.raises(ResidueCapError):
        list(IdealLattice.from_integer(q5, 2000).residues(cap=100))


def test_power_basis_index(q5):
    assert power_basis_index(q5) == 1
    alt = NumberField(
        [-5, 0, 1],
        integral_basis=[[1, 0], [__import__("fractions").Fraction(1, 2),
                                 __import__("fractions").Fraction(1, 2)]],
    )
    assert power_basis_index(alt) == 2
    with pytest.raises(NonMonogenicError):
        split_prime(alt, 2)
    # Odd primes are coprime to the index and must split fine.
    assert len(split_prime(alt, 11)) == 2


def test_factorization_deterministic(q5):
    a = IdealLattice.from_integer(q5, 44)  # 4 * 11
    f1 = [(pid.sort_key(), e) for pid, e in a.factor()]
    b = IdealLattice.from_integer(q5, 44)
    f2 = [(pid.sort_key(), e) for pid, e in b.factor()]
    assert f1 == f2


def test_ideal_sum_and_coprime(q5):
    p11a, p11b = [pid.ideal for pid, _ in IdealLattice.from_integer(q5, 11).factor()]
    assert p11a.is_coprime(p11b)
    assert not p11a.is_coprime(p11a)
    assert (p11a + p11b).is_unit_ideal()
    assert p11a.intersect(p11b) == p11a * p11b


def test_iter_ideals_complete(q5, q5_ideals_200):
    # Ideal counts by norm must match the Dedekind zeta coefficients:
    # a_n = #{ideals of norm n}; multiplicative; for Q(sqrt5):
    # split p (p = +-1 mod 5): a_{p^k} = k+1; inert: a_{p^2k} = 1;
    # ramified 5: a_{5^k} = 1.
    from collections import Counter

    counts = Counter(a.norm for a in q5_ideals_200)
    assert counts[1] == 1
    assert counts[4] == 1 and counts[2] == 0  # 2 inert
    assert counts[5] == 1 and counts[25] == 1
    assert counts[11] == 2 and counts[121] == 3
    assert counts[19] == 2
    assert counts[9] == 1  # 3 inert
    assert counts[44] == 2  # 4 * 11: 1 * 2
