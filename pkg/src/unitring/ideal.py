"""Ideals of the ring of integers as canonical HNF lattices.

An ideal is stored as the row-style Hermite normal form of its coordinate
lattice on the integral basis, so equality is matrix equality and the norm
is the diagonal product.  Prime splitting is Kummer-Dedekind on the
defining polynomial; fields whose integral basis is not a power basis get
an explicit error at primes dividing the index rather than a wrong answer.
"""

from . import fpoly
from .intfactor import factor as factor_int
from .linalg import (
    det_triangular,
    hnf,
    in_lattice,
    lattice_intersection,
    lattice_sum,
    quotient_box,
    reduce_mod_lattice,
    residue_transversal,
    vec_mat,
)

RESIDUE_CAP = 10**6


class NonMonogenicError(NotImplementedError):
    """Splitting requested at a prime dividing [O_K : Z[theta]]."""


class ResidueCapError(ValueError):
    """A brute-force residue enumeration would exceed the configured cap."""


class IdealLattice:
    """Nonzero integral ideal of the maximal order, in canonical HNF."""

    __slots__ = ("field", "hnf", "_norm", "_factors")

    def __init__(self, field, hnf_rows, _validated=False):
        self.field = field
        self.hnf = hnf_rows
        self._norm = None
        self._factors = None
        if not _validated:
            if len(hnf_rows) != field.degree:
                raise ValueError("zero or non-full-rank ideal rejected")
            self._check_module()

    def _check_module(self):
        for row in self.hnf:
            alpha = self.field.element_from_coords_unchecked(row)
            for j in range(self.field.degree):
                basis_j = self.field.element_from_coords_unchecked(
                    tuple(1 if k == j else 0 for k in range(self.field.degree))
                )
                prod = alpha * basis_j
                if not in_lattice(prod.coords, self.hnf):
                    raise ValueError("lattice is not an O_K-module")

    # -- constructors --------------------------------------------------------

    @classmethod
    def from_generators(cls, field, elements):
        """Ideal generated by the given elements (as an O_K-module)."""
        rows = []
        for g in elements:
            rows.extend(field.mult_matrix(g))
        h = hnf(rows)
        if len(h) != field.degree:
            raise ValueError("zero ideal rejected")
        return cls(field, h, _validated=True)

    @classmethod
    def principal(cls, alpha):
        return cls.from_generators(alpha.field, [alpha])

    @classmethod
    def unit_ideal(cls, field):
        from .linalg import identity

        return cls(field, identity(field.degree), _validated=True)

    @classmethod
    def from_integer(cls, field, q):
        if q == 0:
            raise ValueError("zero ideal rejected")
        return cls.principal(field.rational(abs(q)))

    # -- basic data -----------------------------------------------------------

    @property
    def norm(self):
        if self._norm is None:
            self._norm = abs(det_triangular(self.hnf))
        return self._norm

    def is_unit_ideal(self):
        return self.norm == 1

    def __eq__(self, other):
        return (
            isinstance(other, IdealLattice)
            and self.field is other.field
            and self.hnf == other.hnf
        )

    def __hash__(self):
        return hash((id(self.field), self.hnf))

    def __repr__(self):
        return f"IdealLattice(norm={self.norm})"

    def sort_key(self):
        return (self.norm, self.hnf)

    # -- arithmetic -----------------------------------------------------------

    def __mul__(self, other):
        field = self.field
        gens = []
        rows_b = other.hnf if isinstance(other, IdealLattice) else other
        for ra in self.hnf:
            a = field.element_from_coords_unchecked(ra)
            for rb in rows_b:
                b = field.element_from_coords_unchecked(rb)
                gens.append((a * b).coords)
        return IdealLattice(field, hnf(gens), _validated=True)

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative ideal powers not supported")
        out = IdealLattice.unit_ideal(self.field)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __add__(self, other):
        h = lattice_sum(self.hnf, other.hnf)
        return IdealLattice(self.field, h, _validated=True)

    def intersect(self, other):
        h = lattice_intersection(self.hnf, other.hnf)
        return IdealLattice(self.field, h, _validated=True)

    def contains(self, alpha):
        return in_lattice(alpha.coords, self.hnf)

    def contains_ideal(self, other):
        return all(in_lattice(row, self.hnf) for row in other.hnf)

    def divides(self, other):
        """self | other, i.e. other is contained in self."""
        return self.contains_ideal(other)

    def is_coprime(self, other):
        return (self + other).is_unit_ideal()

    def reduce(self, alpha):
        """Canonical representative of alpha modulo the ideal."""
        return self.field.element(reduce_mod_lattice(alpha.coords, self.hnf))

    def residues(self, cap=RESIDUE_CAP):
        """Stream a complete residue system, deterministically ordered."""
        if self.norm > cap:
            raise ResidueCapError(f"residue system of size {self.norm} exceeds cap {cap}")
        for v in residue_transversal(self.hnf):
            yield self.field.element(v)

    def residues_of_sublattice(self, sub_rows, cap=RESIDUE_CAP):
        """Transversal of the sublattice sub_rows inside this ideal lattice."""
        count = abs(det_triangular(hnf(sub_rows))) // self.norm
        if count > cap:
            raise ResidueCapError(f"residue system of size {count} exceeds cap {cap}")
        yield from quotient_box(hnf(sub_rows), self.hnf)

    # -- factorization ---------------------------------------------------------

    def factor(self):
        """[(PrimeIdealData, exponent)] sorted by (p, residue degree, poly)."""
        if self._factors is not None:
            return self._factors
        field = self.field
        out = []
        for p, _ in factor_int(self.norm):
            primes = split_prime(field, p)
            for pid in primes:
                e = self.valuation_at(pid)
                if e:
                    out.append((pid, e))
        check = 1
        for pid, e in out:
            check *= pid.norm**e
        if check != self.norm:
            raise ArithmeticError("factorization norm mismatch")
        out.sort(key=lambda t: t[0].sort_key())
        self._factors = out
        return out

    def valuation_at(self, pid):
        """Exact valuation v_P(self) by iterated power containment."""
        if not pid.ideal.divides(self):
            return 0
        v = 1
        power = pid.ideal
        while True:
            power = power * pid.ideal
            if power.divides(self):
                v += 1
            else:
                return v

    def support(self):
        return [pid for pid, _ in self.factor()]


class PrimeIdealData:
    """A prime ideal above p, from the Kummer-Dedekind factorization."""

    __slots__ = ("p", "generator_poly", "residue_degree", "ramification", "ideal")

    def __init__(self, p, generator_poly, residue_degree, ramification, ideal):
        self.p = p
        self.generator_poly = generator_poly
        self.residue_degree = residue_degree
        self.ramification = ramification
        self.ideal = ideal

    @property
    def norm(self):
        return self.p**self.residue_degree

    @property
    def hnf(self):
        return self.ideal.hnf

    def residue_field(self):
        return fpoly.ResidueField(self.p, self.generator_poly)

    def sort_key(self):
        return (self.p, self.residue_degree, self.generator_poly)

    def __eq__(self, other):
        return (
            isinstance(other, PrimeIdealData)
            and self.ideal.field is other.ideal.field
            and self.p == other.p
            and self.generator_poly == other.generator_poly
        )

    def __hash__(self):
        return hash((id(self.ideal.field), self.p, self.generator_poly))

    def __repr__(self):
        return f"PrimeIdeal(p={self.p}, f={self.residue_degree}, e={self.ramification})"


def power_basis_index(field):
    """[O_K : Z[theta]] for the given integral basis."""
    n = field.degree
    rows = []
    power = field.one
    for _ in range(n):
        rows.append(power.coords)
        power = power * field.theta
    h = hnf(rows)
    if len(h) != n:
        raise ArithmeticError("theta powers do not span")
    return abs(det_triangular(h))


def split_prime(field, p):
    """Prime ideals above p by Kummer-Dedekind, sorted deterministically."""
    cache = getattr(field, "_prime_cache", None)
    if cache is None:
        cache = field._prime_cache = {}
    if p in cache:
        return cache[p]
    idx = power_basis_index(field)
    if idx % p == 0:
        raise NonMonogenicError(
            f"prime {p} divides the index [O_K : Z[theta]] = {idx}; "
            "Kummer-Dedekind splitting is unavailable on this basis"
        )
    factors = fpoly.factor_mod_p(field.min_poly, p)
    out = []
    for g, e in factors:
        gen = field.from_theta_poly(g)
        ideal = IdealLattice.from_generators(field, [field.rational(p), gen])
        pid = PrimeIdealData(p, g, len(g) - 1, e, ideal)
        if pid.norm != ideal.norm:
            raise ArithmeticError("prime ideal norm mismatch")
        out.append(pid)
    out.sort(key=lambda q: q.sort_key())
    cache[p] = out
    return out


def mobius(ideal):
    """Moebius function: (-1)^k on squarefree ideals with k primes, else 0."""
    if ideal.is_unit_ideal():
        return 1
    fac = ideal.factor()
    if any(e >= 2 for _, e in fac):
        return 0
    return -1 if len(fac) % 2 else 1


def is_mfree(ideal, m):
    """True iff no prime ideal power P^m divides the ideal.

    Fast path: if the rational integer norm is m-free then so is the ideal,
    because P^m | a forces p^m | norm(a).
    """
    if m < 2:
        raise ValueError("m must be at least 2")
    from .intfactor import is_power_free

    if ideal.is_unit_ideal():
        return True
    if is_power_free(ideal.norm, m):
        return True
    return all(e < m for _, e in ideal.factor())


def element_is_mfree(alpha, m):
    """m-freeness of the principal ideal (alpha), avoiding full HNF work.

    Checks the integer norm first; only when that fails does it compute
    valuations at the primes whose m-th power could divide.
    """
    from .intfactor import factor as ifactor

    nrm = abs(alpha.norm())
    if nrm == 0:
        raise ValueError("zero element")
    if nrm == 1:
        return True
    from .intfactor import is_power_free

    if is_power_free(nrm, m):
        return True
    field = alpha.field
    for p, e in ifactor(nrm):
        if e < m:
            continue
        for pid in split_prime(field, p):
            if element_valuation(alpha, pid) >= m:
                return False
    return True


# PrimeIdealData uses __slots__; power caches live in a side table.
_POWER_CACHE = {}


def prime_power(pid, k):
    """P^k with caching (k >= 1)."""
    powers = _POWER_CACHE.setdefault(pid, [pid.ideal])
    while len(powers) < k:
        powers.append(powers[-1] * pid.ideal)
    return powers[k - 1]


def element_valuation(alpha, pid):
    """v_P(alpha) by iterated membership in cached powers of P."""
    if not pid.ideal.contains(alpha):
        return 0
    v = 1
    while prime_power(pid, v + 1).contains(alpha):
        v += 1
    return v


def is_fixed_divisor(poly_coeffs, ideal, cap=RESIDUE_CAP):
    """True iff the ideal contains f(beta) for every residue beta.

    f is given by its AlgebraicInt coefficients, constant first.  One full
    residue system suffices since f(beta + gamma) = f(beta) mod the ideal
    for gamma in the ideal.
    """
    field = ideal.field
    for beta in ideal.residues(cap):
        val = field.zero
        for c in reversed(poly_coeffs):
            val = val * beta + c
        if not ideal.contains(val):
            return False
    return True


def iter_ideals(field, max_norm):
    """All nonzero ideals of norm <= max_norm, sorted by (norm, hnf)."""
    from .intfactor import is_prime

    prime_pool = []
    for p in range(2, max_norm + 1):
        if not is_prime(p):
            continue
        for pid in split_prime(field, p):
            if pid.norm <= max_norm:
                prime_pool.append(pid)
    out = []

    def rec(idx, current, norm):
        out.append(current)
        for i in range(idx, len(prime_pool)):
            pid = prime_pool[i]
            nxt_norm = norm * pid.norm
            if nxt_norm > max_norm:
                continue
            nxt = current * pid.ideal
            while nxt_norm <= max_norm:
                rec(i + 1, nxt, nxt_norm)
                nxt_norm *= pid.norm
                if nxt_norm <= max_norm:
                    nxt = nxt * pid.ideal

    rec(0, IdealLattice.unit_ideal(field), 1)
    out.sort(key=lambda a: a.sort_key())
    return out
