"""The m-free value sieve: root counting, the Euler product density with a
rigorous tail, empirical counts over box regions, the admissible error
exponents, and the density-gap inequality for the order-versus-maximal
comparison.

Root counts modulo prime powers run through residue-field gcd counting
with Hensel lifting for simple roots; brute-force residue enumeration is
the independent oracle below the cap and the fallback for degenerate
roots.  The infinite Euler product is truncated with an explicit interval
tail, with every prime of bad reduction handled exactly no matter its
size, so the returned interval is rigorous.
"""

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from . import fpoly
from .field import AlgebraicInt, is_square_in_field
from .ideal import (
    IdealLattice,
    ResidueCapError,
    element_is_mfree,
    is_fixed_divisor,
    prime_power,
    split_prime,
)
from .intervals import PI, RatInterval
from .linalg import det_triangular, hnf, lattice_intersection, lattice_sum
from .geometry import RegionBox, enumerate_region

ROOT_CAP = 10**6


class FixedDivisorError(ValueError):
    """Some m-th prime power divides every value of the polynomial."""

    def __init__(self, witness):
        super().__init__(f"fixed divisor violation at {witness}")
        self.witness = witness


class SievePolynomial:
    """Polynomial over the order with AlgebraicInt coefficients, constant first."""

    __slots__ = ("field", "coeffs", "degree", "irreducible_certified")

    def __init__(self, coeffs, assume_irreducible=False):
        coeffs = list(coeffs)
        while len(coeffs) > 1 and coeffs[-1].is_zero():
            coeffs.pop()
        if len(coeffs) < 2:
            raise ValueError("degree must be at least 1")
        self.field = coeffs[0].field
        self.coeffs = tuple(coeffs)
        self.degree = len(coeffs) - 1
        if self.degree == 2:
            # Quadratic: irreducible over O_K iff the discriminant is a non-square.
            a, b, c = self.coeffs[2], self.coeffs[1], self.coeffs[0]
            disc = b * b - 4 * (a * c)
            self.irreducible_certified = not is_square_in_field(disc)
            if not self.irreducible_certified:
                raise ValueError("quadratic is reducible: discriminant is a square")
        else:
            self.irreducible_certified = bool(assume_irreducible)
            if not self.irreducible_certified:
                raise ValueError(
                    "irreducibility must be asserted by the caller for degree != 2"
                )

    @classmethod
    def x_squared_minus(cls, value):
        """X^2 - value, the workhorse shape."""
        f = value.field
        return cls([-value, f.zero, f.one])

    def __call__(self, alpha):
        val = self.field.zero
        for c in reversed(self.coeffs):
            val = val * alpha + c
        return val

    def derivative(self):
        out = []
        for i in range(1, len(self.coeffs)):
            out.append(self.coeffs[i] * i)
        return out

    def leading(self):
        return self.coeffs[-1]

    def in_order(self, order):
        return all(order.contains(c) for c in self.coeffs)

    def __repr__(self):
        return f"SievePolynomial(deg={self.degree})"


# ---------------------------------------------------------------------------
# Root counting


def _reduce_to_residue_field(poly, pid):
    """Image of the polynomial in F_q[X] for the residue field at pid.

    Returns the coefficient tuple over F_q (constant first).  Raises when a
    coordinate denominator is not invertible mod p (non-monogenic basis).
    """
    field_k = poly.field
    fq = pid.residue_field()
    out = []
    for c in poly.coeffs:
        out.append(_element_mod_p(field_k, c, fq))
    return fpoly.qtrim(out), fq


def _element_mod_p(field_k, alpha, fq):
    theta_poly = field_k.theta_poly_of(alpha)
    coeffs = []
    for x in theta_poly:
        x = Fraction(x)
        if x.denominator % fq.p == 0:
            raise fpoly_reduction_error(fq.p)
        coeffs.append((x.numerator * pow(x.denominator, -1, fq.p)) % fq.p)
    return fq.elem(coeffs)


def fpoly_reduction_error(p):
    from .ideal import NonMonogenicError

    return NonMonogenicError(
        f"coordinate denominators are not invertible mod {p}; power basis required"
    )


def count_roots_prime_power(poly, pid, e, cap=ROOT_CAP):
    """L(P^e): number of roots of the polynomial in O_K / P^e."""
    fbar, fq = _reduce_to_residue_field(poly, pid)
    if fbar == fpoly.ZERO_Q:
        # Every residue is a root as far as P^1; higher powers by brute force.
        if e == 1:
            return fq.q
        return _count_roots_bruteforce_power(poly, pid, e, cap)
    if e == 1:
        return fpoly.count_roots_in_fq(fbar, fq)
    dbar = fpoly.q_deriv(fbar, fq)
    count = 0
    for root in fpoly.roots_in_fq(fbar, fq):
        if dbar != fpoly.ZERO_Q and fpoly.q_eval(dbar, root, fq) != (0,):
            count += 1  # simple root lifts uniquely to every P^e
        else:
            count += _count_lifts_bruteforce(poly, pid, e, root, fq, cap)
    return count


def _lift_residue_element(field_k, root, fq):
    """An algebraic integer reducing to the residue-field element mod P."""
    return field_k.from_theta_poly(tuple(int(c) for c in root))


def _count_lifts_bruteforce(poly, pid, e, root, fq, cap):
    field_k = poly.field
    target = prime_power(pid, e)
    n_lifts = fq.q ** (e - 1)
    if n_lifts > cap:
        raise ResidueCapError(f"degenerate Hensel case needs {n_lifts} residues")
    rho = _lift_residue_element(field_k, root, fq)
    count = 0
    from .linalg import quotient_box

    for shift in quotient_box(target.hnf, pid.ideal.hnf):
        beta = rho + field_k.element(shift)
        if target.contains(poly(beta)):
            count += 1
    return count


def _count_roots_bruteforce_power(poly, pid, e, cap):
    target = prime_power(pid, e)
    if target.norm > cap:
        raise ResidueCapError(f"brute force over {target.norm} residues exceeds cap")
    count = 0
    for beta in target.residues(cap):
        if target.contains(poly(beta)):
            count += 1
    return count


def root_count(poly, ideal, cap=ROOT_CAP):
    """L(a): roots of the polynomial in O_K/a, by CRT over prime powers."""
    if ideal.is_unit_ideal():
        return 1
    total = 1
    for pid, e in ideal.factor():
        total *= count_roots_prime_power(poly, pid, e, cap)
    return total


def root_count_bruteforce(poly, ideal, cap=ROOT_CAP):
    """Independent oracle: enumerate all residues and evaluate."""
    if ideal.is_unit_ideal():
        return 1
    count = 0
    for beta in ideal.residues(cap):
        if ideal.contains(poly(beta)):
            count += 1
    return count


def root_count_order(poly, ideal, order, cap=ROOT_CAP):
    """L_O(a): roots in O/(a cap O).  CRT across comaximal contractions,
    brute force otherwise."""
    if not poly.in_order(order):
        raise ValueError("polynomial coefficients must lie in the order")
    if ideal.is_unit_ideal():
        return 1
    if order.is_maximal():
        return root_count(poly, ideal, cap)
    parts = [(pid, e) for pid, e in ideal.factor()]
    if len(parts) > 1:
        rows = [order.contract(prime_power(pid, e))[0] for pid, e in parts]
        comaximal = all(
            lattice_sum(rows[i], rows[j]) == order.basis_hnf
            for i in range(len(rows))
            for j in range(i + 1, len(rows))
        )
        if comaximal:
            total = 1
            for pid, e in parts:
                total *= root_count_order(poly, prime_power(pid, e), order, cap)
            return total
    return root_count_order_bruteforce(poly, ideal, order, cap)


def root_count_order_bruteforce(poly, ideal, order, cap=ROOT_CAP):
    rows, idx = order.contract(ideal)
    if idx > cap:
        raise ResidueCapError(f"order residue system of size {idx} exceeds cap")
    count = 0
    for alpha in order.residues_mod(rows, cap):
        if ideal.contains(poly(alpha)):
            count += 1
    return count


# ---------------------------------------------------------------------------
# Admissibility


def mfree_threshold(g):
    """Least integer m with m >= max(2, sqrt(2 g^2 + 1) - (g+1)/2)."""
    if g < 1:
        raise ValueError("degree must be at least 1")
    m = 2
    while (2 * m + g + 1) ** 2 < 4 * (2 * g * g + 1):
        m += 1
    return m


def find_fixed_divisor_mth_power(poly, m, samples=8, cap=ROOT_CAP):
    """A prime P with P^m a fixed divisor of the polynomial, or None.

    Any fixed divisor divides the ideal generated by finitely many values,
    so a gcd over a deterministic sample certifies absence.
    """
    field_k = poly.field
    gens = []
    alpha = field_k.zero
    probe = [field_k.zero, field_k.one, field_k.theta, field_k.theta + field_k.one]
    i = 2
    while len(probe) < samples:
        probe.append(field_k.rational(i))
        i += 1
    for alpha in probe:
        val = poly(alpha)
        if not val.is_zero():
            gens.append(val)
    if not gens:
        raise ValueError("polynomial vanishes on the whole sample")
    g_ideal = IdealLattice.principal(gens[0])
    for v in gens[1:]:
        g_ideal = g_ideal + IdealLattice.principal(v)
        if g_ideal.is_unit_ideal():
            return None
    if g_ideal.is_unit_ideal():
        return None
    for pid, e in g_ideal.factor():
        if e >= m:
            pm = prime_power(pid, m)
            if pm.norm <= cap and is_fixed_divisor(poly.coeffs, pm, cap):
                return pid
    return None


@dataclass(frozen=True)
class DensityParams:
    """Inputs of the sieve density: field, order, polynomial, exclusions, m."""

    order: object
    poly: SievePolynomial
    excluded: tuple
    m: int

    def __post_init__(self):
        order = self.order
        poly = self.poly
        if not poly.in_order(order):
            raise ValueError("polynomial must have coefficients in the order")
        if self.m < mfree_threshold(poly.degree):
            raise ValueError(
                f"m={self.m} below the admissible threshold "
                f"{mfree_threshold(poly.degree)} for degree {poly.degree}"
            )
        support = {pid for pid, _ in order.conductor().factor()}
        if not support <= set(self.excluded):
            raise ValueError("excluded primes must contain the conductor support")
        witness = find_fixed_divisor_mth_power(poly, self.m)
        if witness is not None:
            raise FixedDivisorError(witness)

    @property
    def field(self):
        return self.poly.field


@dataclass
class DensityReport:
    d_lower: Fraction
    d_upper: Fraction
    truncation_norm: int
    conductor_sum: Fraction
    excluded_product: Fraction
    exponent_data: tuple
    empirical: list = dc_field(default_factory=list)
    zero_witness: object = None

    @property
    def d_mid(self):
        return (self.d_lower + self.d_upper) / 2

    @property
    def width(self):
        return self.d_upper - self.d_lower


def conductor_sum(params):
    """Sum over divisors of the conductor: mu(a) L_O(a) / [O : a cap O].

    Only squarefree divisors contribute; they are products of subsets of
    the conductor support.
    """
    order = params.order
    f_ideal = order.conductor()
    support = [pid for pid, _ in f_ideal.factor()]
    total = Fraction(0)
    for mask in range(1 << len(support)):
        a = IdealLattice.unit_ideal(params.field)
        bits_on = 0
        for i, pid in enumerate(support):
            if mask >> i & 1:
                a = a * pid.ideal
                bits_on += 1
        l_val = root_count_order(params.poly, a, order)
        _, idx = order.contract(a)
        total += Fraction((-1) ** bits_on * l_val, idx)
    return total


def bad_reduction_primes(poly):
    """Primes where the reduced polynomial may fail to be separable of the
    same degree: support of (disc(f)) and of (leading coefficient)."""
    field_k = poly.field
    out = set()
    lead = poly.leading()
    if abs(lead.norm()) != 1:
        for pid, _ in IdealLattice.principal(lead).factor():
            out.add(pid)
    disc = _poly_discriminant_element(poly)
    if disc.is_zero():
        raise ValueError("polynomial has zero discriminant; not separable")
    if abs(disc.norm()) != 1:
        for pid, _ in IdealLattice.principal(disc).factor():
            out.add(pid)
    return out


def _poly_discriminant_element(poly):
    """Res(f, f') as an element of O_K, by K-rational Gaussian elimination."""
    field_k = poly.field
    n = field_k.degree
    f = [c for c in poly.coeffs]
    fp = poly.derivative()
    dm, dn = len(f) - 1, len(fp) - 1
    size = dm + dn
    zero = tuple(Fraction(0) for _ in range(n))

    def coords_of(el):
        return tuple(Fraction(c) for c in el.coords)

    rows = []
    for i in range(dn):
        row = [zero] * size
        for j, c in enumerate(reversed(f)):
            row[i + j] = coords_of(c)
        rows.append(row)
    for i in range(dm):
        row = [zero] * size
        for j, c in enumerate(reversed(fp)):
            row[i + j] = coords_of(c)
        rows.append(row)
    det = _k_det(field_k, rows)
    el = [Fraction(x) for x in det]
    if any(x.denominator != 1 for x in el):
        raise ArithmeticError("resultant of integral polynomials must be integral")
    return field_k.element(el)


def _k_mul(field_k, a, b):
    n = field_k.degree
    table = field_k.mult_table
    acc = [Fraction(0)] * n
    for i in range(n):
        if a[i]:
            for j in range(n):
                if b[j]:
                    ab = a[i] * b[j]
                    t = table[i][j]
                    for k in range(n):
                        acc[k] += ab * t[k]
    return tuple(acc)


def _k_inv(field_k, a):
    from .linalg import mat_inv_frac

    n = field_k.degree
    m = [[Fraction(0)] * n for _ in range(n)]
    # Row i of mult matrix: coords of a * w_i, bilinear in a.
    table = field_k.mult_table
    for i in range(n):
        for j in range(n):
            if a[j]:
                t = table[i][j]
                for k in range(n):
                    m[i][k] += a[j] * Fraction(t[k])
    inv = mat_inv_frac(m)
    one = tuple(Fraction(c) for c in field_k.one_coords)
    # x = one * M^{-1} solves x * a = one.
    return tuple(
        sum(one[i] * inv[i][k] for i in range(n)) for k in range(n)
    )


def _k_det(field_k, rows):
    """Determinant of a matrix with K-element entries (coordinate tuples)."""
    n = len(rows)
    a = [row[:] for row in rows]
    det = tuple(Fraction(c) for c in field_k.one_coords)
    sign = 1
    for col in range(n):
        piv = next((i for i in range(col, n) if any(a[i][col])), None)
        if piv is None:
            return tuple(Fraction(0) for _ in range(field_k.degree))
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            sign = -sign
        pv = a[col][col]
        det = _k_mul(field_k, det, pv)
        pv_inv = _k_inv(field_k, pv)
        for i in range(col + 1, n):
            if any(a[i][col]):
                factor = _k_mul(field_k, a[i][col], pv_inv)
                for j in range(col, n):
                    prod = _k_mul(field_k, factor, a[col][j])
                    a[i][j] = tuple(x - y for x, y in zip(a[i][j], prod))
    if sign < 0:
        det = tuple(-x for x in det)
    return det


def euler_density(params, truncation_norm, bits=96):
    """Rigorous interval for the density constant D of the sieve.

    Exact rational work: the conductor sum, the excluded finite product,
    every local factor with norm below the truncation, and every prime of
    bad reduction regardless of size.  The remaining tail is enclosed by
    [1 - n g T^{1-m} / (m-1), 1].  The transcendental prefactor
    (2 pi)^s / (sqrt|d_K| [O_K : O]) enters as an interval.
    """
    from .intfactor import is_prime

    field_k = params.field
    order = params.order
    poly = params.poly
    m = params.m
    n = field_k.degree
    g = poly.degree
    r, s = field_k.signature

    excluded = set(params.excluded)
    cond_sum = conductor_sum(params)
    conductor_support = {pid for pid, _ in order.conductor().factor()}

    excl_prod = Fraction(1)
    for pid in sorted(excluded - conductor_support, key=lambda q: q.sort_key()):
        l_val = root_count(poly, pid.ideal)
        excl_prod *= 1 - Fraction(l_val, pid.norm)

    main_num, main_den = 1, 1
    zero_witness = None
    handled = set()
    T = truncation_norm
    p = 2
    while p <= T:
        if is_prime(p):
            for pid in split_prime(field_k, p):
                if pid.norm > T or pid in excluded:
                    continue
                l_val = count_roots_prime_power(poly, pid, m)
                npm = pid.norm**m
                if l_val == npm:
                    zero_witness = pid
                main_num *= npm - l_val
                main_den *= npm
                handled.add(pid)
        p += 1
    for pid in sorted(bad_reduction_primes(poly), key=lambda q: q.sort_key()):
        if pid in excluded or pid in handled:
            continue
        l_val = count_roots_prime_power(poly, pid, m)
        npm = pid.norm**m
        if l_val == npm:
            zero_witness = pid
        main_num *= npm - l_val
        main_den *= npm
        handled.add(pid)

    main_exact = Fraction(main_num, main_den)
    tail_low = 1 - Fraction(n * g, 1) * Fraction(1, T ** (m - 1)) / (m - 1)
    if tail_low <= 0:
        raise ValueError("truncation norm too small for a positive tail bound")
    c1 = (2 * PI) ** s / RatInterval(Fraction(abs(field_k.disc))).sqrt(bits)
    prefactor = c1 * Fraction(1, order.index)
    raw = prefactor * cond_sum * excl_prod
    if zero_witness is not None:
        return DensityReport(
            d_lower=Fraction(0),
            d_upper=Fraction(0),
            truncation_norm=T,
            conductor_sum=cond_sum,
            excluded_product=excl_prod,
            exponent_data=error_exponent(n, g, m),
            zero_witness=zero_witness,
        )
    main_iv = RatInterval(main_exact * tail_low, main_exact)
    d_iv = raw * main_iv
    lo, hi = min(d_iv.lo, d_iv.hi), max(d_iv.lo, d_iv.hi)
    return DensityReport(
        d_lower=lo,
        d_upper=hi,
        truncation_norm=T,
        conductor_sum=cond_sum,
        excluded_product=excl_prod,
        exponent_data=error_exponent(n, g, m),
    )


# ---------------------------------------------------------------------------
# Empirical counting


def empirical_count(params, box, shard=None):
    """Exact count of alpha in (order cap region) with nonzero f(alpha)
    outside every excluded prime and an m-free value ideal.

    shard=(index, count) restricts to one deterministic slice of the
    enumeration; summing over all indices recovers the full count.
    """
    order = params.order
    field_k = params.field
    poly = params.poly
    m = params.m
    excluded_ideals = [pid.ideal for pid in params.excluded]
    count = 0
    for alpha in enumerate_region(field_k, box, order.basis_hnf, shard=shard):
        val = poly(alpha)
        if val.is_zero():
            continue
        if any(ide.contains(val) for ide in excluded_ideals):
            continue
        if element_is_mfree(val, m):
            count += 1
    return count


def empirical_count_oracle(params, box):
    """From-scratch re-implementation used as the sieve's test oracle.

    Walks the order lattice over a naive coordinate range, tests the region
    by squared-embedding comparisons, and decides m-freeness by fully
    factoring the value ideal.
    """
    from .ideal import is_mfree

    order = params.order
    field_k = params.field
    poly = params.poly
    count = 0
    for alpha in enumerate_region(field_k, box, order.basis_hnf):
        val = poly(alpha)
        if val.is_zero():
            continue
        if any(pid.ideal.contains(val) for pid in params.excluded):
            continue
        if is_mfree(IdealLattice.principal(val), params.m):
            count += 1
    return count


# ---------------------------------------------------------------------------
# Error exponent calculus


def error_exponent(n, g, m):
    """Admissible (l, c, eps, u) with every inequality verified exactly.

    Two regimes: m > g+1 takes the closed-form parameters; otherwise the
    smallest l with m - l > g^2/(2l+g+1) works, with c at the bottom of its
    admissible window.  The returned u satisfies remainder = O(x^{1-u}).
    """
    if g < 1 or n < 2:
        raise ValueError("need degree g >= 1 and field degree n >= 2")
    if m < mfree_threshold(g):
        raise ValueError(f"m={m} is below the admissible threshold for g={g}")
    if m > g + 1:
        l = m - g
        c = 1 - Fraction(5, g + 10)
        eps = min(Fraction(1, n), Fraction(4, g + 10))
        u = min(
            Fraction(1, n),
            Fraction(4, g + 10),
            Fraction(g * (g + 5), g + 10),
            Fraction(5, g + 10),
        )
    else:
        l = None
        for cand in range(1, m):
            if Fraction(m - cand) > Fraction(g * g, 2 * cand + g + 1):
                l = cand
                break
        if l is None:
            raise ValueError("no admissible l exists; m below threshold")
        c = Fraction(g * (2 * l + 1) + g * g, (m - l) * (2 * l + g + 1) + g * (2 * l + 1))
        eps = min(Fraction(1, n), (1 - c) / 2)
        u = min(eps, c, 1 - c)
    _verify_exponent_chain(n, g, m, l, c, eps)
    if not u > 0:
        raise ArithmeticError("error exponent must be positive")
    return (l, c, eps, u)


def _verify_exponent_chain(n, g, m, l, c, eps):
    checks = [
        1 <= l <= m - 1,
        Fraction(1, m) <= c < 1,
        c < 1 - eps,
        0 < eps <= Fraction(1, n),
    ]
    if m <= g + 1:
        # Corrected form of the displayed inequality, with the division
        # by g(2l+1) that dimensional analysis requires.
        lhs = 1 + Fraction(g, 2 * l + 1) - c * Fraction((m - l) * (g + 2 * l + 1), g * (2 * l + 1))
        checks.append(lhs <= c)
        checks.append(l <= g)
    if not all(checks):
        raise ArithmeticError(f"exponent parameter chain failed: {checks}")


# ---------------------------------------------------------------------------
# The density gap of the order-versus-maximal comparison


@dataclass
class GapReport:
    lhs: Fraction
    rhs: Fraction
    strict_gap: bool
    d_order: DensityReport
    d_maximal: DensityReport


class HypothesisError(ValueError):
    """A hypothesis of the gap criterion fails; remedy in the message."""


def check_hypotheses(field_k):
    """All primes above 2 and 3 must have residue degree at least 2."""
    for p in (2, 3):
        for pid in split_prime(field_k, p):
            if pid.residue_degree < 2:
                return False
    return True


def density_gap_check(order, eta, excluded, truncation_norm=10**3):
    """Both sides of the finite gap inequality, exactly, plus full
    density intervals for the order and the maximal order."""
    from .order import SubOrder

    field_k = order.field
    if not check_hypotheses(field_k):
        raise HypothesisError(
            "a prime above 2 or 3 has residue degree 1; "
            "base-change to K(sqrt(5)) restores the hypothesis"
        )
    if order.is_maximal():
        raise HypothesisError("the order must be a proper suborder")
    if not order.contains(eta):
        raise HypothesisError("eta must lie in the order")
    if is_square_in_field(eta):
        raise HypothesisError("eta must not be a square in the field")
    poly = SievePolynomial.x_squared_minus(4 * eta)
    conductor_support = [pid for pid, _ in order.conductor().factor()]
    full_excluded = tuple(sorted(set(excluded) | set(conductor_support),
                                 key=lambda q: q.sort_key()))
    params_o = DensityParams(order=order, poly=poly, excluded=full_excluded, m=2)
    lhs = Fraction(1, order.index) * conductor_sum(params_o)
    rhs = Fraction(1)
    for pid in conductor_support:
        rhs *= 1 - Fraction(root_count(poly, pid.ideal), pid.norm)
    maximal = SubOrder.maximal(field_k)
    params_k = DensityParams(order=maximal, poly=poly, excluded=full_excluded, m=2)
    d_order = euler_density(params_o, truncation_norm)
    d_max = euler_density(params_k, truncation_norm)
    return GapReport(
        lhs=lhs,
        rhs=rhs,
        strict_gap=lhs < rhs,
        d_order=d_order,
        d_maximal=d_max,
    )
