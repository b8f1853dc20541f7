"""Rational interval arithmetic.

Endpoints are Fractions and all operations are exact except sqrt, which
rounds outward at a caller-chosen dyadic precision.  Used for the Euler
product constant, lattice point main terms, and anywhere an irrational
quantity needs a rigorous two-sided enclosure.
"""

from fractions import Fraction
from math import isqrt


def sqrt_lower(x, bits=64):
    """Largest dyadic p/2^bits with (p/2^bits)^2 <= x.  Requires x >= 0."""
    x = Fraction(x)
    if x < 0:
        raise ValueError("sqrt of negative")
    scale = 1 << bits
    s = isqrt((x.numerator * scale * scale) // x.denominator)
    return Fraction(s, scale)


def sqrt_upper(x, bits=64):
    x = Fraction(x)
    if x < 0:
        raise ValueError("sqrt of negative")
    scale = 1 << bits
    num = x.numerator * scale * scale
    s = isqrt(num // x.denominator)
    # s/scale may undershoot; bump until the square clears x.
    while Fraction(s, scale) ** 2 < x:
        s += 1
    return Fraction(s, scale)


class RatInterval:
    """Closed interval [lo, hi] with exact rational endpoints."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo, hi=None):
        if hi is None:
            hi = lo
        self.lo = Fraction(lo)
        self.hi = Fraction(hi)
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{lo}, {hi}]")

    def __repr__(self):
        return f"RatInterval({self.lo}, {self.hi})"

    @property
    def mid(self):
        return (self.lo + self.hi) / 2

    @property
    def width(self):
        return self.hi - self.lo

    def __contains__(self, x):
        return self.lo <= x <= self.hi

    def __add__(self, other):
        other = _coerce(other)
        return RatInterval(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __neg__(self):
        return RatInterval(-self.hi, -self.lo)

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        prods = (
            self.lo * other.lo,
            self.lo * other.hi,
            self.hi * other.lo,
            self.hi * other.hi,
        )
        return RatInterval(min(prods), max(prods))

    __rmul__ = __mul__

    def inverse(self):
        if self.lo <= 0 <= self.hi:
            raise ZeroDivisionError("interval straddles zero")
        return RatInterval(1 / self.hi, 1 / self.lo)

    def __truediv__(self, other):
        return self * _coerce(other).inverse()

    def __rtruediv__(self, other):
        return _coerce(other) * self.inverse()

    def __pow__(self, k):
        if k < 0:
            return (self ** (-k)).inverse()
        out = RatInterval(1)
        for _ in range(k):
            out = out * self
        return out

    def sqrt(self, bits=64):
        return RatInterval(sqrt_lower(self.lo, bits), sqrt_upper(self.hi, bits))

    def definitely_lt(self, other):
        other = _coerce(other)
        return self.hi < other.lo

    def definitely_gt(self, other):
        other = _coerce(other)
        return self.lo > other.hi


def _coerce(x):
    return x if isinstance(x, RatInterval) else RatInterval(Fraction(x))


class AmbiguousPivotError(ArithmeticError):
    """Interval Gaussian elimination hit a pivot straddling zero."""


def interval_mat_inv(rows):
    """Inverse of an interval matrix by Gauss-Jordan elimination.

    Every entry of the result encloses the corresponding entry of the
    inverse of any point matrix inside `rows`.  Raises AmbiguousPivotError
    when a pivot interval contains zero; callers refine and retry.
    """
    n = len(rows)
    a = [[_coerce(x) for x in row] + [RatInterval(1 if i == j else 0) for j in range(n)]
         for i, row in enumerate(rows)]
    for col in range(n):
        piv = None
        for i in range(col, n):
            iv = a[i][col]
            if iv.lo > 0 or iv.hi < 0:
                piv = i
                break
        if piv is None:
            raise AmbiguousPivotError(f"no usable pivot in column {col}")
        a[col], a[piv] = a[piv], a[col]
        pv = a[col][col]
        a[col] = [x / pv for x in a[col]]
        for i in range(n):
            if i != col:
                f = a[i][col]
                if f.lo != 0 or f.hi != 0:
                    a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    return tuple(tuple(row[n:]) for row in a)


def interval_abs_upper(iv):
    return max(abs(iv.lo), abs(iv.hi))


# 50 verified decimal digits; the true value lies strictly inside.
_PI_50 = Fraction(314159265358979323846264338327950288419716939937510, 10**50)
PI = RatInterval(_PI_50, _PI_50 + Fraction(1, 10**50))


def fmt_decimal(x, digits=12):
    """Deterministic fixed-point rendering of a Fraction, truncated."""
    x = Fraction(x)
    sign = "-" if x < 0 else ""
    x = abs(x)
    scaled = (x.numerator * 10**digits) // x.denominator
    whole, frac = divmod(scaled, 10**digits)
    return f"{sign}{whole}.{str(frac).zfill(digits)}"


def fmt_decimal_down(x, digits=12):
    """Decimal lower bound: rounds toward minus infinity."""
    x = Fraction(x)
    scaled = (x.numerator * 10**digits) // x.denominator
    sign = "-" if scaled < 0 else ""
    whole, frac = divmod(abs(scaled), 10**digits)
    return f"{sign}{whole}.{str(frac).zfill(digits)}"


def fmt_decimal_up(x, digits=12):
    """Decimal upper bound: rounds toward plus infinity."""
    x = Fraction(x)
    scaled = -((-x.numerator * 10**digits) // x.denominator)
    sign = "-" if scaled < 0 else ""
    whole, frac = divmod(abs(scaled), 10**digits)
    return f"{sign}{whole}.{str(frac).zfill(digits)}"
