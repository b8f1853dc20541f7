"""Polynomial utilities and certified complex root enclosures.

Coefficient convention: constant term first, so p = (c0, c1, ..., cn)
means c0 + c1*X + ... + cn*X^n.

Root enclosures are disks with exact rational centers and radii.  The
radius certificate is the classical nearest-root bound: for any point z,
some root of p lies within deg(p) * |p(z)/p'(z)| of z.  Once the n disks
are pairwise disjoint each contains exactly one root, and conjugate
symmetry sorts them into real roots and conjugate pairs.  Refinement is
rational Newton iteration with dyadic rounding, so every enclosure stays
rigorous at any requested precision.
"""

from fractions import Fraction
from math import isqrt

from .intervals import sqrt_upper


class PrecisionError(Exception):
    """Root refinement failed to reach the requested radius."""


# ---------------------------------------------------------------------------
# Generic polynomial helpers (constant-first coefficient tuples)


def poly_trim(c):
    c = list(c)
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    return tuple(c)


def poly_deg(c):
    c = poly_trim(c)
    return len(c) - 1 if any(c) else -1


def poly_add(a, b):
    n = max(len(a), len(b))
    a = tuple(a) + (0,) * (n - len(a))
    b = tuple(b) + (0,) * (n - len(b))
    return poly_trim(x + y for x, y in zip(a, b))


def poly_neg(a):
    return tuple(-x for x in a)


def poly_sub(a, b):
    return poly_add(a, poly_neg(b))


def poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return poly_trim(out)


def poly_scale(a, c):
    return poly_trim(c * x for x in a)


def poly_eval(c, x):
    out = 0
    for coef in reversed(c):
        out = out * x + coef
    return out


def poly_deriv(c):
    if len(c) <= 1:
        return (0,)
    return poly_trim(i * c[i] for i in range(1, len(c)))


def poly_divmod(num, den):
    """Quotient and remainder over the rationals."""
    num = [Fraction(x) for x in num]
    den = [Fraction(x) for x in poly_trim(den)]
    if len(den) == 1 and den[0] == 0:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(1, len(num) - len(den) + 1)
    lead = den[-1]
    for i in range(len(num) - len(den), -1, -1):
        coef = num[i + len(den) - 1] / lead
        q[i] = coef
        if coef:
            for j, d in enumerate(den):
                num[i + j] -= coef * d
    return poly_trim(q), poly_trim(num[: len(den) - 1] or [0])


def sturm_count_real_roots(p):
    """Number of distinct real roots of a squarefree integer polynomial."""
    chain = [tuple(Fraction(x) for x in poly_trim(p))]
    chain.append(tuple(Fraction(x) for x in poly_deriv(p)))
    while poly_deg(chain[-1]) > 0:
        _, rem = poly_divmod(chain[-2], chain[-1])
        if poly_deg(rem) < 0 or all(x == 0 for x in rem):
            break
        chain.append(poly_neg(rem))

    def signs_at_inf(sign):
        out = []
        for q in chain:
            q = poly_trim(q)
            lead = q[-1]
            if lead == 0:
                continue
            s = 1 if lead > 0 else -1
            if sign < 0 and (len(q) - 1) % 2 == 1:
                s = -s
            out.append(s)
        return out

    def variations(seq):
        seq = [s for s in seq if s != 0]
        return sum(1 for a, b in zip(seq, seq[1:]) if a * b < 0)

    return variations(signs_at_inf(-1)) - variations(signs_at_inf(1))


def sylvester_matrix(p, q):
    p = poly_trim(p)
    q = poly_trim(q)
    m, n = len(p) - 1, len(q) - 1
    size = m + n
    rows = []
    for i in range(n):
        row = [0] * size
        for j, c in enumerate(reversed(p)):
            row[i + j] = c
        rows.append(row)
    for i in range(m):
        row = [0] * size
        for j, c in enumerate(reversed(q)):
            row[i + j] = c
        rows.append(row)
    return rows


def resultant(p, q):
    """Resultant of two polynomials with integer or rational coefficients."""
    from .linalg import det_frac, det_int

    p, q = poly_trim(p), poly_trim(q)
    if poly_deg(p) < 1 and poly_deg(q) < 1:
        return 1
    if poly_deg(p) < 1:
        return p[0] ** poly_deg(q) if poly_deg(p) == 0 else 0
    if poly_deg(q) < 1:
        return q[0] ** poly_deg(p) if poly_deg(q) == 0 else 0
    rows = sylvester_matrix(p, q)
    if all(isinstance(x, int) for row in rows for x in row):
        return det_int(rows)
    return det_frac(rows)


def lagrange_interpolate(points):
    """Polynomial through the given (x, y) pairs, coefficients as Fractions."""
    result = (Fraction(0),)
    for i, (xi, yi) in enumerate(points):
        term = (Fraction(yi),)
        for j, (xj, _) in enumerate(points):
            if i == j:
                continue
            term = poly_mul(term, (Fraction(-xj, 1), Fraction(1)))
            term = poly_scale(term, Fraction(1, xi - xj))
        result = poly_add(result, term)
    return result


# ---------------------------------------------------------------------------
# Exact complex arithmetic on (re, im) Fraction pairs


def cadd(a, b):
    return (a[0] + b[0], a[1] + b[1])


def csub(a, b):
    return (a[0] - b[0], a[1] - b[1])


def cmul(a, b):
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def cdiv(a, b):
    d = b[0] * b[0] + b[1] * b[1]
    return ((a[0] * b[0] + a[1] * b[1]) / d, (a[1] * b[0] - a[0] * b[1]) / d)


def cabs2(a):
    return a[0] * a[0] + a[1] * a[1]


def _ceval(c, z):
    out = (Fraction(0), Fraction(0))
    for coef in reversed(c):
        out = cadd(cmul(out, z), (Fraction(coef), Fraction(0)))
    return out


def _dyadic_round(x, bits):
    scale = 1 << bits
    return Fraction(round(x * scale), scale)


def _round_z(z, bits):
    return (_dyadic_round(z[0], bits), _dyadic_round(z[1], bits))


class RootEnclosure:
    """Disk |z - center| <= radius certified to contain exactly one root."""

    __slots__ = ("center", "radius", "is_real")

    def __init__(self, center, radius, is_real):
        self.center = center
        self.radius = radius
        self.is_real = is_real

    def conjugate(self):
        return RootEnclosure((self.center[0], -self.center[1]), self.radius, self.is_real)

    def real_interval(self):
        return (self.center[0] - self.radius, self.center[0] + self.radius)

    def __repr__(self):
        re, im = float(self.center[0]), float(self.center[1])
        return f"RootEnclosure({re:.6g}{im:+.6g}j, r<{float(self.radius):.3g})"


class RootIsolation:
    """Certified enclosures of all roots of a squarefree monic integer poly.

    Ordering contract: real roots ascending, then one root per conjugate
    pair with positive imaginary part, by ascending real then imaginary
    part, then their conjugates in the same pair order.  This matches the
    standard embedding layout used throughout the package.
    """

    def __init__(self, poly, bits=64):
        poly = poly_trim(poly)
        if poly[-1] != 1:
            raise ValueError("polynomial must be monic")
        self.poly = poly
        self.deriv = poly_deriv(poly)
        self.degree = len(poly) - 1
        self.n_real = sturm_count_real_roots(poly)
        self.bits = 0
        self._raw = self._initial_disks()
        self.refine(bits)

    # -- initial float approximations -------------------------------------

    def _initial_disks(self):
        n = self.degree
        pf = [float(c) for c in self.poly]
        bound = 1.0 + max(abs(c) for c in pf[:-1]) if n else 1.0
        zs = [bound * complex(0.4, 0.9) ** k for k in range(1, n + 1)]
        for _ in range(400):
            new = []
            delta = 0.0
            for i, z in enumerate(zs):
                num = 0j
                for c in reversed(pf):
                    num = num * z + c
                den = 1.0 + 0j
                for j, w in enumerate(zs):
                    if j != i:
                        den *= z - w
                step = num / den if den != 0 else 0j
                new.append(z - step)
                delta = max(delta, abs(step))
            zs = new
            if delta < 1e-13:
                break
        return [(Fraction(z.real).limit_denominator(1 << 80),
                 Fraction(z.imag).limit_denominator(1 << 80)) for z in zs]

    # -- certification ------------------------------------------------------

    def _radius_at(self, z, sqrt_bits=96):
        num = cabs2(_ceval(self.poly, z))
        den = cabs2(_ceval(self.deriv, z))
        if den == 0:
            return None
        if num == 0:
            return Fraction(0)
        return self.degree * sqrt_upper(Fraction(num, den), sqrt_bits)

    def _newton(self, z, steps, bits):
        for _ in range(steps):
            pv = _ceval(self.poly, z)
            dv = _ceval(self.deriv, z)
            if dv == (0, 0):
                break
            z = _round_z(csub(z, cdiv(pv, dv)), bits)
        return z

    def refine(self, bits):
        """Shrink every enclosure radius below 2^-bits."""
        if self.bits >= bits:
            return
        target = Fraction(1, 1 << bits)
        centers = [e.center if isinstance(e, RootEnclosure) else e
                   for e in (self.enclosures if self.bits else self._raw)]
        if self.bits:
            # Re-polish only the stored representatives (reals + upper half).
            centers = [e.center for e in self._repr_enclosures]
        sqrt_bits = bits + 32
        disks = []
        for z in centers:
            r = self._radius_at(z, sqrt_bits)
            rounds = 0
            work_bits = max(bits * 4, 256)
            while r is None or r > target:
                z = self._newton(z, 2, work_bits)
                r = self._radius_at(z, sqrt_bits)
                rounds += 1
                if rounds > 60:
                    raise PrecisionError("newton refinement stalled")
                if rounds % 8 == 0:
                    work_bits *= 2
            disks.append((z, r))
        self._classify(disks, bits, target)
        self.bits = bits

    def _classify(self, disks, bits, target):
        n = self.degree
        first = self.bits == 0
        if first:
            # Identify real roots: disks whose imaginary range touches zero.
            real, upper = [], []
            for z, r in disks:
                if abs(z[1]) <= r:
                    real.append((z, r))
                elif z[1] > 0:
                    upper.append((z, r))
            if len(real) != self.n_real or len(upper) != (n - self.n_real) // 2:
                raise PrecisionError("root classification ambiguous; raise bits")
            sqrt_bits = bits + 32
            fixed = []
            for z, r in real:
                zr = (z[0], Fraction(0))
                rr = self._radius_at(zr, sqrt_bits)
                rounds = 0
                work_bits = max(bits * 4, 256)
                while rr is None or rr > target:
                    zr = ((self._newton(zr, 2, work_bits))[0], Fraction(0))
                    rr = self._radius_at(zr, sqrt_bits)
                    rounds += 1
                    if rounds > 60:
                        raise PrecisionError("newton refinement stalled")
                    if rounds % 8 == 0:
                        work_bits *= 2
                fixed.append(RootEnclosure(zr, rr, True))
            fixed.sort(key=lambda e: e.center[0])
            ups = [RootEnclosure(z, r, False) for z, r in upper]
            ups.sort(key=lambda e: (e.center[0], e.center[1]))
            self._repr_enclosures = fixed + ups
        else:
            reps = []
            for (z, r), old in zip(disks, self._repr_enclosures):
                if old.is_real:
                    z = (z[0], Fraction(0))
                    r2 = self._radius_at(z, bits + 32)
                    if r2 is not None and r2 <= target:
                        r = r2
                    else:
                        raise PrecisionError("real root drifted")
                reps.append(RootEnclosure(z, r, old.is_real))
            self._repr_enclosures = reps
        reps = self._repr_enclosures
        full = [e for e in reps if e.is_real] + [e for e in reps if not e.is_real] + [
            e.conjugate() for e in reps if not e.is_real
        ]
        # Disjointness certifies one root per disk.
        for i in range(len(full)):
            for j in range(i + 1, len(full)):
                d2 = cabs2(csub(full[i].center, full[j].center))
                if d2 <= (full[i].radius + full[j].radius) ** 2:
                    raise PrecisionError("enclosures overlap; raise bits")
        self.enclosures = full

    @property
    def signature(self):
        return (self.n_real, (self.degree - self.n_real) // 2)
