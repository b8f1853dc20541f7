"""Totally positive box regions, exact membership, lattice enumeration,
successive minima, and the lattice point counting bound.

Region bounds are stored as squared rationals so that boxes like the
equal-sided one with total volume x (side x^{1/n}) stay exact.  Membership
decisions refine certified embedding intervals until every comparison is
strict, and resolve boundary ties by exact algebraic tests: a real
embedding ties a rational bound only if the element itself is rational,
and a complex modulus tie is decided through the integer polynomial whose
roots are the pairwise products of the element's conjugates.
"""

from fractions import Fraction
from math import inf, nextafter

from .intervals import (
    AmbiguousPivotError,
    RatInterval,
    interval_abs_upper,
    interval_mat_inv,
    sqrt_upper,
)
from .linalg import det_frac, mat_inv_frac
from .rootiso import lagrange_interpolate, poly_divmod, poly_eval, poly_trim, resultant

MAX_BITS = 1 << 14


class EmptyCosetError(ValueError):
    """The requested coset does not meet the order."""


class RegionBox:
    """The closed region: totally positive, |sigma_i| <= x_i, with x_i >= 1.

    bounds_sq holds the squared bounds (exact rationals); complex
    coordinates must come in equal pairs, mirroring the region's symmetry.
    """

    __slots__ = ("signature", "bounds_sq")

    def __init__(self, signature, bounds_sq):
        r, s = signature
        n = r + 2 * s
        bounds_sq = tuple(Fraction(b) for b in bounds_sq)
        if len(bounds_sq) == r + s:
            bounds_sq = bounds_sq + bounds_sq[r:]
        if len(bounds_sq) != n:
            raise ValueError("need one bound per embedding")
        for i in range(s):
            if bounds_sq[r + s + i] != bounds_sq[r + i]:
                raise ValueError("complex coordinate bounds must match their conjugates")
        if any(b < 1 for b in bounds_sq):
            raise ValueError("bounds must be at least 1")
        self.signature = signature
        self.bounds_sq = bounds_sq

    @classmethod
    def from_bounds(cls, signature, bounds):
        return cls(signature, [Fraction(b) ** 2 for b in bounds])

    @classmethod
    def cube(cls, signature, volume):
        """Equal-sided box with given total volume x: each side x^{1/n}."""
        r, s = signature
        n = r + 2 * s
        volume = Fraction(volume)
        side_sq = _nth_root_exact(volume**2, n)
        if side_sq is None:
            raise ValueError("volume^(2/n) is not rational; give explicit bounds")
        return cls(signature, (side_sq,) * n)

    @property
    def volume_sq(self):
        out = Fraction(1)
        for b in self.bounds_sq:
            out *= b
        return out

    def volume(self):
        """Exact volume parameter x = x_1 ... x_n when rational."""
        v = _sqrt_exact(self.volume_sq)
        if v is None:
            raise ValueError("volume parameter is irrational; use volume_sq")
        return v

    def __repr__(self):
        return f"RegionBox(sq={tuple(str(b) for b in self.bounds_sq)})"


def _nth_root_exact(x, n):
    """Rational n-th root of a positive rational, or None."""
    x = Fraction(x)
    num = _int_nth_root(x.numerator, n)
    den = _int_nth_root(x.denominator, n)
    if num is None or den is None:
        return None
    return Fraction(num, den)


def _int_nth_root(v, n):
    if v < 0:
        return None
    lo, hi = 0, max(2, 1 << ((v.bit_length() // n) + 2))
    while lo < hi:
        mid = (lo + hi) // 2
        if mid**n < v:
            lo = mid + 1
        else:
            hi = mid
    return lo if lo**n == v else None


def _sqrt_exact(x):
    return _nth_root_exact(x, 2)


def embed_sigma(alpha, bits=64):
    """Standard embedding as midpoints plus one rigorous error radius.

    Returns (vector, radius): n rational midpoints (reals first, then
    re/im pairs) and a radius bounding every coordinate's error.
    """
    std = alpha.field.sigma_std(alpha, bits)
    mids = tuple(iv.mid for iv in std)
    radius = max((iv.width / 2 for iv in std), default=Fraction(0))
    return mids, radius


def successive_minima(lattice, bits=64):
    """The minima as RatInterval enclosures (exact squares underneath)."""
    return tuple(RatInterval(m).sqrt(bits) for m in lattice.minima_sq())


# ---------------------------------------------------------------------------
# Float prefilter: directed-rounding interval screen before exact work.
# Decisions it returns are certain; every tight case falls through to the
# exact path, so the filter only narrows the search.


def _dn(x):
    return nextafter(x, -inf)


def _up(x):
    return nextafter(x, inf)


class FloatRegionFilter:
    """Conservative membership screen for one (field, box) pair."""

    __slots__ = ("r", "s", "n", "col_lo", "col_hi", "bound_lo", "bound_hi")

    def __init__(self, field, box, bits=64):
        emb = field.embedding_matrix(bits)
        self.r, self.s = field.signature
        self.n = field.degree
        # Column-major float enclosures of the embedding matrix.
        self.col_lo = []
        self.col_hi = []
        for k in range(self.n):
            self.col_lo.append([_dn(float(emb[j][k].lo)) for j in range(self.n)])
            self.col_hi.append([_up(float(emb[j][k].hi)) for j in range(self.n)])
        self.bound_lo = [_dn(float(b)) for b in box.bounds_sq]
        self.bound_hi = [_up(float(b)) for b in box.bounds_sq]

    def _coordinate_interval(self, coords, k):
        lo_acc, hi_acc = 0.0, 0.0
        cl, ch = self.col_lo[k], self.col_hi[k]
        for j, c in enumerate(coords):
            if c > 0:
                lo_acc = _dn(lo_acc + _dn(c * cl[j]))
                hi_acc = _up(hi_acc + _up(c * ch[j]))
            elif c < 0:
                lo_acc = _dn(lo_acc + _dn(c * ch[j]))
                hi_acc = _up(hi_acc + _up(c * cl[j]))
        return lo_acc, hi_acc

    def test(self, coords):
        """True / False when certain, None when the exact path must decide."""
        certain = True
        r, s = self.r, self.s
        for i in range(r):
            lo, hi = self._coordinate_interval(coords, i)
            if hi < 0.0:
                return False
            if not lo > 0.0:
                certain = False
            sq_lo = 0.0 if lo <= 0.0 <= hi else _dn(min(lo * lo, hi * hi))
            sq_hi = _up(max(lo * lo, hi * hi))
            if sq_lo > self.bound_hi[i]:
                return False
            if not sq_hi <= self.bound_lo[i]:
                certain = False
        for j in range(s):
            re_lo, re_hi = self._coordinate_interval(coords, r + 2 * j)
            im_lo, im_hi = self._coordinate_interval(coords, r + 2 * j + 1)
            re_sq_hi = _up(max(re_lo * re_lo, re_hi * re_hi))
            im_sq_hi = _up(max(im_lo * im_lo, im_hi * im_hi))
            re_sq_lo = 0.0 if re_lo <= 0.0 <= re_hi else _dn(min(re_lo * re_lo, re_hi * re_hi))
            im_sq_lo = 0.0 if im_lo <= 0.0 <= im_hi else _dn(min(im_lo * im_lo, im_hi * im_hi))
            mod_lo = _dn(re_sq_lo + im_sq_lo)
            mod_hi = _up(re_sq_hi + im_sq_hi)
            if mod_lo > self.bound_hi[r + j]:
                return False
            if not mod_hi <= self.bound_lo[r + j]:
                certain = False
        return True if certain else None


# ---------------------------------------------------------------------------
# Exact membership


def in_region(alpha, box, max_bits=MAX_BITS):
    """Exact decision: alpha totally positive and |sigma_i(alpha)| <= x_i."""
    field = alpha.field
    r, s = field.signature
    if box.signature != (r, s):
        raise ValueError("box signature mismatch")
    if alpha.is_zero():
        # Totally positive requires strict positivity at real embeddings.
        return r == 0
    bits = 64
    while bits <= max_bits:
        reals, pairs = field.sigma_pairs(alpha, bits)
        verdict = _try_decide(field, alpha, box, reals, pairs, r, s)
        if verdict is not None:
            return verdict
        bits *= 2
    raise AmbiguousPivotError("region membership undecided at maximum precision")


def _try_decide(field, alpha, box, reals, pairs, r, s):
    for i, iv in enumerate(reals):
        # Positivity: tie impossible since alpha != 0.
        if iv.hi < 0:
            return False
        if not iv.lo > 0:
            return None
        b = box.bounds_sq[i]
        sq = iv * iv
        if sq.lo > b:
            if _real_tie(field, alpha, b):
                continue
            return False
        if not sq.hi <= b:
            if _real_tie(field, alpha, b):
                continue
            return None
    for j, (re, im) in enumerate(pairs):
        b = box.bounds_sq[r + j]
        mod2 = re * re + im * im
        if mod2.hi <= b:
            continue
        if mod2.lo > b:
            if _complex_tie(field, alpha, b, j, mod2):
                continue
            return False
        if _complex_tie(field, alpha, b, j, mod2):
            continue
        return None
    return True


def _real_tie(field, alpha, bound_sq):
    """sigma_i(alpha)^2 == bound_sq is equivalent to alpha^2 == bound_sq."""
    sq = alpha * alpha
    target = tuple(Fraction(bound_sq) * c for c in field.one_coords)
    return all(Fraction(a) == t for a, t in zip(sq.coords, target))


def _complex_tie(field, alpha, q, j, mod2_interval):
    """Exact test |sigma_{r+j}(alpha)|^2 == q.

    The modulus squared is z * conj(z), a product of two conjugates of
    alpha, hence a root of P(t) = prod_{i,k} (t - z_i z_k) which has
    rational coefficients.  P(q) != 0 rules the tie out at once; otherwise
    deflate (t - q) out of P and separate the target from the remaining
    roots by a rigorous gap bound.
    """
    if q not in mod2_interval:
        return False
    cp = field.char_poly(alpha)
    pq = _pair_product_eval(cp, q)
    if pq != 0:
        return False
    # P(q) == 0: the tie is plausible; separate tau from other roots of P.
    pt = _pair_product_poly(cp)
    s_poly = pt
    k = 0
    while True:
        quo, rem = poly_divmod(s_poly, (Fraction(-q), Fraction(1)))
        if any(c != 0 for c in rem):
            break
        s_poly = quo
        k += 1
    sq_val = poly_eval(s_poly, Fraction(q))
    if sq_val == 0:
        raise ArithmeticError("deflation failed")
    # Distance from q to the nearest root of s_poly.
    lead = abs(s_poly[-1])
    deg = len(s_poly) - 1
    cauchy = 1 + max(abs(Fraction(c)) for c in s_poly[:-1]) / lead if deg else Fraction(1)
    reach = abs(Fraction(q)) + cauchy
    gap = abs(sq_val) / (lead * max(reach, Fraction(1)) ** max(deg - 1, 0))
    bits = 128
    field_bits = 128
    while True:
        reals, pairs = field.sigma_pairs(alpha, field_bits)
        re, im = pairs[j]
        mod2 = re * re + im * im
        if q not in mod2:
            return False
        if mod2.width < gap:
            # tau lies within gap of q yet is a root of P = (t-q)^k * S:
            # since no root of S is that close, tau == q.
            return True
        field_bits *= 2
        if field_bits > MAX_BITS:
            raise AmbiguousPivotError("complex tie undecided at maximum precision")


def _pair_product_eval(char_poly, q):
    """P(q) = prod_{i,k} (q - z_i z_k) via one resultant."""
    n = len(char_poly) - 1
    q = Fraction(q)
    # g(y) = sum_k c_k q^k y^{n-k}; Res(p, g) = prod_i g(z_i).
    g = [Fraction(0)] * (n + 1)
    for k_idx, c in enumerate(char_poly):
        g[n - k_idx] = Fraction(c) * q**k_idx
    return resultant(char_poly, poly_trim(g))


def _pair_product_poly(char_poly):
    """P(t) = prod_{i,k} (t - z_i z_k), by interpolation of resultants."""
    n = len(char_poly) - 1
    deg = n * n
    pts = []
    for c in range(deg + 1):
        pts.append((c, _pair_product_eval(char_poly, c)))
    return lagrange_interpolate(pts)


# ---------------------------------------------------------------------------
# Enumeration


def coordinate_ranges(field, box, lattice_rows, shift_coords=None, bits=256):
    """Integer ranges for lattice coefficients c with shift + c*H possibly
    inside the embedded box; rigorous outer bounds, never under-covering."""
    r, s = field.signature
    n = field.degree
    std_bounds = []
    for i in range(r):
        std_bounds.append(sqrt_upper(box.bounds_sq[i], 32))
    for j in range(s):
        b = sqrt_upper(box.bounds_sq[r + j], 32)
        std_bounds.extend([b, b])
    from .field import _coordinate_bounds

    coord_bound = _coordinate_bounds(field, std_bounds, bits)
    h_inv = mat_inv_frac(lattice_rows)
    shift = shift_coords or (0,) * n
    ranges = []
    for k in range(n):
        reach = Fraction(0)
        for l in range(n):
            reach += (Fraction(coord_bound[l]) + abs(Fraction(shift[l]))) * abs(h_inv[l][k])
        bound = int(reach) + 1
        ranges.append((-bound, bound))
    return ranges


def enumerate_region(field, box, lattice_rows, shift=None, shard=None):
    """Stream the points of (shift + lattice) inside the region, in
    lexicographic coordinate order.  Exhaustive and exact.

    shard=(index, count) keeps only the lattice coefficients whose first
    coordinate falls in the given residue class: disjoint subboxes whose
    union over all indices is the full enumeration.
    """
    n = field.degree
    shift_coords = shift.coords if shift is not None else None
    ranges = coordinate_ranges(field, box, lattice_rows, shift_coords)
    zero = (0,) * n
    screen = FloatRegionFilter(field, box)

    def rec(idx, partial):
        if idx == n:
            coords = partial if shift is None else tuple(
                a + b for a, b in zip(partial, shift.coords)
            )
            quick = screen.test(coords)
            if quick is False:
                return
            el = field.element(coords)
            if quick is True or in_region(el, box):
                yield el
            return
        lo, hi = ranges[idx]
        for c in range(lo, hi + 1):
            if idx == 0 and shard is not None and (c - lo) % shard[1] != shard[0]:
                continue
            nxt = tuple(a + c * b for a, b in zip(partial, lattice_rows[idx]))
            yield from rec(idx + 1, nxt)

    yield from rec(0, zero)


# ---------------------------------------------------------------------------
# Embedded lattices and successive minima


class EmbeddedLattice:
    """A full-rank lattice in R^n with an exact rational Gram matrix.

    Exactness is available for rational basis matrices, for the standard
    embedding of lattices in totally real fields (trace form) and in
    quadratic fields; those cover the package's uses.
    """

    __slots__ = ("gram", "n", "det_sq", "_minima_sq")

    def __init__(self, gram):
        self.gram = tuple(tuple(Fraction(x) for x in row) for row in gram)
        self.n = len(self.gram)
        self.det_sq = det_frac(self.gram)
        if self.det_sq <= 0:
            raise ValueError("gram matrix must be positive definite")
        self._minima_sq = None

    @classmethod
    def from_basis_matrix(cls, rows):
        rows = [[Fraction(x) for x in row] for row in rows]
        n = len(rows)
        gram = [[sum(rows[i][k] * rows[j][k] for k in range(len(rows[0]))) for j in range(n)]
                for i in range(n)]
        return cls(gram)

    @classmethod
    def from_sigma(cls, field, lattice_rows):
        """Standard embedding of a coordinate lattice, exact Gram."""
        r, s = field.signature
        n = field.degree
        els = [field.element_from_coords_unchecked(row) for row in lattice_rows]
        gram = [[None] * n for _ in range(n)]
        if s == 0:
            for i in range(n):
                for j in range(i, n):
                    g = (els[i] * els[j]).trace()
                    gram[i][j] = gram[j][i] = Fraction(g)
        elif (r, s) == (0, 1):
            # <emb a, emb b> = Re(sigma(a) conj sigma(b)) = Tr(a * conj(b)) / 2.
            for i in range(n):
                for j in range(i, n):
                    conj_j = field.rational(els[j].trace()) - els[j]
                    g = Fraction((els[i] * conj_j).trace(), 2)
                    gram[i][j] = gram[j][i] = g
        else:
            raise NotImplementedError(
                "exact Gram for mixed-signature fields of degree > 2 is not supported"
            )
        return cls(gram)

    def det_upper(self, bits=64):
        return sqrt_upper(self.det_sq, bits)

    def minima_sq(self):
        """Exact squared successive minima (Euclidean ball), n <= 4."""
        if self._minima_sq is not None:
            return self._minima_sq
        if self.n > 4:
            raise ValueError("exact minima enumeration capped at dimension 4")
        bound = max(self.gram[i][i] for i in range(self.n))
        vecs = _enumerate_quadratic(self.gram, bound)
        vecs.sort(key=lambda cv: (cv[0], cv[1]))
        minima = []
        chosen = []
        for val, c in vecs:
            if _rank_of(chosen + [c]) > len(chosen):
                chosen.append(c)
                minima.append(val)
                if len(minima) == self.n:
                    break
        if len(minima) < self.n:
            raise ArithmeticError("minima enumeration incomplete")
        self._minima_sq = tuple(minima)
        return self._minima_sq


def _rank_of(vectors):
    work = [[Fraction(x) for x in v] for v in vectors]
    rank = 0
    cols = len(work[0])
    for col in range(cols):
        piv = next((i for i in range(rank, len(work)) if work[i][col] != 0), None)
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        pv = work[rank][col]
        work[rank] = [x / pv for x in work[rank]]
        for i in range(len(work)):
            if i != rank and work[i][col] != 0:
                f = work[i][col]
                work[i] = [x - f * y for x, y in zip(work[i], work[rank])]
        rank += 1
    return rank


def _enumerate_quadratic(gram, bound):
    """All nonzero integer vectors c (up to sign, c > 0 lexic last nonzero)
    with c^T G c <= bound, as (value, c) pairs.  Fincke-Pohst with exact
    rational Cholesky."""
    n = len(gram)
    # LDL^T decomposition.
    l = [[Fraction(0)] * n for _ in range(n)]
    d = [Fraction(0)] * n
    for i in range(n):
        for j in range(i):
            acc = Fraction(gram[i][j])
            for k in range(j):
                acc -= l[i][k] * l[j][k] * d[k]
            l[i][j] = acc / d[j]
        acc = Fraction(gram[i][i])
        for k in range(i):
            acc -= l[i][k] ** 2 * d[k]
        if acc <= 0:
            raise ValueError("gram matrix not positive definite")
        d[i] = acc
        l[i][i] = Fraction(1)
    # Q(c) = sum_i d_i (c_i + sum_{j>i} l_{j i} c_j)^2.
    out = []
    c = [0] * n

    def rec(i, remaining):
        if i < 0:
            if any(c):
                out.append((_qval(gram, c), tuple(c)))
            return
        center = Fraction(0)
        for j in range(i + 1, n):
            center += l[j][i] * c[j]
        # d_i (c_i + center)^2 <= remaining
        limit = remaining / d[i]
        lo, hi = _frac_range(-center, limit)
        for ci in range(lo, hi + 1):
            c[i] = ci
            used = d[i] * (ci + center) ** 2
            if used <= remaining:
                rec(i - 1, remaining - used)
        c[i] = 0

    rec(n - 1, Fraction(bound))
    # Deduplicate +/- pairs deterministically: keep both, sorting handles order.
    return out


def _qval(gram, c):
    n = len(gram)
    return sum(Fraction(gram[i][j]) * c[i] * c[j] for i in range(n) for j in range(n))


def _frac_range(center, limit_sq):
    """Integers ci with (ci - center)^2 <= limit_sq."""
    if limit_sq < 0:
        return 0, -1
    w = sqrt_upper(limit_sq, 32)
    lo_f = center - w
    hi_f = center + w
    import math

    lo = math.ceil(lo_f)
    hi = math.floor(hi_f)
    return lo, hi


def widmer_constant(n):
    """c0(n) = n^{3 n^2 / 2} as an exact-or-upper Fraction."""
    e = 3 * n * n
    if e % 2 == 0:
        return Fraction(n) ** (e // 2)
    return sqrt_upper(Fraction(n) ** e, 32)


def widmer_bound(lattice, n_maps, lip):
    """Upper bound c0(n) * M * max_i Lip^i / (lambda_1 ... lambda_i).

    lip may be a Fraction or RatInterval (its upper end is used); the
    returned Fraction dominates the true bound.
    """
    n = lattice.n
    minima = lattice.minima_sq()
    lip_hi = lip.hi if isinstance(lip, RatInterval) else Fraction(lip)
    best_sq = Fraction(1)
    prod = Fraction(1)
    for i in range(1, n):
        prod *= minima[i - 1]
        cand = lip_hi ** (2 * i) / prod
        if cand > best_sq:
            best_sq = cand
    c0 = widmer_constant(n)
    val_sq = (c0 * n_maps) ** 2 * best_sq
    exact = _sqrt_exact(val_sq)
    return exact if exact is not None else sqrt_upper(val_sq, 64)


# ---------------------------------------------------------------------------
# Coset counting (the main-term/error-term comparison)


def count_coset(field, beta, modulus_ideal, box, order=None, bits=96):
    """Count (beta + modulus) cap order cap region, with the density main
    term and a rigorous bound data bundle.

    Returns (count, main RatInterval, error RatInterval).  Raises
    EmptyCosetError when the coset misses the order entirely.
    """
    from .linalg import in_lattice, lattice_intersection, lattice_sum

    if order is None:
        from .order import SubOrder

        order = SubOrder.maximal(field)
    sum_lat = lattice_sum(order.basis_hnf, modulus_ideal.hnf)
    if not in_lattice(beta.coords, sum_lat):
        raise EmptyCosetError("coset does not meet the order")
    m_rows = lattice_intersection(modulus_ideal.hnf, order.basis_hnf)
    # Representative alpha0 = beta - m with m in modulus, alpha0 in order.
    alpha0 = _coset_representative(field, beta, order, modulus_ideal)
    count = 0
    for _ in enumerate_region(field, box, m_rows, shift=alpha0):
        count += 1
    r, s = field.signature
    from .intervals import PI
    from .linalg import det_triangular

    index = abs(det_triangular(m_rows))
    c1 = (2 * PI) ** s / RatInterval(Fraction(abs(field.disc))).sqrt(bits)
    x = RatInterval(box.volume_sq).sqrt(bits)
    main = c1 * x * Fraction(1, index)
    diff = RatInterval(Fraction(count)) - main
    err = RatInterval(min(abs(diff.lo), abs(diff.hi)) if diff.lo * diff.hi > 0 else Fraction(0),
                      max(abs(diff.lo), abs(diff.hi)))
    return count, main, err


def _coset_representative(field, beta, order, modulus_ideal):
    """Some alpha0 in (beta + modulus) cap order."""
    from .linalg import solve_upper_int

    stacked = list(order.basis_hnf) + list(modulus_ideal.hnf)
    h, u = _hnf_with_u(stacked)
    coeff = solve_upper_int(h, beta.coords)
    if coeff is None:
        raise EmptyCosetError("coset does not meet the order")
    # beta = sum coeff_i h_i; pull back through u to the stacked generators.
    k_order = len(order.basis_hnf)
    order_part = [0] * field.degree
    for i, ci in enumerate(coeff):
        if ci:
            for j in range(len(stacked)):
                contrib = ci * u[i][j]
                if contrib and j < k_order:
                    row = stacked[j]
                    for t in range(field.degree):
                        order_part[t] += contrib * row[t]
    return field.element(order_part)


def _hnf_with_u(rows):
    from .linalg import hnf

    return hnf(rows, transform=True)
