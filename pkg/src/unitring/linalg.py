"""Exact linear algebra over the integers and rationals.

Row convention throughout: a lattice is the set of integer combinations of
the rows of its basis matrix.  Hermite normal form is row-style, upper
triangular with positive diagonal and entries above each pivot reduced into
[0, pivot).  Matrices are tuples of tuples so they can be hashed and used as
dictionary keys.
"""

from fractions import Fraction
from math import gcd


def mat_freeze(rows):
    return tuple(tuple(r) for r in rows)


def identity(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_mul(a, b):
    bt = list(zip(*b))
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a
    )


def vec_mat(v, m):
    cols = list(zip(*m))
    return tuple(sum(x * y for x, y in zip(v, col)) for col in cols)


def mat_vec(m, v):
    return tuple(sum(x * y for x, y in zip(row, v)) for row in m)


def vec_add(u, v):
    return tuple(x + y for x, y in zip(u, v))


def vec_sub(u, v):
    return tuple(x - y for x, y in zip(u, v))


def vec_scale(v, c):
    return tuple(c * x for x in v)


def hnf(rows, transform=False):
    """Row-style Hermite normal form of an integer matrix.

    Returns H, or (H, U) with U unimodular and U * rows == H (rows padded
    with zero rows removed from H).  Zero rows are dropped from H, so H has
    exactly rank(rows) rows.
    """
    work = [list(r) for r in rows]
    m = len(work)
    n = len(work[0]) if m else 0
    u = [[1 if i == j else 0 for j in range(m)] for i in range(m)] if transform else None

    pivot_row = 0
    for col in range(n):
        # Euclidean elimination below the pivot row.
        while True:
            nz = [i for i in range(pivot_row, m) if work[i][col] != 0]
            if not nz:
                break
            i_min = min(nz, key=lambda i: abs(work[i][col]))
            if i_min != pivot_row:
                work[pivot_row], work[i_min] = work[i_min], work[pivot_row]
                if transform:
                    u[pivot_row], u[i_min] = u[i_min], u[pivot_row]
            if work[pivot_row][col] < 0:
                work[pivot_row] = [-x for x in work[pivot_row]]
                if transform:
                    u[pivot_row] = [-x for x in u[pivot_row]]
            done = True
            piv = work[pivot_row][col]
            for i in range(pivot_row + 1, m):
                if work[i][col] != 0:
                    q = work[i][col] // piv
                    work[i] = [a - q * b for a, b in zip(work[i], work[pivot_row])]
                    if transform:
                        u[i] = [a - q * b for a, b in zip(u[i], u[pivot_row])]
                    if work[i][col] != 0:
                        done = False
            if done:
                break
        if pivot_row < m and work[pivot_row][col] != 0:
            piv = work[pivot_row][col]
            # Reduce the entries above the pivot.
            for i in range(pivot_row):
                q = work[i][col] // piv
                if q:
                    work[i] = [a - q * b for a, b in zip(work[i], work[pivot_row])]
                    if transform:
                        u[i] = [a - q * b for a, b in zip(u[i], u[pivot_row])]
            pivot_row += 1

    h = mat_freeze(work[:pivot_row])
    if transform:
        return h, mat_freeze(u)
    return h


def hnf_kernel(rows):
    """Basis (tuple of rows) of the left integer kernel {v : v * rows = 0}."""
    work = [list(r) for r in rows]
    h, u = hnf(work, transform=True)
    rank = len(h)
    return mat_freeze(u[rank:]) if rank < len(work) else ()


def det_triangular(h):
    d = 1
    for i, row in enumerate(h):
        d *= row[i]
    return d


def det_int(rows):
    """Determinant of a square integer matrix (Bareiss, exact)."""
    n = len(rows)
    a = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def det_frac(rows):
    """Determinant of a square matrix of Fractions (fraction-free on scaled ints)."""
    n = len(rows)
    if n == 0:
        return Fraction(1)
    scaled = []
    scale = Fraction(1)
    for row in rows:
        den = 1
        for x in row:
            den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
        scaled.append([int(Fraction(x) * den) for x in row])
        scale /= den
    return scale * det_int(scaled)


def mat_inv_frac(rows):
    """Inverse of a square rational matrix, as Fractions. Raises on singular."""
    n = len(rows)
    a = [[Fraction(x) for x in row] + [Fraction(1 if i == j else 0) for j in range(n)]
         for i, row in enumerate(rows)]
    for col in range(n):
        piv = next((i for i in range(col, n) if a[i][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        a[col], a[piv] = a[piv], a[col]
        pv = a[col][col]
        a[col] = [x / pv for x in a[col]]
        for i in range(n):
            if i != col and a[i][col]:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    return tuple(tuple(row[n:]) for row in a)


def solve_upper_int(h, v):
    """Solve c * h == v over the integers for upper-triangular full-rank h.

    Returns the coefficient tuple, or None if v is not in the row lattice.
    """
    n = len(h)
    v = list(v)
    c = [0] * n
    for i in range(n):
        piv = h[i][i]
        if v[i] % piv:
            return None
        q = v[i] // piv
        c[i] = q
        if q:
            for j in range(i, n):
                v[j] -= q * h[i][j]
    if any(v):
        return None
    return tuple(c)


def in_lattice(v, h):
    return solve_upper_int(h, v) is not None


def lattice_sum(a_rows, b_rows):
    return hnf(list(a_rows) + list(b_rows))


def lattice_intersection(a_rows, b_rows):
    """Intersection of two full-rank integer lattices given by row bases."""
    n = len(a_rows[0])
    stacked = [list(r) for r in a_rows] + [[-x for x in r] for r in b_rows]
    kern = hnf_kernel(stacked)
    gens = []
    for k in kern:
        left = k[: len(a_rows)]
        gens.append(vec_mat(left, a_rows))
    return hnf(gens)


def lattice_index(sub_h, super_h):
    """Index [super : sub] for nested full-rank lattices in HNF."""
    return abs(det_triangular(sub_h)) // abs(det_triangular(super_h))


def lattice_scale_preimage(target_rows, m_frac):
    """{v in Z^n : v * m_frac in lattice(target_rows)} for invertible rational m.

    Computed by clearing denominators of target * m^{-1} and intersecting
    with the scaled standard lattice.
    """
    n = len(target_rows[0])
    m_inv = mat_inv_frac(m_frac)
    rat_rows = [
        [sum(Fraction(target_rows[i][k]) * m_inv[k][j] for k in range(n)) for j in range(n)]
        for i in range(len(target_rows))
    ]
    den = 1
    for row in rat_rows:
        for x in row:
            den = den * x.denominator // gcd(den, x.denominator)
    int_rows = [[int(x * den) for x in row] for row in rat_rows]
    scaled = lattice_intersection(hnf(int_rows), tuple(tuple(den if i == j else 0 for j in range(n)) for i in range(n)))
    return hnf([[x // den for x in row] for row in scaled])


def residue_transversal(h):
    """Stream coordinate vectors of a complete residue system modulo the
    row lattice of upper-triangular full-rank h, in lexicographic order.

    The representatives are all vectors with 0 <= v_i < h[i][i].
    """
    n = len(h)
    diag = [h[i][i] for i in range(n)]
    idx = [0] * n
    while True:
        yield tuple(idx)
        j = n - 1
        while j >= 0:
            idx[j] += 1
            if idx[j] < diag[j]:
                break
            idx[j] = 0
            j -= 1
        if j < 0:
            return


def reduce_mod_lattice(v, h):
    """Canonical representative of v modulo the row lattice of h (HNF)."""
    v = list(v)
    for i in range(len(h)):
        q = v[i] // h[i][i]
        if q:
            for j in range(i, len(v)):
                v[j] -= q * h[i][j]
    return tuple(v)


def quotient_box(sub_h, super_h):
    """Diagonal radices and lifted representatives of super/sub.

    Both arguments are HNF bases of full-rank lattices with sub contained in
    super.  Yields coordinate vectors (in ambient coordinates) of a complete
    transversal of sub inside super, deterministically.
    """
    n = len(super_h)
    # Coordinates of sub basis on super basis: integer matrix.
    coords = []
    for row in sub_h:
        c = solve_upper_int(super_h, row)
        if c is None:
            raise ValueError("sub lattice not contained in super lattice")
        coords.append(c)
    h = hnf(coords)
    for t in residue_transversal(h):
        yield vec_mat(t, super_h)
