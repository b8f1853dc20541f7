import random
from fractions import Fraction
from math import isqrt

import pytest

from unitring.field import NumberField
from unitring.geometry import (
    EmbeddedLattice,
    EmptyCosetError,
    RegionBox,
    count_coset,
    enumerate_region,
    in_region,
    widmer_bound,
    widmer_constant,
)
from unitring.ideal import IdealLattice
from unitring.linalg import identity
from unitring.order import SubOrder


@pytest.fixture(scope="module")
def q5():
    return NumberField([-1, -1, 1], name="Q(sqrt5)")


@pytest.fixture(scope="module")
def qi():
    return NumberField([1, 0, 1], name="Q(i)")


# -- independent oracle for Q(sqrt5): exact surd comparisons -------------------


def _sqrt5_sign(a, b):
    """Sign of a + b*sqrt(5) for rationals a, b, exactly."""
    a, b = Fraction(a), Fraction(b)
    if b == 0:
        return (a > 0) - (a < 0)
    if a == 0:
        return (b > 0) - (b < 0)
    if a > 0 and b > 0:
        return 1
    if a < 0 and b < 0:
        return -1
    # Opposite signs: compare a^2 vs 5 b^2 and attribute to the larger side.
    lhs, rhs = a * a, 5 * b * b
    if lhs == rhs:
        return 0
    big_is_a = lhs > rhs
    return (1 if a > 0 else -1) if big_is_a else (1 if b > 0 else -1)


def q5_oracle_membership(coords, side_sq):
    """Totally positive and sigma_i^2 <= side_sq for alpha = x + y*theta,
    computed with exact quadratic surd arithmetic, no package machinery."""
    x, y = coords
    # sigma_{1,2}(alpha) = (x + y/2) +- (y/2) sqrt5.
    a = Fraction(2 * x + y, 2)
    b = Fraction(y, 2)
    for bb in (b, -b):
        s = _sqrt5_sign(a, bb)
        if s <= 0:
            return False
        # (a + bb sqrt5)^2 <= side_sq  <=>  a^2+5bb^2 - side_sq <= -2 a bb sqrt5
        lhs_a = a * a + 5 * bb * bb - Fraction(side_sq)
        lhs_b = 2 * a * bb
        if _sqrt5_sign(-lhs_a, -lhs_b) < 0:
            return False
    return True


def q5_oracle_enumerate(field, side_sq, coord_range=40):
    out = []
    for x in range(-coord_range, coord_range + 1):
        for y in range(-coord_range, coord_range + 1):
            if q5_oracle_membership((x, y), side_sq):
                out.append((x, y))
    return sorted(out)


def test_in_region_examples(q5):
    th = q5.theta
    box11 = RegionBox.from_bounds(q5.signature, [1, 1])
    box22 = RegionBox.from_bounds(q5.signature, [2, 2])
    box44 = RegionBox.from_bounds(q5.signature, [4, 4])
    assert in_region(q5.one, box11)
    assert not in_region(th, box22)  # second conjugate negative
    assert in_region(q5.rational(2) + th, box44)
    assert not in_region(q5.zero, box11)  # 0 is not totally positive
    # Boundary tie: 2 sits exactly on the (2,2) wall and is included.
    assert in_region(q5.rational(2), box22)
    assert not in_region(q5.rational(3), box22)


def test_enumerate_examples(q5):
    rows = identity(2)
    def points(bounds):
        box = RegionBox.from_bounds(q5.signature, bounds)
        return [p.coords for p in enumerate_region(q5, box, rows)]

    assert points([1, 1]) == [(1, 0)]
    assert points([2, 2]) == [(1, 0), (2, 0)]
    two = IdealLattice.from_integer(q5, 2)
    box22 = RegionBox.from_bounds(q5.signature, [2, 2])
    assert [p.coords for p in enumerate_region(q5, box22, two.hnf)] == [(2, 0)]


@pytest.mark.parametrize("volume", [10, 100, 1000, 10**4])
def test_enumerate_matches_surd_oracle(q5, volume):
    box = RegionBox.cube(q5.signature, volume)
    side_sq = box.bounds_sq[0]
    got = sorted(p.coords for p in enumerate_region(q5, box, identity(2)))
    rng = 2 * isqrt(int(volume)) + 4
    expected = q5_oracle_enumerate(q5, side_sq, coord_range=rng)
    assert got == expected


def test_enumerate_shards_partition(q5):
    box = RegionBox.cube(q5.signature, 500)
    rows = identity(2)
    full = sorted(p.coords for p in enumerate_region(q5, box, rows))
    for shards in (2, 3, 5):
        combined = []
        for i in range(shards):
            combined.extend(
                p.coords for p in enumerate_region(q5, box, rows, shard=(i, shards))
            )
        assert sorted(combined) == full


def test_boundary_tie_complex(qi):
    # In Q(i): |sigma(2i)|^2 = 4 exactly; the closed region includes it.
    i = qi.theta
    box = RegionBox.from_bounds(qi.signature, [2])
    assert in_region(2 * i, box)
    assert in_region(qi.one + i, box)  # |1+i|^2 = 2 < 4
    assert not in_region(qi.rational(2) + i, box)  # 5 > 4
    # r = 0: zero is vacuously totally positive and inside any box.
    assert in_region(qi.zero, box)


def test_region_box_validation(q5):
    with pytest.raises(ValueError):
        RegionBox(q5.signature, [Fraction(1, 2), 1])  # below 1
    with pytest.raises(ValueError):
        RegionBox((0, 1), [4, 5])  # mismatched complex pair
    box = RegionBox.cube(q5.signature, 1000)
    assert box.volume() == 1000
    assert box.bounds_sq == (Fraction(1000), Fraction(1000))


def test_embed_sigma_wrapper(q5):
    from unitring.geometry import embed_sigma

    mids, radius = embed_sigma(q5.theta, 96)
    assert len(mids) == 2
    assert radius <= Fraction(1, 1 << 90)
    assert abs(mids[0] - Fraction(-0.618)) < Fraction(1, 100)
    assert abs(mids[1] - Fraction(1.618)) < Fraction(1, 100)
    one_mids, one_rad = embed_sigma(q5.one, 64)
    assert all(abs(m - 1) <= one_rad for m in one_mids)


def test_embed_sigma_signature_1_1():
    from unitring.geometry import embed_sigma

    cubic = NumberField([-2, -1, 0, 1])
    mids, radius = embed_sigma(cubic.one, 64)
    assert len(mids) == 3
    # sigma(1) = (1, 1, 0): real part 1, imaginary 0.
    assert abs(mids[0] - 1) <= radius
    assert abs(mids[1] - 1) <= radius
    assert abs(mids[2]) <= radius


def test_successive_minima_wrapper(q5):
    from unitring.geometry import successive_minima

    lat = EmbeddedLattice.from_sigma(q5, IdealLattice.from_integer(q5, 2).hnf)
    lams = successive_minima(lat, 64)
    # lambda_1 = 2 sqrt 2: the enclosure must bracket it (squares are exact).
    assert lams[0].lo ** 2 <= 8 <= lams[0].hi ** 2
    assert lams[0].hi - lams[0].lo < Fraction(1, 1 << 32)
    assert lams[0].hi < lams[1].hi


def test_minima_examples():
    assert EmbeddedLattice.from_basis_matrix([[1, 0], [0, 1]]).minima_sq() == (1, 1)
    assert EmbeddedLattice.from_basis_matrix([[2, 0], [0, 3]]).minima_sq() == (4, 9)
    skew = EmbeddedLattice.from_basis_matrix([[1, 0], [100, 1]])
    assert skew.minima_sq() == (1, 1)


def test_minima_sigma_lattices(q5, qi):
    two = IdealLattice.from_integer(q5, 2)
    lam = EmbeddedLattice.from_sigma(q5, two.hnf).minima_sq()
    assert lam[0] == 8  # 2 sqrt 2
    ok_lat = EmbeddedLattice.from_sigma(q5, identity(2))
    assert ok_lat.minima_sq() == (2, 3)  # |emb(1)|^2 = 2, |emb(theta)|^2 = 3
    gauss = EmbeddedLattice.from_sigma(qi, identity(2))
    assert gauss.minima_sq() == (1, 1)
    # det(sigma(O_K)) = 2^{-s} sqrt|d_K|: check squared.
    assert ok_lat.det_sq == 5
    assert gauss.det_sq == Fraction(1)  # (1/2 * sqrt 4)^2


def test_det_relation_for_ideal_lattices(q5):
    # det sigma(a) = sqrt|d_K| * N(a) for totally real quadratic.
    for q in (2, 3, 5, 11):
        ideal = IdealLattice.from_integer(q5, q)
        lat = EmbeddedLattice.from_sigma(q5, ideal.hnf)
        assert lat.det_sq == 5 * ideal.norm**2


def test_widmer_constant():
    assert widmer_constant(2) == 64
    c3 = widmer_constant(3)
    assert c3 * c3 >= Fraction(3) ** 27
    assert (c3 - 1) ** 2 < Fraction(3) ** 27 or c3 * c3 == Fraction(3) ** 27


def test_widmer_bound_example():
    lat = EmbeddedLattice.from_basis_matrix([[1, 0], [0, 1]])
    # Square of side 10: M = 4 edges, Lip = 10; the theorem's max runs
    # over i < n, so the bound is 64 * 4 * max(1, 10) = 2560.
    b = widmer_bound(lat, 4, Fraction(10))
    assert b == 2560
    # The counting inequality it certifies: |121 - 100| <= bound.
    assert abs(121 - 100) <= b


def _count_lattice_in_rect(basis, rect):
    """Exact count of lattice points of (row basis) inside [0,a]x[0,b]."""
    (a, b) = rect
    count = 0
    # crude coordinate range big enough for the test sizes
    for x in range(-60, 61):
        for y in range(-60, 61):
            px = x * basis[0][0] + y * basis[1][0]
            py = x * basis[0][1] + y * basis[1][1]
            if 0 <= px <= a and 0 <= py <= b:
                count += 1
    return count


def test_widmer_inequality_random_2d():
    rng = random.Random(20260808)
    for _ in range(40):
        while True:
            rows = [
                [rng.randint(-4, 4), rng.randint(-4, 4)],
                [rng.randint(-4, 4), rng.randint(-4, 4)],
            ]
            det = rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
            if det != 0:
                break
        a, b = rng.randint(1, 12), rng.randint(1, 12)
        lat = EmbeddedLattice.from_basis_matrix(rows)
        count = _count_lattice_in_rect(rows, (a, b))
        vol = Fraction(a * b)
        main = vol / abs(Fraction(det))
        lip = Fraction(max(a, b))
        bound = widmer_bound(lat, 4, lip)
        assert abs(Fraction(count) - main) <= bound, (rows, a, b)


def test_widmer_inequality_random_3d():
    rng = random.Random(777)
    for _ in range(12):
        while True:
            rows = [[rng.randint(-2, 2) for _ in range(3)] for _ in range(3)]
            det = (
                rows[0][0] * (rows[1][1] * rows[2][2] - rows[1][2] * rows[2][1])
                - rows[0][1] * (rows[1][0] * rows[2][2] - rows[1][2] * rows[2][0])
                + rows[0][2] * (rows[1][0] * rows[2][1] - rows[1][1] * rows[2][0])
            )
            if det != 0:
                break
        dims = [rng.randint(1, 5) for _ in range(3)]
        lat = EmbeddedLattice.from_basis_matrix(rows)
        count = 0
        for x in range(-40, 41):
            for y in range(-40, 41):
                for z in range(-40, 41):
                    p = [
                        x * rows[0][k] + y * rows[1][k] + z * rows[2][k]
                        for k in range(3)
                    ]
                    if all(0 <= p[k] <= dims[k] for k in range(3)):
                        count += 1
        vol = Fraction(dims[0] * dims[1] * dims[2])
        main = vol / abs(Fraction(det))
        # 6 faces; a face of an axis box is covered by one affine map with
        # Lipschitz constant at most the sum of its two edge lengths.
        lip = Fraction(2 * max(dims))
        bound = widmer_bound(lat, 6, lip)
        assert abs(Fraction(count) - main) <= bound, (rows, dims)


def test_minima_lower_bound_for_ideal_lattices(q5):
    # lambda_i >= (n/2)^{1/2} * N(b)^{m/n} for sigma(a b^m cap O): with
    # n = 2 the squared form reads lambda_i^2 >= N(b)^m, checked exactly.
    from unitring.linalg import lattice_intersection

    z_sqrt5 = SubOrder(q5, [(1, 0), (-1, 2)])
    p11 = IdealLattice.from_integer(q5, 11).factor()[0][0].ideal
    cases = []
    for b in (IdealLattice.from_integer(q5, 2), IdealLattice.from_integer(q5, 3), p11):
        for m in (1, 2):
            for a in (IdealLattice.unit_ideal(q5), IdealLattice.from_integer(q5, 3)):
                cases.append((a, b, m))
    for a, b, m in cases:
        prod = a * (b**m)
        for order in (SubOrder.maximal(q5), SubOrder(q5, [(1, 0), (-1, 2)])):
            rows = lattice_intersection(prod.hnf, order.basis_hnf)
            lat = EmbeddedLattice.from_sigma(q5, rows)
            for lam_sq in lat.minima_sq():
                assert lam_sq >= b.norm**m, (a.norm, b.norm, m)


def test_widmer_adversarial_thin_boxes():
    # Thin boxes and a skewed lattice: the counting inequality must hold.
    cases = [
        ([[1, 0], [0, 1]], (1, 100)),
        ([[1, 0], [0, 1]], (100, 1)),
        ([[1, 0], [99, 1]], (1, 50)),
        ([[3, 1], [1, 2]], (1, 80)),
    ]
    for rows, dims in cases:
        det = rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
        lat = EmbeddedLattice.from_basis_matrix(rows)
        count = _count_lattice_in_rect_wide(rows, dims)
        main = Fraction(dims[0] * dims[1]) / abs(Fraction(det))
        bound = widmer_bound(lat, 4, Fraction(max(dims)))
        assert abs(Fraction(count) - main) <= bound, (rows, dims)


def _count_lattice_in_rect_wide(basis, rect):
    a, b = rect
    count = 0
    for x in range(-220, 221):
        for y in range(-220, 221):
            px = x * basis[0][0] + y * basis[1][0]
            py = x * basis[0][1] + y * basis[1][1]
            if 0 <= px <= a and 0 <= py <= b:
                count += 1
    return count


def test_enumerate_nonzero_shift_coset(q5):
    # (1 + (2)) cap R(2,2) = {1}.
    two = IdealLattice.from_integer(q5, 2)
    box22 = RegionBox.from_bounds(q5.signature, [2, 2])
    pts = [p.coords for p in enumerate_region(q5, box22, two.hnf, shift=q5.one)]
    assert pts == [(1, 0)]
    # (theta + (2)) cap R(2,2) = {theta + ...}: theta itself is not totally
    # positive; theta + 2 = (2,1) has sigma (3.618, 1.382): outside (2,2).
    pts2 = [p.coords for p in enumerate_region(q5, box22, two.hnf, shift=q5.theta)]
    assert pts2 == []


def test_count_coset_examples(q5):
    two = IdealLattice.from_integer(q5, 2)
    box22 = RegionBox.from_bounds(q5.signature, [2, 2])
    cnt, main, err = count_coset(q5, q5.zero, two, box22)
    assert cnt == 1
    # main = 4 / (sqrt5 * 4) = 1/sqrt5 = 0.44721...
    assert Fraction(4472, 10**4) < main.lo and main.hi < Fraction(4473, 10**4)
    cnt2, main2, _ = count_coset(q5, q5.zero, IdealLattice.unit_ideal(q5), box22)
    assert cnt2 == 2
    # main = 4 / sqrt5 = 1.78885...
    assert Fraction(17888, 10**4) < main2.lo and main2.hi < Fraction(17889, 10**4)


def test_count_coset_empty(q5):
    # Z[sqrt5] + coset of (2) not meeting the order: beta = theta.
    z_sqrt5 = SubOrder(q5, [(1, 0), (-1, 2)])
    two = IdealLattice.from_integer(q5, 2)
    box = RegionBox.from_bounds(q5.signature, [2, 2])
    with pytest.raises(EmptyCosetError):
        count_coset(q5, q5.theta, two, box, order=z_sqrt5)
    # A coset that does meet the order works.
    cnt, _, _ = count_coset(q5, q5.one, two, box, order=z_sqrt5)
    assert cnt >= 0


def test_det_t_is_one():
    # The rescaling map diag(x^{1/n}/x_i) has determinant 1; float check.
    rng = random.Random(5)
    for _ in range(100):
        r, s = rng.choice([(2, 0), (1, 1), (0, 1), (3, 0), (2, 1)])
        n = r + 2 * s
        xs = [1.0 + 10 * rng.random() for _ in range(r + s)]
        full = xs[:r] + [v for v in xs[r:] for _ in (0, 1)]
        x = 1.0
        for v in full:
            x *= v
        det = 1.0
        for v in full:
            det *= (x ** (1.0 / n)) / v
        assert abs(det - 1.0) <= 1e-12 * max(1.0, abs(det))
