import random
from fractions import Fraction

import pytest

from pretzelfloer.polytope import (
    AsymmetricSupportError,
    DegenerateDecompositionError,
    Point2,
    PolytopeError,
    center,
    convex_hull,
    is_centrally_symmetric,
    minkowski_diff,
    minkowski_sum,
    pt,
    segment,
    square,
    thurston_norm,
)


def hexagon_qr2():
    # dual ball of the q=r=2 pretzel, baked as a golden fixture
    return convex_hull([pt(-1, 7), pt(1, -7), pt(1, 1), pt(-1, -1),
                        pt(3, 1), pt(-3, -1), pt(3, -5), pt(-3, 5)])


def test_point_denominator_guard():
    pt(1, Fraction(3, 2))
    with pytest.raises(PolytopeError):
        pt(1, Fraction(1, 4))


def test_hull_of_eight_table_points_is_hexagon():
    hull = hexagon_qr2()
    assert [v.as_tuple() for v in hull.vertices] == [
        (-3, -1), (1, -7), (3, -5), (3, 1), (-1, 7), (-3, 5)]


def test_hull_singleton_and_collinear():
    p = convex_hull([pt(0, 0)])
    assert p.is_point
    s = convex_hull([pt(0, 0), pt(1, 1), pt(2, 2)])
    assert s.is_segment
    assert [v.as_tuple() for v in s.vertices] == [(0, 0), (2, 2)]
    with pytest.raises(PolytopeError):
        convex_hull([])


def test_hull_idempotent():
    rng = random.Random(7)
    for _ in range(50):
        pts = [pt(rng.randint(-5, 5), rng.randint(-5, 5)) for _ in range(rng.randint(1, 12))]
        h = convex_hull(pts)
        assert convex_hull(h.vertices) == h


def test_central_symmetry():
    assert is_centrally_symmetric(hexagon_qr2())
    assert not is_centrally_symmetric(segment(pt(0, 0), pt(2, 2)))
    assert is_centrally_symmetric(convex_hull([pt(0, 0)]))


def test_center_examples():
    moved, c = center([pt(0, 0), pt(1, 1), pt(2, 2)])
    assert c == pt(1, 1)
    assert sorted(p.as_tuple() for p in moved) == [(-1, -1), (0, 0), (1, 1)]

    moved, c = center([pt(0, 1), pt(0, 2)])
    assert c == Point2(Fraction(0), Fraction(3, 2))
    assert sorted(p.as_tuple() for p in moved) == [
        (0, Fraction(-1, 2)), (0, Fraction(1, 2))]

    with pytest.raises(AsymmetricSupportError):
        center([pt(0, 0), pt(1, 0), pt(0, 1)])


def test_center_output_is_symmetric():
    rng = random.Random(11)
    for _ in range(30):
        base = [(rng.randint(-4, 4), rng.randint(-4, 4)) for _ in range(rng.randint(1, 6))]
        sym = [pt(x, y) for x, y in base] + [pt(-x, -y) for x, y in base]
        shift = pt(rng.randint(-3, 3), rng.randint(-3, 3))
        moved, c = center([p + shift for p in sym])
        assert set(p.as_tuple() for p in moved) == set((-p).as_tuple() for p in moved)


def test_minkowski_sum_examples():
    seg = segment(pt(-1, -1), pt(1, 1))
    s = minkowski_sum(seg, square(1))
    assert set(v.as_tuple() for v in s.vertices) == {
        (-2, 0), (0, 2), (2, 2), (2, 0), (0, -2), (-2, -2)}
    p = hexagon_qr2()
    assert minkowski_sum(p, convex_hull([pt(0, 0)])) == p
    assert minkowski_sum(square(1), square(1)) == square(2)


def test_minkowski_sum_commutative_associative():
    rng = random.Random(3)
    for _ in range(20):
        polys = []
        for _ in range(3):
            n = rng.randint(1, 6)
            polys.append(convex_hull([pt(rng.randint(-4, 4), rng.randint(-4, 4))
                                      for _ in range(n)]))
        a, b, c = polys
        assert minkowski_sum(a, b) == minkowski_sum(b, a)
        assert minkowski_sum(minkowski_sum(a, b), c) == minkowski_sum(a, minkowski_sum(b, c))


def test_minkowski_diff_examples():
    assert minkowski_diff(square(2), square(1)) == square(1)
    with pytest.raises(DegenerateDecompositionError):
        minkowski_diff(segment(pt(-1, -1), pt(1, 1)), square(1))


def test_minkowski_roundtrip_random():
    rng = random.Random(5)
    for _ in range(40):
        a = convex_hull([pt(rng.randint(-4, 4), rng.randint(-4, 4))
                         for _ in range(rng.randint(1, 7))])
        b = convex_hull([pt(rng.randint(-4, 4), rng.randint(-4, 4))
                         for _ in range(rng.randint(1, 7))])
        s = minkowski_sum(a, b)
        r = minkowski_diff(s, b)
        assert minkowski_sum(r, b) == s


def test_thurston_norm_examples():
    hexa = hexagon_qr2()
    assert thurston_norm(hexa, (0, 1)) == 7
    assert thurston_norm(hexa, (1, 0)) == 3
    assert thurston_norm(convex_hull([pt(0, 0)]), (5, -3)) == 0
    with pytest.raises(AsymmetricSupportError):
        thurston_norm(segment(pt(0, 0), pt(2, 2)), (1, 0))


def test_thurston_norm_homogeneous():
    hexa = hexagon_qr2()
    rng = random.Random(13)
    for _ in range(25):
        a = rng.randint(-4, 4)
        cx, cy = rng.randint(-3, 3), rng.randint(-3, 3)
        assert thurston_norm(hexa, (a * cx, a * cy)) == abs(a) * thurston_norm(hexa, (cx, cy))


def test_json_roundtrip():
    from pretzelfloer.polytope import Polytope2
    h = hexagon_qr2()
    assert Polytope2.from_json_dict(h.to_json_dict()) == h


def test_max_y_on_strip():
    hexa = hexagon_qr2()
    assert hexa.max_y_on_strip(Fraction(-1), Fraction(-1)) == 7
    assert hexa.max_y_on_strip(Fraction(3), Fraction(3)) == 1
    assert hexa.max_y_on_strip(Fraction(0), Fraction(2)) == Fraction(11, 2)
