import itertools

import pytest

from pretzelfloer.closedform import (
    PretzelParams,
    check_support_constraints,
    dual_thurston_polytope,
    hfl_hull_oracle,
    knot_component,
    surface_complexities,
    theorem1_points,
)
from pretzelfloer.polytope import (
    convex_hull,
    is_centrally_symmetric,
    minkowski_diff,
    pt,
    square,
    thurston_norm,
)

GRID = list(itertools.product(range(1, 7), repeat=4))


def equal_qr_table(q, r):
    """Specialized two-parameter vertex table, transcribed independently."""
    rows = [(-1, 4 * r - 1),
            (2 * q - 3, 2 * q - 3),
            (2 * q - 1, 2 * q - 3),
            (2 * q - 1, -4 * r + 2 * q - 1)]
    if 2 * q <= 2:
        del rows[1]
    pts = []
    for x, y in rows:
        pts.append(pt(x, y))
        pts.append(pt(-x, -y))
    return pts


def test_theorem1_points_2222():
    got = set(p.as_tuple() for p in theorem1_points(PretzelParams(2, 2, 2, 2)))
    assert got == {(-1, 7), (1, -7), (1, 1), (-1, -1),
                   (3, 1), (-3, -1), (3, -5), (-3, 5)}


def test_theorem1_points_2223():
    got = set(p.as_tuple() for p in theorem1_points(PretzelParams(2, 2, 2, 3)))
    assert got == {(-1, 9), (1, -9), (1, 3), (-1, -3),
                   (3, 3), (-3, -3), (3, -7), (-3, 7)}


def test_theorem1_points_1111_omission():
    points = theorem1_points(PretzelParams(1, 1, 1, 1))
    assert len(points) == 6  # duplicates kept
    got = [p.as_tuple() for p in points]
    assert got.count((-1, 3)) == 2 and got.count((1, -3)) == 2
    assert set(got) == {(-1, 3), (1, -3), (1, -1), (-1, 1)}


def test_dual_polytope_fixtures():
    hexa = dual_thurston_polytope(PretzelParams(2, 2, 2, 2))
    assert set(v.as_tuple() for v in hexa.vertices) == {
        (-1, 7), (3, 1), (3, -5), (1, -7), (-3, -1), (-3, 5)}
    quad = dual_thurston_polytope(PretzelParams(1, 1, 1, 1))
    assert set(v.as_tuple() for v in quad.vertices) == {
        (-1, 3), (1, -3), (1, -1), (-1, 1)}
    # general-table instance with all parameters distinct
    poly = dual_thurston_polytope(PretzelParams(4, 1, 5, 3))
    assert poly == convex_hull(theorem1_points(PretzelParams(4, 1, 5, 3)))
    assert is_centrally_symmetric(poly)


def test_symmetry_exchange_and_norms_over_grid():
    for q1, r1, q2, r2 in GRID:
        p = PretzelParams(q1, r1, q2, r2)
        ball = dual_thurston_polytope(p)
        assert is_centrally_symmetric(ball)
        assert ball == dual_thurston_polytope(PretzelParams(q2, r2, q1, r1))
        assert len(theorem1_points(p)) == (6 if q1 + q2 <= 2 else 8)
        assert thurston_norm(ball, (1, 0)) == q1 + q2 - 1
        expected = max(2 * r1 + 2 * r2 + p.qB - p.qS - 1,
                       2 * p.rB - 2 * p.rS + q1 + q2 - 3)
        assert thurston_norm(ball, (0, 1)) == expected
        assert expected >= 2 * r1 + 2 * r2 - 1


def test_specialized_table_agrees_on_diagonal():
    for q in range(1, 7):
        for r in range(1, 7):
            general = dual_thurston_polytope(PretzelParams(q, r, q, r))
            assert convex_hull(equal_qr_table(q, r)) == general


def test_surface_complexities_examples():
    s = surface_complexities(PretzelParams(2, 2, 1, 3))
    assert (s.chi_FU, s.chi_FK, s.seifert_norm_K) == (-2, -10, 9)
    s = surface_complexities(PretzelParams(2, 2, 2, 2))
    assert (s.chi_FU, s.chi_FK, s.seifert_norm_K) == (-3, -7, 7)
    s = surface_complexities(PretzelParams(1, 1, 1, 1))
    assert (s.chi_FU, s.chi_FK, s.seifert_norm_K) == (-1, -3, 3)


def test_knot_component():
    summands, interval = knot_component(PretzelParams(1, 2, 1, 3))
    assert summands == ("T(-2,5)", "T(2,7)")
    assert interval == (-5, 5)
    summands, interval = knot_component(PretzelParams(3, 1, 4, 1))
    assert summands == ("T(-2,3)", "T(2,3)")
    assert interval == (-2, 2)


def test_bad_params_rejected():
    with pytest.raises(ValueError):
        PretzelParams(0, 1, 1, 1)
    with pytest.raises(ValueError):
        PretzelParams(1, -2, 1, 1)


def test_hfl_hull_oracle_roundtrip():
    for q1, r1, q2, r2 in itertools.product(range(1, 4), repeat=4):
        p = PretzelParams(q1, r1, q2, r2)
        hull = hfl_hull_oracle(p)
        assert minkowski_diff(hull.scale(2), square(1)) == dual_thurston_polytope(p)


def test_hfl_hull_oracle_widths():
    for q1, r1, q2, r2 in itertools.product(range(1, 4), repeat=4):
        p = PretzelParams(q1, r1, q2, r2)
        hull = hfl_hull_oracle(p)
        xs = [v.x for v in hull.vertices]
        assert max(xs) - min(xs) == q1 + q2
        # vertical edge length at the extreme x values equals 2*rB
        right = [v.y for v in hull.vertices if v.x == max(xs)]
        assert max(right) - min(right) == 2 * p.rB


def test_support_constraints_against_oracle():
    import itertools as it
    for params in it.product(range(1, 5), repeat=4):
        p = PretzelParams(*params)
        hull = hfl_hull_oracle(p)
        for name, ok in check_support_constraints(p, hull):
            assert ok, f"{params}: constraint failed: {name}"


def test_support_constraint_values_2213():
    from pretzelfloer.closedform import support_constraints
    from fractions import Fraction
    cons = support_constraints(PretzelParams(2, 2, 1, 3))
    by_name = {c.name: c for c in cons}
    # uncentered (0, 2r1+2r2+1) = (0, 11) lands at (-3/2, 9/2) after centering
    assert by_name["upper boundary point k=0"].point == (Fraction(-3, 2), Fraction(9, 2))
    edge = by_name["max y at right vertical edge"]
    # uncentered bound q1+q2+2rB-1 = 8 at the right edge x = q1+q2 = 3
    assert edge.x_range == (Fraction(3, 2), Fraction(3, 2))
    assert edge.value == Fraction(8) - Fraction(13, 2)
