import itertools

import pytest

from pretzelfloer.closedform import PretzelParams, dual_thurston_polytope, surface_complexities
from pretzelfloer.movie import MoveSchedule, render_schedule, schedule_FK, schedule_FU
from pretzelfloer.polytope import thurston_norm


def test_schedule_FU_examples():
    s = schedule_FU(PretzelParams(2, 2, 2, 2))
    assert s.punctures == 4 and s.chi == -3
    s = schedule_FU(PretzelParams(1, 1, 1, 1))
    assert s.punctures == 2 and s.chi == -1


def test_schedule_FU_matches_closed_form():
    for params in itertools.product(range(1, 7), repeat=4):
        p = PretzelParams(*params)
        assert schedule_FU(p).chi == surface_complexities(p).chi_FU


def test_movie_anchor_3131():
    s = schedule_FK(PretzelParams(3, 1, 3, 1))
    assert s.saddles == 7
    assert (s.s1, s.s2, s.s3) == (3, 4, 0)
    assert s.deaths == 4
    assert s.chi == -3
    assert s.punctures == 0


def test_schedule_FK_spiral_heavy():
    s = schedule_FK(PretzelParams(2, 2, 2, 2))
    assert s.s3 == 6
    assert s.chi == -7     # -4r + 1
    assert s.punctures == 0


def test_schedule_FK_winding_heavy():
    s = schedule_FK(PretzelParams(5, 1, 5, 1))
    assert s.punctures == 4    # 2q - 4r - 2
    assert s.chi == -7         # -2q + 3
    assert s.braid_power == 6  # 4r + 2


def test_schedule_FK_matches_closed_form_grid():
    for params in itertools.product(range(1, 7), repeat=4):
        p = PretzelParams(*params)
        assert schedule_FK(p).chi == surface_complexities(p).chi_FK


def test_regime_boundary_continuity():
    # at 4r-1 = 2q-3 the balanced and spiral-heavy formulas coincide
    for r in range(1, 6):
        q = 2 * r + 1
        s = schedule_FK(PretzelParams(q, r, q, r))
        assert s.s3 == 0 and s.punctures == 0
        assert s.chi == -2 * q + 3 == -4 * r + 1


def test_movie_realizes_the_norm():
    for params in itertools.product(range(1, 5), repeat=4):
        p = PretzelParams(*params)
        ball = dual_thurston_polytope(p)
        assert -schedule_FK(p).chi == thurston_norm(ball, (0, 1))
        assert -schedule_FU(p).chi == thurston_norm(ball, (1, 0))


def test_schedule_validation():
    with pytest.raises(ValueError):
        MoveSchedule("F_K", 2, 1, 0, 0, deaths=1, punctures=0, chi=5)


def test_render_counts():
    s = schedule_FK(PretzelParams(3, 1, 3, 1))
    svg = render_schedule(s)
    assert svg.count(":saddle<") == 7
    assert svg.count(":death<") == 4
    assert svg.startswith("<svg")
    assert s.frame_count == 7 + 4 + 2

    s2 = schedule_FK(PretzelParams(1, 1, 1, 1))
    strip = render_schedule(s2)
    assert strip.count("<rect") == s2.frame_count


def test_render_deterministic():
    s = schedule_FU(PretzelParams(2, 1, 1, 2))
    assert render_schedule(s) == render_schedule(s)
