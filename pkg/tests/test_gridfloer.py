import itertools
import os
import math
import random
from fractions import Fraction

import pytest

from pretzelfloer.alexander import LaurentPoly, alexander_poly, equal_up_to_units
from pretzelfloer.domains import domain_between, filtration_vector, maslov_index
from pretzelfloer.gridfloer import (
    BudgetExceeded,
    _Grading,
    differential,
    enumerate_states,
    grade,
    graded_euler,
    hat_support_hull,
    homology_ranks,
    thurston_polytope,
    v_factor_polynomial,
)
from pretzelfloer.links import GridDiagram, grid_to_pd, wirtinger
from pretzelfloer.polytope import convex_hull, pt, segment, thurston_norm


def test_enumerate_counts(unknot_grid, trefoil_grid):
    assert len(list(enumerate_states(unknot_grid))) == 2
    assert len(list(enumerate_states(trefoil_grid))) == 120


def test_enumerate_lexicographic(unknot_grid):
    perms = [s.perm for s in enumerate_states(unknot_grid)]
    assert perms == [(0, 1), (1, 0)]


def test_enumerate_restricted_to_top_grading(trefoil_grid):
    top = max(s.alexander for s in enumerate_states(trefoil_grid))
    picked = list(enumerate_states(trefoil_grid, alexander=top))
    assert len(picked) == 1


def test_grade_matches_domain_computation(hopf_grid, trefoil_grid):
    # the potentials used by the batch engine agree with the canonical
    # connecting-domain computation on every state
    for g in (hopf_grid, trefoil_grid):
        grading = _Grading(g)
        base = grading.base
        for p in itertools.permutations(range(g.n)):
            alex, maslov = grade(g, p)
            d = domain_between(p, base)
            assert maslov == maslov_index(g, d)
            f = filtration_vector(g, d)
            raw = tuple(b + delta for b, delta in zip(grading.base_alex, f))
            assert alex == grading.alexander_centered(raw)
            st = next(iter(enumerate_states(g, alexander=alex)))
            assert st is not None


def test_grade_unknot_centering(unknot_grid):
    values = sorted(s.alexander[0] for s in enumerate_states(unknot_grid))
    assert values == [Fraction(-1, 2), Fraction(1, 2)]


def test_base_state_maslov_zero(trefoil_grid):
    alex, maslov = grade(trefoil_grid, tuple(range(5)))
    assert maslov == 0


def test_differential_squares_to_zero_small(unknot_grid, hopf_grid, trefoil_grid):
    for g in (unknot_grid, hopf_grid, trefoil_grid):
        for p in itertools.permutations(range(g.n)):
            second = {}
            for y in differential(g, p):
                for z in differential(g, y):
                    second[z] = second.get(z, 0) + 1
            assert all(v % 2 == 0 for v in second.values())


def test_differential_drops_maslov_by_one(trefoil_grid):
    g = trefoil_grid
    graded = {s.perm: s for s in enumerate_states(g)}
    for p, s in graded.items():
        for y in differential(g, p):
            t = graded[y]
            assert t.alexander == s.alexander
            assert t.maslov_rel == s.maslov_rel - 1


def test_unknot_differential_vanishes(unknot_grid):
    # both connecting rectangles contain a marking
    assert differential(unknot_grid, (0, 1)) == set()
    assert differential(unknot_grid, (1, 0)) == set()


def test_unknot_ranks(unknot_grid):
    table = homology_ranks(unknot_grid)
    assert table.blocks == {
        (Fraction(1, 2),): {1: 1},
        (Fraction(-1, 2),): {0: 1},
    }


def test_trefoil_ranks_match_tensor_pattern(trefoil_grid):
    table = homology_ranks(trefoil_grid)
    ranks = {key[0]: sum(r.values()) for key, r in table.blocks.items() if r}
    assert ranks == {Fraction(a): b for a, b in
                     [(-3, 1), (-2, 5), (-1, 11), (0, 14), (1, 11), (2, 5), (3, 1)]}
    # single Maslov level per block, descending with the grading
    for key, levels in table.blocks.items():
        assert len(levels) == 1


def test_rank_table_symmetry(hopf_grid, trefoil_grid, fig8_grid):
    for g in (hopf_grid, trefoil_grid, fig8_grid):
        table = homology_ranks(g)
        support = table.support()
        ranks = {key: sum(table.blocks[key].values()) for key in support}
        for key in support:
            mirrored = tuple(-v for v in key)
            assert ranks.get(mirrored) == ranks[key]


def test_ranks_independent_of_base_state(hopf_grid):
    # rerunning with rotated grids shifts relative Maslov uniformly
    base_table = homology_ranks(hopf_grid)

    def normalized(table):
        out = {}
        shift = None
        for key in sorted(table.blocks):
            for m in sorted(table.blocks[key]):
                if shift is None:
                    shift = m
                out[(key, m - shift)] = table.blocks[key][m]
        return out

    from pretzelfloer.links import _rotate
    for k in (1, 2):
        rotated = _rotate(hopf_grid, k, k)
        table = homology_ranks(rotated)
        assert normalized(table) == normalized(base_table)


def test_hopf_homology_and_hull(hopf_grid):
    table = homology_ranks(hopf_grid)
    assert table.total_rank() == 16
    hull = hat_support_hull(table, hopf_grid)
    half = Fraction(1, 2)
    assert hull == convex_hull([pt(half, half), pt(-half, half),
                                pt(half, -half), pt(-half, -half)])
    # the dual ball of the Hopf complement is the origin: both spanning
    # classes are realized by annuli
    ball = thurston_polytope(hull, 2)
    assert ball == convex_hull([pt(0, 0)])
    assert thurston_norm(ball, (1, 0)) == 0


def test_trefoil_pipeline(trefoil_grid):
    table = homology_ranks(trefoil_grid)
    hull = hat_support_hull(table, trefoil_grid)
    assert hull == segment(pt(-1, 0), pt(1, 0))
    ball = thurston_polytope(hull, 1)
    assert ball == segment(pt(-1, 0), pt(1, 0))
    assert thurston_norm(ball, (1, 0)) == 1


def test_graded_euler_against_oracle(unknot_grid, hopf_grid, trefoil_grid, fig8_grid):
    for g in (unknot_grid, hopf_grid, trefoil_grid, fig8_grid):
        table = homology_ranks(g)
        chi = graded_euler(table)
        delta = alexander_poly(wirtinger(grid_to_pd(g)))
        assert equal_up_to_units(chi, delta * v_factor_polynomial(g))


def test_graded_euler_unknot(unknot_grid):
    chi = graded_euler(homology_ranks(unknot_grid))
    assert equal_up_to_units(chi, LaurentPoly({(0, 0): 1, (1, 0): -1}))


def test_budget_exceeded_names_size(trefoil_grid):
    with pytest.raises(BudgetExceeded, match=r"\d+ states"):
        homology_ranks(trefoil_grid, max_block=10)


def test_empty_rectangle_property_random():
    # every empty rectangle has Maslov index one and is positive
    from pretzelfloer.domains import is_positive, rectangle_domain
    from pretzelfloer.links import pd_to_grid, torus_pd

    rng = random.Random(20240601)
    grids = [pd_to_grid(torus_pd(k)) for k in (2, 3, 4, 5, 6)]
    checked = 0
    while checked < 1000:
        g = rng.choice(grids)
        n = g.n
        perm = list(range(n))
        rng.shuffle(perm)
        i, j = rng.sample(range(n), 2)
        r = rectangle_domain(tuple(perm), i, j)
        has_marking = any(r.mults[c][g.O[c]] or r.mults[c][g.X[c]] for c in range(n))
        interior = sum(r.mults[c][perm[c]] for c in range(n) if c not in (i, j))
        if has_marking or interior:
            continue
        assert maslov_index(g, r) == 1
        assert is_positive(r)
        checked += 1


def test_backend_parity_subprocess(trefoil_grid, tmp_path):
    # the numpy fallback must produce bit-identical tables
    import json
    import subprocess
    import sys

    from pretzelfloer.links import serialize_grid
    path = tmp_path / "g.grid"
    path.write_text(serialize_grid(trefoil_grid))
    worker = (
        "import json, sys\n"
        "from pretzelfloer.links import parse_grid\n"
        "from pretzelfloer.gridfloer import homology_ranks\n"
        "from pretzelfloer import _kernels\n"
        "g = parse_grid(open(sys.argv[1]).read())\n"
        "t = homology_ranks(g)\n"
        "print(json.dumps({'b': _kernels.BACKEND, 't': t.to_json_dict()}))\n"
    )
    results = {}
    for backend in ("numba", "numpy"):
        env = dict(os.environ, GRIDFLOER_BACKEND=backend)
        out = subprocess.run([sys.executable, "-c", worker, str(path)],
                             capture_output=True, text=True, env=env, check=True)
        data = json.loads(out.stdout)
        assert data["b"] == backend
        results[backend] = data["t"]
    assert results["numba"] == results["numpy"]


def test_d_squared_spot_checks_larger(squareknot_grid):
    # randomized per-state checks on an n = 8 grid
    rng = random.Random(77)
    g = squareknot_grid
    for _ in range(120):
        p = list(range(g.n))
        rng.shuffle(p)
        second = {}
        for y in differential(g, tuple(p)):
            for z in differential(g, y):
                second[z] = second.get(z, 0) + 1
        assert all(v % 2 == 0 for v in second.values())
