"""Combinatorial link Floer homology of grid diagrams over GF(2).

Generators are permutations (one lattice point per grid circle pair);
the differential counts empty rectangles: positive, Maslov index one,
disjoint from all markings and from the other state points.  The
complex splits over the filtration (Alexander) grading, so each
Alexander block is enumerated, graded, differentiated and eliminated
independently; the block budget is GRIDFLOER_MAX_BLOCK states.

Gradings: the Alexander vector of a state relative to the base state is
the filtration vector of any connecting domain; the relative Maslov
grading is the domain's index.  Batch processing uses closed potentials
(marking prefix sums and planar pair counts) that agree with the domain
computation; the agreement is part of the test suite.  The Alexander
grading is absolutized by centering the full generator support, whose
extremes come from exact assignment problems rather than enumeration.
"""
from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.optimize import linear_sum_assignment

from . import _kernels
from .domains import domain_between, filtration_vector, maslov_index
from .links import GridDiagram
from .polytope import (
    DegenerateDecompositionError,
    Point2,
    Polytope2,
    center,
    convex_hull,
    minkowski_diff,
    pt,
    segment,
    square,
)
from .alexander import LaurentPoly

DEFAULT_MAX_BLOCK = 5_000_000
_ENV_MAX_BLOCK = "GRIDFLOER_MAX_BLOCK"


class BudgetExceeded(RuntimeError):
    """A filtration block does not fit the configured state budget."""


class SupportFactorError(ValueError):
    """The homology support does not factor through the diagram's extra markings."""


def max_block_budget() -> int:
    raw = os.environ.get(_ENV_MAX_BLOCK, "")
    if raw.strip():
        return int(float(raw))
    return DEFAULT_MAX_BLOCK


@dataclass(frozen=True)
class GridState:
    """One generator: a permutation with its cached gradings."""

    perm: tuple[int, ...]
    alexander: tuple[Fraction, ...]
    maslov_rel: int


class _Grading:
    """Precomputed grading potentials for one grid diagram.

    ``A_c(x) = sum_i M_c[i, x_i]`` with M_c the prefix-sum of signed
    component-c markings (X counts +1, O counts -1); differences across
    any rectangle equal its X-minus-O multiplicities, including the
    wrapping ones, because every row and column is marking-balanced.
    The Maslov potential is the planar pair count
    I(x,x) - I(x,O) - I(O,x), whose differences match the domain index.
    """

    def __init__(self, g: GridDiagram):
        self.grid = g
        n = g.n
        self.order = g.component_order()
        self.potentials = []
        for label in self.order:
            w = np.zeros((n, n), dtype=np.int64)
            for i in range(n):
                if g.labels[i] == label:
                    w[i, g.X[i]] += 1
                    w[i, g.O[i]] -= 1
            m = np.zeros((n, n), dtype=np.int64)
            m[1:, 1:] = w.cumsum(axis=0).cumsum(axis=1)[:-1, :-1]
            self.potentials.append(m)
        self.base = tuple(range(n))
        self.base_alex = tuple(int(m[np.arange(n), self.base].sum())
                               for m in self.potentials)
        self.base_maslov = self._maslov_raw(self.base)
        # exact extremes of each raw Alexander coordinate over all states
        self.extremes = []
        for m in self.potentials:
            rows, cols = linear_sum_assignment(m)
            lo = int(m[rows, cols].sum())
            rows, cols = linear_sum_assignment(-m)
            hi = int(m[rows, cols].sum())
            self.extremes.append((lo, hi))
        self.centers = tuple(Fraction(lo + hi, 2) for lo, hi in self.extremes)

    def _maslov_raw(self, p) -> int:
        n = self.grid.n
        O = self.grid.O
        ixx = sum(1 for i in range(n) for j in range(i + 1, n) if p[i] < p[j])
        ixo = sum(1 for i in range(n) for j in range(i, n) if p[i] <= O[j])
        iox = sum(1 for i in range(n) for j in range(i + 1, n) if O[i] < p[j])
        return ixx - ixo - iox

    def alexander_centered(self, raw: tuple[int, ...]) -> tuple[Fraction, ...]:
        return tuple(Fraction(r) - c for r, c in zip(raw, self.centers))

    def raw_alexander(self, p) -> tuple[int, ...]:
        n = self.grid.n
        return tuple(int(m[np.arange(n), list(p)].sum()) for m in self.potentials)


def grade(g: GridDiagram, perm) -> tuple[tuple[Fraction, ...], int]:
    """Gradings of one state, computed from a connecting domain.

    The relative Alexander vector and Maslov index come from the
    canonical domain to the base state (the identity permutation); the
    Alexander grading is then centered over the full generator support.
    """
    grading = _Grading(g)
    d = domain_between(perm, grading.base)
    f = filtration_vector(g, d)
    raw = tuple(b + delta for b, delta in zip(grading.base_alex, f))
    mu = maslov_index(g, d)
    return grading.alexander_centered(raw), mu


def enumerate_states(g: GridDiagram, alexander=None):
    """Stream all n! states in lexicographic order, graded on the fly.

    With ``alexander`` set, only states at that centered Alexander
    vector are yielded.
    """
    grading = _Grading(g)
    n = g.n
    target = tuple(alexander) if alexander is not None else None
    for p in itertools.permutations(range(n)):
        raw = grading.raw_alexander(p)
        alex = grading.alexander_centered(raw)
        if target is not None and alex != target:
            continue
        mu = grading._maslov_raw(p) - grading.base_maslov
        yield GridState(p, alex, mu)


def differential(g: GridDiagram, perm) -> set[tuple[int, ...]]:
    """States reached by empty rectangles from ``perm`` (coefficients mod 2).

    A rectangle counts when it is positive, has Maslov index one,
    contains no marking and no other point of the state in its
    interior; a target appears when an odd number of its rectangles
    qualify.
    """
    n = g.n
    p = list(perm)
    out: set[tuple[int, ...]] = set()
    for i in range(n):
        for j in range(i + 1, n):
            hits = 0
            for (a, b) in ((i, j), (j, i)):
                if _kernels._rect_empty_py(n, p, g.O, g.X, a, b):
                    hits += 1
            if hits % 2 == 1:
                q = p[:]
                q[i], q[j] = q[j], q[i]
                out.add(tuple(q))
    return out


@dataclass
class RankTable:
    """Homology ranks per centered Alexander vector and relative Maslov."""

    component_order: list[str]
    blocks: dict[tuple[Fraction, ...], dict[int, int]]
    generators: dict[tuple[Fraction, ...], int]

    def support(self) -> list[tuple[Fraction, ...]]:
        return sorted(k for k, ranks in self.blocks.items()
                      if any(r > 0 for r in ranks.values()))

    def total_rank(self) -> int:
        return sum(r for ranks in self.blocks.values() for r in ranks.values())

    def to_json_dict(self) -> dict:
        out = []
        for key in sorted(self.blocks):
            a = key[0]
            b = key[1] if len(key) > 1 else Fraction(0)
            ranks = {str(m): r for m, r in sorted(self.blocks[key].items()) if r > 0}
            out.append({
                "alexander": [a.numerator, a.denominator, b.numerator, b.denominator],
                "ranks": ranks,
                "generators": self.generators[key],
            })
        return {"components": self.component_order, "blocks": out}


def homology_ranks(g: GridDiagram, max_block: int | None = None) -> RankTable:
    """Tilde-flavor homology ranks of the grid complex, block by block.

    Raises BudgetExceeded naming the offending block size when any
    Alexander block (or the unavoidable lower bound on the largest one)
    passes the budget.
    """
    budget = max_block if max_block is not None else max_block_budget()
    grading = _Grading(g)
    n = g.n
    total = math.factorial(n)
    # cheap certified lower bound on the largest block before enumerating
    n_keys = 1
    for lo, hi in grading.extremes:
        n_keys *= hi - lo + 1
    lower_bound = -(-total // n_keys)
    if lower_bound > budget:
        raise BudgetExceeded(
            f"largest filtration block holds at least {lower_bound} states "
            f"(budget {budget})")

    O = np.array(g.O, dtype=np.int64)
    X = np.array(g.X, dtype=np.int64)
    pots = grading.potentials
    if len(pots) == 1:
        au_arrays = _kernels.grade_all(n, pots[0], np.zeros_like(pots[0]), O, X)
    else:
        au_arrays = _kernels.grade_all(n, pots[0], pots[1], O, X)
    au, ak, mm, packed = au_arrays

    lo0 = grading.extremes[0][0]
    span0 = grading.extremes[0][1] - lo0 + 1
    if len(pots) > 1:
        lo1 = grading.extremes[1][0]
        key = (au.astype(np.int64) - lo0) * (grading.extremes[1][1] - lo1 + 1) \
            + (ak.astype(np.int64) - lo1)
    else:
        key = au.astype(np.int64) - lo0
    order = np.argsort(key, kind="stable")
    sorted_keys = key[order]
    boundaries = np.flatnonzero(np.diff(sorted_keys)) + 1
    starts = np.concatenate(([0], boundaries))
    ends = np.concatenate((boundaries, [total]))

    blocks: dict[tuple[Fraction, ...], dict[int, int]] = {}
    generators: dict[tuple[Fraction, ...], int] = {}
    for s, e in zip(starts, ends):
        size = int(e - s)
        if size > budget:
            raise BudgetExceeded(
                f"filtration block holds {size} states (budget {budget})")
        idx = order[s:e]
        if len(pots) > 1:
            raw = (int(au[idx[0]]), int(ak[idx[0]]))
        else:
            raw = (int(au[idx[0]]),)
        alex = grading.alexander_centered(raw)
        pk = packed[idx]
        sort2 = np.argsort(pk, kind="stable")
        pk_sorted = pk[sort2]
        mm_local = (mm[idx[sort2]] - grading.base_maslov).astype(np.int64)
        eu, ev = _kernels.block_edges(n, pk_sorted, O, X)
        if len(eu):
            drops = mm_local[eu] - mm_local[ev]
            if not np.all(drops == 1):
                raise AssertionError("differential must drop the Maslov grading by one")
        ranks_by_level: dict[int, int] = {}
        levels = np.unique(mm_local)
        dims = {int(m): int(np.sum(mm_local == m)) for m in levels}
        if len(eu):
            lvl_of_edge = mm_local[eu]
            for m in np.unique(lvl_of_edge):
                sel = lvl_of_edge == m
                ranks_by_level[int(m)] = _kernels.graded_rank(
                    len(pk_sorted), len(pk_sorted), eu[sel], ev[sel])
        hom: dict[int, int] = {}
        for m, dim in dims.items():
            r_m = ranks_by_level.get(m, 0)
            r_up = ranks_by_level.get(m + 1, 0)
            h = dim - r_m - r_up
            if h < 0:
                raise AssertionError("negative homology rank")
            if h:
                hom[m] = h
        blocks[alex] = hom
        generators[alex] = size
    return RankTable(grading.order, blocks, generators)


def hat_support_hull(table: RankTable, g: GridDiagram) -> Polytope2:
    """Centered hull of the hat-flavor homology support.

    The grid homology equals the hat invariant tensored with one
    two-step factor per extra marking of each component, so the tilde
    support hull is the hat hull plus a (negative) box with side
    n_c - 1 per component; the box is deconvolved exactly and the
    result centered.
    """
    support = table.support()
    if not support:
        raise SupportFactorError("empty homology support")
    two = len(table.component_order) == 2
    if two:
        pts = [Point2(a, b) for a, b in support]
    else:
        pts = [Point2(a, Fraction(0)) for (a,) in support]
    tilde = convex_hull(pts)
    box_corners = []
    n_u = g.markings_of(table.component_order[0])
    if two:
        n_k = g.markings_of(table.component_order[1])
        for dx in (0, -(n_u - 1)):
            for dy in (0, -(n_k - 1)):
                box_corners.append(pt(dx, dy))
    else:
        box_corners = [pt(0, 0), pt(-(n_u - 1), 0)]
    box = convex_hull(box_corners)
    try:
        hat = minkowski_diff(tilde, box)
    except DegenerateDecompositionError as exc:
        raise SupportFactorError("tilde support does not factor") from exc
    moved, _ = center(hat.vertices)
    return convex_hull(moved)


def thurston_polytope(hull: Polytope2, ncomponents: int = 2) -> Polytope2:
    """Dual Thurston polytope extracted from the centered hat hull.

    Doubles the hull and removes the edge-length-two cube (the interval
    [-1, 1] for knots); a failed decomposition propagates as the
    degenerate-decomposition error (the norm ball of e.g. the Hopf link
    is lower-dimensional).
    """
    if ncomponents == 2:
        cube = square(1)
    else:
        cube = segment(pt(-1, 0), pt(1, 0))
    return minkowski_diff(hull.scale(2), cube)


def graded_euler(table: RankTable) -> LaurentPoly:
    """Graded Euler characteristic as an integer Laurent polynomial.

    Exponents are shifted back to integers by undoing the centering
    (any unit monomial is immaterial: callers compare canonical forms).
    """
    support = sorted(table.blocks)
    if not support:
        return LaurentPoly.zero()
    mins = [min(key[c] for key in support) for c in range(len(table.component_order))]
    terms: dict[tuple[int, int], int] = {}
    for key, ranks in table.blocks.items():
        shifted = [key[c] - mins[c] for c in range(len(key))]
        if any(s.denominator != 1 for s in shifted):
            raise AssertionError("support does not sit on a shifted integer lattice")
        a = int(shifted[0])
        b = int(shifted[1]) if len(shifted) > 1 else 0
        chi = sum((-1) ** (m % 2) * r for m, r in ranks.items())
        if chi:
            terms[(a, b)] = terms.get((a, b), 0) + chi
    return LaurentPoly(terms)


def v_factor_polynomial(g: GridDiagram) -> LaurentPoly:
    """The factor relating the graded Euler characteristic to Delta.

    chi of the grid homology is Delta times (1 - t)^(n-1) for a knot
    with n markings, and times (1 - t_U)^{n_U} (1 - t_K)^{n_K} for a
    two-component link: each extra marking contributes one two-step
    factor, and for links the hat invariant itself carries one
    (t_c^{1/2} - t_c^{-1/2}) per component (rank four for the Hopf
    link, not two).  Verified against the Fox oracle on the fixture
    suite.
    """
    order = g.component_order()
    extra = 0 if len(order) == 1 else 1
    out = LaurentPoly.one()
    for idx, label in enumerate(order):
        var = (1, 0) if idx == 0 else (0, 1)
        factor = LaurentPoly({(0, 0): 1, var: -1})
        for _ in range(g.markings_of(label) - 1 + extra):
            out = out * factor
    return out
