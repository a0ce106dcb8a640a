"""Closed-form invariants of the pretzel links P(-2r1-1, 2q1, -2q2, 2r2+1).

Everything here is a polynomial formula in the four positive twist
parameters: the vertex table of the dual Thurston polytope, the
Euler characteristics of norm-realizing spanning surfaces, the torus
knot decomposition of the knotted component, and the expected centered
hull of the nontrivial link-homology filtration support.  The latter is
used as an oracle for the grid engine in the test suite.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .polytope import (
    Point2,
    Polytope2,
    convex_hull,
    minkowski_sum,
    pt,
    square,
)


@dataclass(frozen=True)
class PretzelParams:
    """Positive twist counts (q1, r1, q2, r2) of P(-2r1-1, 2q1, -2q2, 2r2+1)."""

    q1: int
    r1: int
    q2: int
    r2: int

    def __post_init__(self):
        for name in ("q1", "r1", "q2", "r2"):
            v = getattr(self, name)
            if not isinstance(v, int) or v < 1:
                raise ValueError(f"{name} must be a positive integer, got {v!r}")

    @property
    def qB(self) -> int:
        return max(self.q1, self.q2)

    @property
    def qS(self) -> int:
        return min(self.q1, self.q2)

    @property
    def rB(self) -> int:
        return max(self.r1, self.r2)

    @property
    def rS(self) -> int:
        return min(self.r1, self.r2)

    def coefficients(self) -> tuple[int, int, int, int]:
        """Signed twist-column coefficients of the standard diagram."""
        return (-2 * self.r1 - 1, 2 * self.q1, -2 * self.q2, 2 * self.r2 + 1)


@dataclass(frozen=True)
class SurfaceComplexities:
    """Euler characteristics of minimal spanning surfaces for U and K."""

    chi_FU: int
    chi_FK: int
    seifert_norm_K: int


def theorem1_points(p: PretzelParams) -> list[Point2]:
    """The eight-point vertex table of the dual Thurston polytope.

    Emitted verbatim, duplicates included, so the transcription stays
    auditable; the hull computation deduplicates.  When q1 + q2 <= 2 the
    second symmetric pair is omitted and only six points are returned.
    """
    q1, r1, q2, r2 = p.q1, p.r1, p.q2, p.r2
    qB, qS, rB, rS = p.qB, p.qS, p.rB, p.rS
    rows = [
        (qB - qS - 1, 2 * r1 + 2 * r2 + qB - qS - 1),
        (q1 + q2 - 3, 2 * rB - 2 * rS + q1 + q2 - 3),
        (q1 + q2 - 1, 2 * rB - 2 * rS + q1 + q2 - 3),
        (q1 + q2 - 1, -2 * r1 - 2 * r2 + q1 + q2 - 1),
    ]
    if q1 + q2 <= 2:
        del rows[1]
    points = []
    for x, y in rows:
        points.append(pt(x, y))
        points.append(pt(-x, -y))
    return points


def dual_thurston_polytope(p: PretzelParams) -> Polytope2:
    """Dual Thurston norm ball: convex hull of the vertex table."""
    return convex_hull(theorem1_points(p))


def surface_complexities(p: PretzelParams) -> SurfaceComplexities:
    """chi of the minimal spanning surfaces and the Seifert bound for K.

    chi(F_U) = 1 - q1 - q2; chi(F_K) is minus the larger of the two
    regime values; the minimal Seifert complexity of K alone is
    2r1 + 2r2 - 1.
    """
    q1, r1, q2, r2 = p.q1, p.r1, p.q2, p.r2
    norm_k = max(2 * r1 + 2 * r2 + p.qB - p.qS - 1,
                 2 * p.rB - 2 * p.rS + q1 + q2 - 3)
    return SurfaceComplexities(
        chi_FU=1 - q1 - q2,
        chi_FK=-norm_k,
        seifert_norm_K=2 * r1 + 2 * r2 - 1,
    )


def knot_component(p: PretzelParams) -> tuple[tuple[str, str], tuple[int, int]]:
    """Torus-knot summands of K and its hat-homology support interval.

    K is the connected sum T(-2, 2r1+1) # T(2, 2r2+1); the Alexander
    support of its hat homology is the interval [-r1-r2, r1+r2].
    """
    summands = (f"T(-2,{2 * p.r1 + 1})", f"T(2,{2 * p.r2 + 1})")
    return summands, (-(p.r1 + p.r2), p.r1 + p.r2)


def hfl_hull_oracle(p: PretzelParams) -> Polytope2:
    """Expected centered hull of the nontrivial filtration support.

    The dual polytope plus the unit square, halved: the exact inverse of
    the cube extraction used by the grid pipeline, so the grid engine's
    hat-support hull must reproduce this polytope.
    """
    return minkowski_sum(dual_thurston_polytope(p), square(1)).scale(Fraction(1, 2))


# Center of the uncentered ("temporary") support coordinates used by the
# support-point constraints below.  In those coordinates the support hull
# spans x in [0, q1+q2] and its top row sits at y = 2r1+2r2+qB, which
# matches the centered oracle's top at (max-norm-y + 1)/2; both regimes
# give the same center.
def _support_center(p: PretzelParams) -> Point2:
    half = Fraction(1, 2)
    cx = (p.q1 + p.q2) * half
    cy = p.r1 + p.r2 + (p.q1 + p.q2) * half
    return Point2(cx, cy)


@dataclass(frozen=True)
class SupportConstraint:
    """One machine-checkable assertion about the centered support hull."""

    name: str
    kind: str  # "boundary_point" | "support_point" | "max_y_on_strip"
    point: tuple[Fraction, Fraction] | None = None
    x_range: tuple[Fraction, Fraction] | None = None
    value: Fraction | None = None


def support_constraints(p: PretzelParams) -> list[SupportConstraint]:
    """Named support points and bounds, translated to centered coordinates.

    The constraints are stated in the uncentered diagram coordinates
    (the k-indexed upper boundary points, the nonvanishing levels, and
    the maximal y at the right vertical edge x = q1+q2, which equals
    q1 + q2 + 2rB - 1) and then shifted by the support center so they
    can be checked directly against a centered hull.

    The full-strip max-y bound over qB+1 <= x <= q1+q2 constrains the
    generator set, not its hull (the hull interpolates above interior
    lattice columns), so only its right-edge value is emitted here.
    """
    c = _support_center(p)
    out: list[SupportConstraint] = []
    two_r = 2 * p.r1 + 2 * p.r2
    for k in range(p.qB):
        q = pt(k, two_r + 1 + k) - c
        out.append(SupportConstraint(
            name=f"upper boundary point k={k}",
            kind="boundary_point",
            point=q.as_tuple(),
        ))
    # nontrivial level adjacent to the k-chain: contained in the hull,
    # though not always an extreme point of the homology support
    corner = pt(p.qB, two_r + p.qB) - c
    out.append(SupportConstraint(
        name="upper right support point",
        kind="support_point",
        point=corner.as_tuple(),
    ))
    edge_x = Fraction(p.q1 + p.q2) - c.x
    out.append(SupportConstraint(
        name="max y at right vertical edge",
        kind="max_y_on_strip",
        x_range=(edge_x, edge_x),
        value=Fraction(p.q1 + p.q2 + 2 * p.rB - 1) - c.y,
    ))
    return out


def check_support_constraints(p: PretzelParams, hull: Polytope2) -> list[tuple[str, bool]]:
    """Evaluate each constraint against a centered hull."""
    results = []
    for cons in support_constraints(p):
        if cons.kind == "boundary_point":
            ok = hull.on_boundary(Point2(*cons.point))
        elif cons.kind == "support_point":
            ok = hull.contains(Point2(*cons.point))
        else:
            lo, hi = cons.x_range
            ok = hull.max_y_on_strip(lo, hi) == cons.value
        results.append((cons.name, ok))
    return results
