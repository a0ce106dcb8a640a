"""Exact 2D lattice/half-lattice polytope arithmetic.

Vertices are rational points whose denominators divide 2 (the natural
coordinate lattice for dual norm balls of two-component links and for
centered homology supports).  Everything is computed with exact
``fractions.Fraction`` arithmetic; there is no floating point anywhere,
so polytope equality is bit-exact and usable in golden tests.

A ``Polytope2`` may degenerate to a segment or a single point; both are
first-class values (supports of knots are intervals).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


class PolytopeError(ValueError):
    """Raised on invalid geometric input (empty hulls, bad denominators)."""


class AsymmetricSupportError(PolytopeError):
    """Raised when a point set is not a translate of a symmetric set."""


class DegenerateDecompositionError(PolytopeError):
    """Raised when an exact Minkowski decomposition does not exist."""


_HALF = Fraction(1, 2)


def _coerce(value) -> Fraction:
    f = Fraction(value)
    if f.denominator not in (1, 2):
        raise PolytopeError(f"coordinate {f} has denominator {f.denominator}; only 1 or 2 allowed")
    return f


@dataclass(frozen=True)
class Point2:
    """An exact point; x in meridian-of-U units, y in meridian-of-K units."""

    x: Fraction
    y: Fraction

    def __post_init__(self):
        object.__setattr__(self, "x", _coerce(self.x))
        object.__setattr__(self, "y", _coerce(self.y))

    def __add__(self, other: "Point2") -> "Point2":
        return Point2(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "Point2") -> "Point2":
        return Point2(self.x - other.x, self.y - other.y)

    def __neg__(self) -> "Point2":
        return Point2(-self.x, -self.y)

    def scale(self, k) -> "Point2":
        return Point2(self.x * Fraction(k), self.y * Fraction(k))

    def dot(self, other: "Point2") -> Fraction:
        return self.x * other.x + self.y * other.y

    def cross(self, other: "Point2") -> Fraction:
        return self.x * other.y - self.y * other.x

    def as_tuple(self):
        return (self.x, self.y)


def pt(x, y) -> Point2:
    """Shorthand constructor accepting ints, strings or Fractions."""
    return Point2(Fraction(x), Fraction(y))


def _cross3(o: Point2, a: Point2, b: Point2) -> Fraction:
    return (a - o).cross(b - o)


class Polytope2:
    """A convex polytope in the plane, possibly a segment or a point.

    Vertices are stored in canonical form: counterclockwise order,
    starting from the lexicographically smallest vertex, with no
    repeated and no collinear-interior vertices.  Two polytopes are
    equal iff their canonical vertex tuples are equal.
    """

    __slots__ = ("vertices",)

    def __init__(self, vertices: Sequence[Point2]):
        if not vertices:
            raise PolytopeError("no points")
        object.__setattr__(self, "vertices", tuple(vertices))

    def __setattr__(self, *args):  # pragma: no cover - guard
        raise AttributeError("Polytope2 is immutable")

    def __eq__(self, other) -> bool:
        return isinstance(other, Polytope2) and self.vertices == other.vertices

    def __hash__(self) -> int:
        return hash(self.vertices)

    def __repr__(self) -> str:
        pts = ", ".join(f"({v.x}, {v.y})" for v in self.vertices)
        return f"Polytope2[{pts}]"

    # -- basic queries -------------------------------------------------

    @property
    def is_point(self) -> bool:
        return len(self.vertices) == 1

    @property
    def is_segment(self) -> bool:
        return len(self.vertices) == 2

    def support(self, u: Point2) -> Fraction:
        """Support function h(u) = max over vertices of <v, u>."""
        return max(v.dot(u) for v in self.vertices)

    def support_vertex(self, u: Point2) -> Point2:
        """An extreme vertex in direction u (lexicographic tie-break)."""
        best = max(v.dot(u) for v in self.vertices)
        return min((v for v in self.vertices if v.dot(u) == best),
                   key=Point2.as_tuple)

    def scale(self, k) -> "Polytope2":
        return convex_hull([v.scale(k) for v in self.vertices])

    def translate(self, t: Point2) -> "Polytope2":
        return Polytope2([v + t for v in self.vertices])

    def edge_normals(self) -> list[Point2]:
        """Outward edge normals; for segments both perpendiculars."""
        verts = self.vertices
        if len(verts) == 1:
            return []
        if len(verts) == 2:
            d = verts[1] - verts[0]
            n = Point2(d.y, -d.x)
            return [n, -n]
        out = []
        for a, b in zip(verts, verts[1:] + verts[:1]):
            d = b - a
            out.append(Point2(d.y, -d.x))
        return out

    def contains(self, p: Point2) -> bool:
        """Exact point-in-polytope test (boundary counts as inside)."""
        verts = self.vertices
        if len(verts) == 1:
            return p == verts[0]
        if len(verts) == 2:
            a, b = verts
            if _cross3(a, b, p) != 0:
                return False
            lo, hi = sorted((a.as_tuple(), b.as_tuple()))
            return lo <= p.as_tuple() <= hi
        for a, b in zip(verts, verts[1:] + verts[:1]):
            if _cross3(a, b, p) < 0:
                return False
        return True

    def on_boundary(self, p: Point2) -> bool:
        verts = self.vertices
        if len(verts) <= 2:
            return self.contains(p)
        for a, b in zip(verts, verts[1:] + verts[:1]):
            if _cross3(a, b, p) == 0 and self.contains(p):
                lo, hi = sorted((a.as_tuple(), b.as_tuple()))
                if lo <= p.as_tuple() <= hi:
                    return True
        return False

    def contains_polytope(self, other: "Polytope2") -> bool:
        return all(self.contains(v) for v in other.vertices)

    def max_y_on_strip(self, x_lo: Fraction, x_hi: Fraction) -> Fraction:
        """Exact max of y over the part of the polytope with x in [x_lo, x_hi].

        Raises if the strip misses the polytope.
        """
        xs = [v.x for v in self.vertices]
        if x_hi < min(xs) or x_lo > max(xs):
            raise PolytopeError("strip does not meet polytope")
        best = None
        for v in self.vertices:
            if x_lo <= v.x <= x_hi:
                best = v.y if best is None else max(best, v.y)
        edges = []
        verts = self.vertices
        if len(verts) == 2:
            edges = [(verts[0], verts[1])]
        elif len(verts) > 2:
            edges = list(zip(verts, verts[1:] + verts[:1]))
        for a, b in edges:
            for xc in (x_lo, x_hi):
                if min(a.x, b.x) <= xc <= max(a.x, b.x) and a.x != b.x:
                    yc = a.y + (b.y - a.y) * (xc - a.x) / (b.x - a.x)
                    best = yc if best is None else max(best, yc)
        if best is None:
            raise PolytopeError("strip does not meet polytope")
        return best

    def to_json_dict(self) -> dict:
        return {"vertices": [[v.x.numerator, v.x.denominator,
                              v.y.numerator, v.y.denominator]
                             for v in self.vertices]}

    @classmethod
    def from_json_dict(cls, data: dict) -> "Polytope2":
        pts = [Point2(Fraction(xn, xd), Fraction(yn, yd))
               for xn, xd, yn, yd in data["vertices"]]
        return convex_hull(pts)


def convex_hull(points: Iterable[Point2]) -> Polytope2:
    """Convex hull with canonical vertex order (Andrew's monotone chain).

    Degenerate inputs yield a segment or a point; an empty input is an
    error.
    """
    pts = sorted(set(p.as_tuple() for p in points))
    if not pts:
        raise PolytopeError("no points")
    pts = [Point2(x, y) for x, y in pts]
    if len(pts) == 1:
        return Polytope2(pts)
    lower: list[Point2] = []
    for p in pts:
        while len(lower) >= 2 and _cross3(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[Point2] = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross3(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    if len(lower) == 2 and len(upper) == 2:
        # all points collinear: keep the two extreme points
        return Polytope2([pts[0], pts[-1]])
    verts = lower[:-1] + upper[:-1]
    # rotate so the lexicographically smallest vertex leads
    start = min(range(len(verts)), key=lambda i: verts[i].as_tuple())
    verts = verts[start:] + verts[:start]
    return Polytope2(verts)


def is_centrally_symmetric(p: Polytope2) -> bool:
    """True iff the vertex set equals its negation as a set."""
    vs = set(v.as_tuple() for v in p.vertices)
    return vs == set((-v).as_tuple() for v in p.vertices)


def center(points: Sequence[Point2]) -> tuple[list[Point2], Point2]:
    """Translate a point set so that it is symmetric about the origin.

    The subtracted center has coordinates (max + min)/2 over the hull
    vertices.  Raises AsymmetricSupportError when the translated set is
    not equal to its own negation.
    """
    if not points:
        raise PolytopeError("no points")
    hull = convex_hull(points)
    cx = (max(v.x for v in hull.vertices) + min(v.x for v in hull.vertices)) * _HALF
    cy = (max(v.y for v in hull.vertices) + min(v.y for v in hull.vertices)) * _HALF
    c = Point2(cx, cy)
    moved = [p - c for p in points]
    moved_set = set(p.as_tuple() for p in moved)
    if moved_set != set((-p).as_tuple() for p in moved):
        raise AsymmetricSupportError("asymmetric support")
    return moved, c


def minkowski_sum(p: Polytope2, q: Polytope2) -> Polytope2:
    """Setwise sum: hull of pairwise vertex sums (support functions add)."""
    return convex_hull([a + b for a in p.vertices for b in q.vertices])


def minkowski_diff(p: Polytope2, q: Polytope2) -> Polytope2:
    """Exact Minkowski decomposition: the R with R + Q = P, if one exists.

    Candidate vertices come from support-function subtraction on the
    merged normal fan; the result is then verified by re-adding Q.  When
    no exact decomposition exists (e.g. extracting a square summand from
    a segment) a DegenerateDecompositionError is raised instead of
    returning a wrong polytope.
    """
    # Directions interior to each vertex normal cone pick out support
    # vertices unambiguously; P's fan refines the candidate summand's, so
    # these directions reach every vertex of the decomposition.
    dirs = []
    for poly in (p, q):
        normals = poly.edge_normals()
        dirs += normals
        if len(poly.vertices) > 2:
            for i in range(len(normals)):
                dirs.append(normals[i - 1] + normals[i])
    # axis directions keep degenerate inputs (points, axis segments) covered
    dirs += [pt(1, 0), pt(-1, 0), pt(0, 1), pt(0, -1), pt(1, 1), pt(-1, -1)]
    candidates = []
    for u in dirs:
        candidates.append(p.support_vertex(u) - q.support_vertex(u))
    try:
        r = convex_hull(candidates)
    except PolytopeError as exc:  # pragma: no cover - candidates nonempty
        raise DegenerateDecompositionError("degenerate decomposition") from exc
    if minkowski_sum(r, q) != p:
        raise DegenerateDecompositionError("degenerate decomposition")
    return r


def thurston_norm(ball: Polytope2, cls: tuple[int, int]) -> Fraction:
    """Dual-ball norm of an integer class: max |<v, cls>| over vertices.

    For a centrally symmetric ball this is half the length of the
    projection of the ball onto the class direction.  Asymmetric input
    is rejected.
    """
    if not is_centrally_symmetric(ball):
        raise AsymmetricSupportError("norm ball must be centrally symmetric")
    u = pt(cls[0], cls[1])
    return max(abs(v.dot(u)) for v in ball.vertices)


def square(half_width=1) -> Polytope2:
    """The square [-h, h]^2: the edge-length-2h cube in two variables."""
    h = Fraction(half_width)
    return convex_hull([pt(h, h), pt(-h, h), pt(h, -h), pt(-h, -h)])


def segment(a: Point2, b: Point2) -> Polytope2:
    return convex_hull([a, b])
