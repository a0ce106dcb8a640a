"""Multivariable Alexander polynomials via Fox calculus.

The oracle path: Wirtinger presentation -> matrix of abelianized Fox
derivatives -> delete one generator column (on the unknotted component)
and one redundant relation -> exact determinant -> divide by (t_U - 1)
for two-component links.  Everything is exact integer arithmetic; the
determinant of the Laurent matrix is computed by evaluation at integer
points (fraction-free Bareiss) and exact interpolation.

Polynomials are normalized to a canonical unit: the lexicographically
smallest exponent is shifted to (0, 0) and its coefficient made
positive, so "equal up to units" is plain equality of canonical forms.
"""
from __future__ import annotations

from fractions import Fraction

from .exactlinalg import bareiss_det, interpolate_univariate
from .links import WirtingerPresentation
from .polytope import Point2, Polytope2, center, convex_hull, pt


class AlexanderError(ValueError):
    pass


class ZeroPolynomialError(AlexanderError):
    pass


class LaurentPoly:
    """Integer Laurent polynomial in the two meridian variables (t_U, t_K).

    Single-variable polynomials live on the first exponent axis.  Terms
    with zero coefficient are never stored.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms: dict[tuple[int, int], int] = {}
        if terms:
            for exp, coeff in dict(terms).items():
                if coeff:
                    self.terms[(int(exp[0]), int(exp[1]))] = int(coeff)

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls()

    @classmethod
    def monomial(cls, a: int, b: int, coeff: int = 1) -> "LaurentPoly":
        return cls({(a, b): coeff})

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls.monomial(0, 0)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return isinstance(other, LaurentPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = dict(self.terms)
        for exp, c in other.terms.items():
            out[exp] = out.get(exp, 0) + c
        return LaurentPoly(out)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        out: dict[tuple[int, int], int] = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                key = (a1 + a2, b1 + b2)
                out[key] = out.get(key, 0) + c1 * c2
        return LaurentPoly(out)

    def shift(self, a: int, b: int) -> "LaurentPoly":
        return LaurentPoly({(e[0] + a, e[1] + b): c for e, c in self.terms.items()})

    def evaluate(self, x: int, y: int) -> Fraction:
        """Exact value at integer arguments (negative exponents allowed)."""
        total = Fraction(0)
        for (a, b), c in self.terms.items():
            total += Fraction(c) * Fraction(x) ** a * Fraction(y) ** b
        return total

    def min_exponents(self) -> tuple[int, int]:
        return (min(e[0] for e in self.terms), min(e[1] for e in self.terms))

    def canonical(self) -> "LaurentPoly":
        """Shift the lex-smallest exponent to (0,0); make its coefficient > 0."""
        if self.is_zero:
            return LaurentPoly()
        lead = min(self.terms)
        shifted = self.shift(-lead[0], -lead[1])
        if shifted.terms[(0, 0)] < 0:
            shifted = -shifted
        return shifted

    def divide_exact(self, var: int) -> "LaurentPoly":
        """Exact division by (t_var - 1); raises if the remainder is nonzero."""
        if self.is_zero:
            return LaurentPoly()
        out: dict[tuple[int, int], int] = {}
        # group by the other exponent; divide each slice by (t - 1)
        slices: dict[int, dict[int, int]] = {}
        for (a, b), c in self.terms.items():
            main, other = (a, b) if var == 0 else (b, a)
            slices.setdefault(other, {})[main] = c
        for other, coeffs in slices.items():
            lo = min(coeffs)
            hi = max(coeffs)
            # synthetic division of sum c_k t^k by (t - 1), low end first
            acc = 0
            for k in range(lo, hi + 1):
                acc += coeffs.get(k, 0)
                if k == hi:
                    if acc != 0:
                        raise AlexanderError("division by (t - 1) is not exact")
                    break
                quot = -acc   # quotient coefficient of t^k
                if quot:
                    key = (k, other) if var == 0 else (other, k)
                    out[key] = quot
        return LaurentPoly(out)

    def to_json_dict(self) -> dict:
        return {"terms": [[a, b, c] for (a, b), c in sorted(self.terms.items())]}

    @classmethod
    def from_json_dict(cls, data: dict) -> "LaurentPoly":
        return cls({(a, b): c for a, b, c in data["terms"]})

    def __repr__(self):
        if self.is_zero:
            return "LaurentPoly(0)"
        bits = []
        for (a, b), c in sorted(self.terms.items()):
            bits.append(f"{c}*u^{a}*v^{b}")
        return "LaurentPoly(" + " + ".join(bits) + ")"


def equal_up_to_units(f: LaurentPoly, g: LaurentPoly) -> bool:
    return f.canonical() == g.canonical()


# ---------------------------------------------------------------------------
# Fox calculus


def fox_derivative(word, gen: int, variable_of) -> LaurentPoly:
    """Abelianized free derivative of a group word.

    ``word`` is a sequence of (generator, +-1) letters; ``variable_of``
    maps a generator to its component's exponent vector (e.g. (1, 0)
    for the unknotted meridian).  The Leibniz rule d(uv) = du + u*dv is
    applied letter by letter, with d(g)/dg = 1 and d(g^-1)/dg = -g^-1.
    """
    result = LaurentPoly.zero()
    prefix = LaurentPoly.one()
    for g, e in word:
        a, b = variable_of(g)
        if e == 1:
            if g == gen:
                result = result + prefix
            prefix = prefix.shift(a, b)
        elif e == -1:
            prefix = prefix.shift(-a, -b)
            if g == gen:
                result = result - prefix
        else:
            raise AlexanderError("word letters must have exponent +1 or -1")
    return result


def _laurent_matrix_det(matrix: list[list[LaurentPoly]]) -> LaurentPoly:
    """Exact determinant by integer evaluation and interpolation.

    Rows are first shifted by monomials to clear negative exponents
    (changing the result by a unit only, which the callers normalize
    away).  Degree bounds come from the actual entries.
    """
    m = len(matrix)
    if m == 0:
        return LaurentPoly.one()
    rows = []
    for row in matrix:
        mins = [p.min_exponents() for p in row if not p.is_zero]
        if not mins:
            return LaurentPoly.zero()
        sa = min(a for a, _ in mins)
        sb = min(b for _, b in mins)
        rows.append([p.shift(-sa, -sb) for p in row])
    deg_a = sum(max((e[0] for p in row for e in p.terms), default=0) for row in rows)
    deg_b = sum(max((e[1] for p in row for e in p.terms), default=0) for row in rows)
    # small evaluation points keep the Bareiss integers short
    xs = list(range(-(deg_a // 2), -(deg_a // 2) + deg_a + 1))
    ys = list(range(-(deg_b // 2), -(deg_b // 2) + deg_b + 1))
    # values[i][j] = det at (xs[i], ys[j])
    values = []
    for x in xs:
        row_vals = []
        for y in ys:
            int_matrix = [[int(p.evaluate(x, y)) for p in row] for row in rows]
            row_vals.append(Fraction(bareiss_det(int_matrix)))
        values.append(row_vals)
    # interpolate in y for each x, then in x for each y-coefficient
    y_coeffs = [interpolate_univariate(ys, vals) for vals in values]
    terms: dict[tuple[int, int], int] = {}
    for b in range(deg_b + 1):
        column = [y_coeffs[i][b] for i in range(len(xs))]
        a_coeffs = interpolate_univariate(xs, column)
        for a, coeff in enumerate(a_coeffs):
            if coeff:
                if coeff.denominator != 1:
                    raise AlexanderError("interpolation produced non-integer coefficient")
                terms[(a, b)] = int(coeff)
    return LaurentPoly(terms)


def alexander_poly(w: WirtingerPresentation) -> LaurentPoly:
    """Alexander polynomial of a knot or two-component link presentation.

    Builds the Fox derivative matrix, deletes the column of the first
    generator on the unknotted component (first component for knots) and
    one redundant relation, takes the determinant, and for links divides
    exactly by (t_U - 1).  The result is unit-normalized; the zero
    polynomial is a legitimate value.
    """
    labels = w.component_labels
    if len(labels) not in (1, 2):
        raise AlexanderError("only knots and two-component links supported")
    var_of_label = {lab: ((1, 0) if i == 0 else (0, 1)) for i, lab in enumerate(labels)}

    def variable_of(gen: int):
        return var_of_label[w.component_of[gen]]

    n = w.n_generators
    if not w.relations:
        # free presentations: the unknot gives 1, split pieces give 0
        return LaurentPoly.one() if n == 1 and len(labels) == 1 else LaurentPoly.zero()
    if n > len(w.relations) and len(labels) == 2:
        # a component with more arcs than underpasses never passes under:
        # it lifts off the rest, and split links have vanishing polynomial
        return LaurentPoly.zero()
    if len(w.relations) != n:
        raise AlexanderError("presentation must have one relation per generator")
    drop_col = next(i for i in range(n) if w.component_of[i] == labels[0])
    matrix = []
    for word in w.relations[:-1]:   # one Wirtinger relation is redundant
        row = [fox_derivative(word, g, variable_of)
               for g in range(n) if g != drop_col]
        matrix.append(row)
    det = _laurent_matrix_det(matrix)
    if len(labels) == 2:
        det = det.divide_exact(0)
    return det.canonical()


# ---------------------------------------------------------------------------
# Newton polytopes and the containment test


def newton_polytope(f: LaurentPoly) -> Polytope2:
    """Centered convex hull of the exponent vectors of a nonzero polynomial."""
    if f.is_zero:
        raise ZeroPolynomialError("zero polynomial has no Newton polytope")
    pts = [pt(a, b) for (a, b) in f.terms]
    moved, _ = center(pts)
    return convex_hull(moved)


def mcmullen_check(newton: Polytope2, dual_ball: Polytope2) -> bool:
    """Every vertex of the Newton polytope lies inside the dual norm ball."""
    return dual_ball.contains_polytope(newton)
