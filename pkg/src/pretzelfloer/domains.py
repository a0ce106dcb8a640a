"""Domain algebra on grid diagrams.

A domain is an integer-weighted sum of the fundamental squares of the
grid torus whose formal boundary runs along grid circles connecting the
corners of a from-state to a to-state.  Domains carry the filtration
vector (X-minus-O marking multiplicities per component) and the Maslov
index; periodic domains are the marking-free full-circle combinations.

Square (c, s) spans columns [c, c+1] x rows [s, s+1]; the lattice point
(i, r) touches squares (i-1, r-1), (i, r-1), (i-1, r), (i, r) mod n.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactlinalg import integer_kernel_basis
from .links import GridDiagram


class DomainError(ValueError):
    pass


@dataclass(frozen=True)
class Domain:
    """Multiplicity matrix (indexed [column][row]) between two states."""

    n: int
    mults: tuple[tuple[int, ...], ...]
    from_state: tuple[int, ...]
    to_state: tuple[int, ...]

    def __post_init__(self):
        n = self.n
        if len(self.mults) != n or any(len(col) != n for col in self.mults):
            raise DomainError("multiplicity matrix must be n x n")
        frm = set(enumerate(self.from_state))
        to = set(enumerate(self.to_state))
        for i in range(n):
            for r in range(n):
                want = (1 if (i, r) in frm else 0) - (1 if (i, r) in to else 0)
                if self.corner_defect(i, r) != want:
                    raise DomainError(
                        f"boundary defect at lattice point ({i}, {r})")

    def corner_defect(self, i: int, r: int) -> int:
        """Alternating sum of the four squares at lattice point (i, r)."""
        n, m = self.n, self.mults
        return (m[(i - 1) % n][(r - 1) % n] - m[i][(r - 1) % n]
                - m[(i - 1) % n][r] + m[i][r])

    def multiplicity(self, col: int, row: int) -> int:
        return self.mults[col][row]

    def __add__(self, other: "Domain") -> "Domain":
        """Concatenation: requires other to start where this one ends."""
        if self.to_state != other.from_state:
            raise DomainError("domains do not concatenate")
        mults = tuple(tuple(a + b for a, b in zip(ca, cb))
                      for ca, cb in zip(self.mults, other.mults))
        return Domain(self.n, mults, self.from_state, other.to_state)


def zero_domain(x: tuple[int, ...]) -> Domain:
    n = len(x)
    return Domain(n, tuple((0,) * n for _ in range(n)), tuple(x), tuple(x))


def full_torus(x: tuple[int, ...], copies: int = 1) -> Domain:
    n = len(x)
    return Domain(n, tuple((copies,) * n for _ in range(n)), tuple(x), tuple(x))


def rectangle_domain(x: tuple[int, ...], i: int, j: int) -> Domain:
    """The rectangle from x with southwest corner in column i of x.

    Spans cyclic columns [i, j) and cyclic rows [x[i], x[j]); connects x
    to x with columns i and j transposed.
    """
    n = len(x)
    if i == j:
        raise DomainError("rectangle needs two distinct columns")
    a, b = x[i], x[j]
    mults = [[0] * n for _ in range(n)]
    c = i
    while c != j:
        r = a
        while r != b:
            mults[c][r] += 1
            r = (r + 1) % n
        c = (c + 1) % n
    y = list(x)
    y[i], y[j] = y[j], y[i]
    return Domain(n, tuple(tuple(col) for col in mults), tuple(x), tuple(y))


def domain_between(x, y) -> Domain:
    """Canonical domain connecting x to y.

    Decomposes x -> y into transpositions (leftmost mismatched column
    first) and sums the corresponding rectangles.  Any two connecting
    domains differ by a periodic domain plus full-torus copies.
    """
    x, y = tuple(x), tuple(y)
    n = len(x)
    if sorted(x) != list(range(n)) or sorted(y) != list(range(n)):
        raise DomainError("states must be permutations of the rows")
    total = zero_domain(x)
    z = list(x)
    while tuple(z) != y:
        i = next(c for c in range(n) if z[c] != y[c])
        j = next(c for c in range(n) if z[c] == y[i])
        total = total + rectangle_domain(tuple(z), i, j)
        z[i], z[j] = z[j], z[i]
    return total


def filtration_vector(g: GridDiagram, d: Domain) -> tuple[int, ...]:
    """Per component: sum of X-marking multiplicities minus O-marking ones.

    Independent of the choice of connecting domain (periodic domains and
    the full torus vanish at / cancel over the markings).
    """
    if d.n != g.n:
        raise DomainError("domain and grid sizes differ")
    order = g.component_order()
    out = []
    for label in order:
        total = 0
        for i in range(g.n):
            if g.labels[i] == label:
                total += d.mults[i][g.X[i]] - d.mults[i][g.O[i]]
        out.append(total)
    return tuple(out)


def _local_multiplicity4(d: Domain, i: int, r: int) -> int:
    """Four times the average multiplicity around lattice point (i, r)."""
    n, m = d.n, d.mults
    return (m[(i - 1) % n][(r - 1) % n] + m[i][(r - 1) % n]
            + m[(i - 1) % n][r] + m[i][r])


def maslov_index(g: GridDiagram, d: Domain) -> int:
    """Maslov index of a domain, including the basepoint correction.

    The index is the Euler measure plus the average local multiplicities
    at the from- and to-state points, minus twice the O multiplicities.
    On the square grid every fundamental square has Euler measure zero
    (chi 1, four quarter corners), so the chi - k/4 + l/4 block vanishes
    identically and only the point terms remain.  The value is additive
    under concatenation and drops by exactly one along the differential.
    """
    if d.n != g.n:
        raise DomainError("domain and grid sizes differ")
    quarters = 0
    for i, r in enumerate(d.from_state):
        quarters += _local_multiplicity4(d, i, r)
    for i, r in enumerate(d.to_state):
        quarters += _local_multiplicity4(d, i, r)
    n_o = sum(d.mults[i][g.O[i]] for i in range(g.n))
    value = Fraction(quarters, 4) - 2 * n_o
    if value.denominator != 1:
        raise DomainError("Maslov index came out non-integral")
    return int(value)


def is_positive(d: Domain) -> bool:
    return all(m >= 0 for col in d.mults for m in col)


def is_periodic(g: GridDiagram, d: Domain) -> bool:
    """Equal endpoints, full-circle boundary, zero at every marking."""
    if d.from_state != d.to_state:
        return False
    for i in range(g.n):
        if d.mults[i][g.O[i]] != 0 or d.mults[i][g.X[i]] != 0:
            return False
    # boundary condition with from == to already forces full circles
    return True


def periodic_basis(g: GridDiagram) -> list[Domain]:
    """Basis of the lattice of periodic domains.

    Periodic domains are integer combinations of full column and row
    indicators annihilated at all 2n markings; the kernel is computed
    over the 2n indicator coefficients with one coefficient pinned to
    remove the full torus.
    """
    n = g.n
    rows = []
    for i in range(n):
        for marked_row in (g.O[i], g.X[i]):
            row = [0] * (2 * n)
            row[i] = 1
            row[n + marked_row] = 1
            rows.append(row)
    pin = [0] * (2 * n)
    pin[n - 1] = 1
    rows.append(pin)
    base = tuple(range(n))
    out = []
    for vec in integer_kernel_basis(rows):
        a, b = vec[:n], vec[n:]
        mults = tuple(tuple(a[i] + b[r] for r in range(n)) for i in range(n))
        dom = Domain(n, mults, base, base)
        if any(m != 0 for col in mults for m in col):
            out.append(dom)
    return out
