"""Link presentations: pretzel tuples, planar diagrams, Wirtinger data, grids.

The diagrams in scope are cyclically bridged vertical twist columns
(the four-column pretzels and their relatives: twist-region closures
give the unknot, Hopf link, trefoil and connected sums).  A single
combinatorial trace of that template drives both the planar-diagram
code (crossings + arcs + signs, feeding Fox calculus) and the grid
construction (rectangularize each crossing into a one-column jog, then
destabilize greedily).
"""
from __future__ import annotations

import bisect
import json
from dataclasses import dataclass

from .closedform import PretzelParams


class LinkEncodeError(ValueError):
    pass


class GridParseError(LinkEncodeError):
    pass


# ---------------------------------------------------------------------------
# signed 4-tuples and their canonical representative


@dataclass(frozen=True)
class SignedPretzel:
    """Ordered signed twist counts of a four-column pretzel diagram."""

    coefficients: tuple[int, int, int, int]

    def __post_init__(self):
        if len(self.coefficients) != 4 or any(c == 0 for c in self.coefficients):
            raise LinkEncodeError("need four nonzero twist coefficients")


def _match_family(coeffs) -> PretzelParams | None:
    """Params if coeffs has the exact shape (-2r1-1, 2q1, -2q2, 2r2+1)."""
    a, b, c, d = coeffs
    if a < 0 and a % 2 != 0 and b > 0 and b % 2 == 0 \
            and c < 0 and c % 2 == 0 and d > 0 and d % 2 != 0:
        r1 = (-a - 1) // 2
        q1 = b // 2
        q2 = -c // 2
        r2 = (d - 1) // 2
        if r1 >= 1 and r2 >= 1 and q1 >= 1 and q2 >= 1:
            return PretzelParams(q1, r1, q2, r2)
    return None


def canonicalize(t: SignedPretzel) -> tuple[PretzelParams, bool]:
    """Unique in-family representative of an alternating mixed-parity tuple.

    Cyclic rotation of the columns preserves the link, and flipping
    every sign mirrors it (the complements are homeomorphic, so the
    norm data agree).  Exactly one rotation of a tuple or of its mirror
    lands in the (-odd, +even, -even, +odd) shape; the flag records
    whether the reduction needed the mirror.
    """
    coeffs = t.coefficients
    arrangements = [tuple(coeffs[(i + k) % 4] for k in range(4)) for i in range(4)]
    candidates = []
    for arr in arrangements:
        for mirrored, signed in ((False, arr), (True, tuple(-x for x in arr))):
            params = _match_family(signed)
            if params is not None:
                candidates.append(((params.q1, params.r1, params.q2, params.r2),
                                   mirrored, params))
    if not candidates:
        raise LinkEncodeError("unsupported pretzel pattern")
    key, mirrored, params = min(candidates, key=lambda c: (c[0], c[1]))
    return params, mirrored


# ---------------------------------------------------------------------------
# planar diagrams from cyclically bridged twist columns


@dataclass(frozen=True)
class PDCrossing:
    """One crossing: the under strand runs under_in -> under_out."""

    under_in: int
    over_in: int
    under_out: int
    over_out: int
    sign: int


@dataclass
class PDCode:
    crossings: list[PDCrossing]
    components: dict[str, list[int]]  # label -> arc labels in traversal order
    twist_layout: tuple[int, ...] | None = None
    closure: str = "pretzel"          # "pretzel" (cyclic bridges) or "braid"
    reversed_labels: tuple[str, ...] = ()   # components traced against default

    @property
    def n_arcs(self) -> int:
        return sum(len(arcs) for arcs in self.components.values())

    def arc_component(self) -> dict[int, str]:
        out = {}
        for label, arcs in self.components.items():
            for a in arcs:
                out[a] = label
        return out

    def to_json_dict(self) -> dict:
        return {
            "crossings": [[c.under_in, c.over_in, c.under_out, c.over_out,
                           "+" if c.sign > 0 else "-"] for c in self.crossings],
            "components": {k: list(v) for k, v in self.components.items()},
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "PDCode":
        crossings = [PDCrossing(a, b, c, d, 1 if s == "+" else -1)
                     for a, b, c, d, s in data["crossings"]]
        comps = {k: list(v) for k, v in data["components"].items()}
        pd = cls(crossings, comps)
        _validate_pd(pd)
        return pd


def _validate_pd(pd: PDCode):
    declared = sorted(a for arcs in pd.components.values() for a in arcs)
    if declared != sorted(set(declared)):
        raise LinkEncodeError("duplicate arc labels across components")
    known = set(declared)
    for c in pd.crossings:
        if c.over_in != c.over_out:
            # the over strand is not cut at its own crossing
            raise LinkEncodeError("over arc must be uncut at its crossing")
        for arc in (c.under_in, c.under_out, c.over_in):
            if arc not in known:
                raise LinkEncodeError(f"arc {arc} not assigned to a component")


# -- the twist-column trace -------------------------------------------------
#
# Ports: ('T', col, side) and ('B', col, side) with side 0=left 1=right sit
# on the strands at the top/bottom of each column (degree 2: a column wire
# and a bridge wire); ('C', col, j, corner) are crossing corners (degree 1).

_PASS = {'tl': 'br', 'tr': 'bl', 'bl': 'tr', 'br': 'tl'}
# planar tangent when a strand enters the crossing at the given corner
# (x to the right, y up; columns run downward from T to B)
_TANGENT = {'tl': (1, -1), 'tr': (-1, -1), 'bl': (1, 1), 'br': (-1, 1)}


def _twist_wires(coeffs, closure="pretzel"):
    wires = []
    m = len(coeffs)
    for i, a in enumerate(coeffs):
        k = abs(a)
        if k == 0:
            wires.append((('T', i, 0), ('B', i, 0)))
            wires.append((('T', i, 1), ('B', i, 1)))
            continue
        wires.append((('T', i, 0), ('C', i, 0, 'tl')))
        wires.append((('T', i, 1), ('C', i, 0, 'tr')))
        for j in range(k - 1):
            wires.append((('C', i, j, 'bl'), ('C', i, j + 1, 'tl')))
            wires.append((('C', i, j, 'br'), ('C', i, j + 1, 'tr')))
        wires.append((('C', i, k - 1, 'bl'), ('B', i, 0)))
        wires.append((('C', i, k - 1, 'br'), ('B', i, 1)))
    if closure == "braid":
        if m != 1:
            raise LinkEncodeError("braid closure implemented for one twist column")
        wires.append((('T', 0, 0), ('B', 0, 0)))
        wires.append((('T', 0, 1), ('B', 0, 1)))
        return wires
    for i in range(m):
        wires.append((('T', i, 1), ('T', (i + 1) % m, 0)))
        wires.append((('B', i, 1), ('B', (i + 1) % m, 0)))
    return wires


def _twist_trace(coeffs, closure="pretzel"):
    """Closed-strand event cycles of the template.

    Each cycle is a list of events: ('port', p) at a top/bottom port and
    ('pass', col, j, entry_corner) when the strand runs through crossing
    (col, j).  Trace order and direction are deterministic.
    """
    link: dict[tuple, list[tuple]] = {}
    for a, b in _twist_wires(coeffs, closure):
        link.setdefault(a, []).append(b)
        link.setdefault(b, []).append(a)
    for nbrs in link.values():
        nbrs.sort()
    visited = set()
    cycles = []
    for start in sorted(p for p in link if p[0] in ('T', 'B')):
        if start in visited:
            continue
        events = [('port', start)]
        visited.add(start)
        prev, cur = start, link[start][0]
        while cur != start:
            if cur[0] == 'C':
                _, i, j, corner = cur
                events.append(('pass', i, j, corner))
                visited.add(cur)
                out = ('C', i, j, _PASS[corner])
                visited.add(out)
                prev, cur = out, link[out][0]
            else:
                events.append(('port', cur))
                visited.add(cur)
                nbrs = link[cur]
                nxt = nbrs[0] if nbrs[1] == prev else nbrs[1]
                prev, cur = cur, nxt
        cycles.append(events)
    return cycles


def _reverse_cycle(events):
    """Traverse a strand cycle backwards (passage corners swap ends)."""
    out = []
    for ev in reversed(events):
        if ev[0] == 'pass':
            out.append(('pass', ev[1], ev[2], _PASS[ev[3]]))
        else:
            out.append(ev)
    return out


def _oriented_cycles(coeffs, closure, labels, reverse_labels):
    cycles = _twist_trace(coeffs, closure)
    if len(labels) != len(cycles):
        raise LinkEncodeError(
            f"diagram has {len(cycles)} components, got {len(labels)} labels")
    return [_reverse_cycle(c) if labels[ci] in reverse_labels else c
            for ci, c in enumerate(cycles)]


def _is_over(coeff_sign: int, corner: str) -> bool:
    # positive twists put the strand entering from the right on top; the
    # choice is pinned by the dual-polytope comparison against the
    # closed form (the Alexander cross-checks cannot see chirality)
    return corner in (('tr', 'bl') if coeff_sign > 0 else ('tl', 'br'))


def twist_region_pd(coeffs, labels=None, closure="pretzel",
                    reverse_labels=()) -> PDCode:
    """Planar diagram of cyclically bridged twist columns.

    ``coeffs[i]`` is the signed crossing count of column i.  Components
    are labelled C0, C1, ... in trace order unless labels are given;
    components named in ``reverse_labels`` are traversed against the
    default direction (the orientation choice flips that component's
    meridian in everything derived downstream).
    """
    coeffs = tuple(int(c) for c in coeffs)
    ncomp = len(_twist_trace(coeffs, closure))
    if labels is None:
        labels = [f"C{i}" for i in range(ncomp)]
    cycles = _oriented_cycles(coeffs, closure, labels, reverse_labels)

    # underpass entry positions per component, in cycle order
    under_pos: list[list[int]] = [[] for _ in range(ncomp)]
    passage_at: dict[tuple[int, int], list[tuple[int, int, str]]] = {}
    for ci, events in enumerate(cycles):
        for pos, ev in enumerate(events):
            if ev[0] == 'pass':
                _, i, j, corner = ev
                passage_at.setdefault((i, j), []).append((ci, pos, corner))
                if not _is_over(1 if coeffs[i] > 0 else -1, corner):
                    under_pos[ci].append(pos)

    # arcs: the under strand emerges from each underpass as a new arc
    next_arc = 0
    comp_arcs: dict[str, list[int]] = {}
    arcs_of: list[list[int]] = []
    for ci in range(ncomp):
        count = max(len(under_pos[ci]), 1)
        arcs = list(range(next_arc, next_arc + count))
        next_arc += count
        arcs_of.append(arcs)
        comp_arcs[labels[ci]] = arcs

    def arc_covering(ci: int, pos: int) -> int:
        unders = under_pos[ci]
        if not unders:
            return arcs_of[ci][0]
        # arc started at the last underpass entry strictly before pos
        idx = bisect.bisect_left(unders, pos) - 1
        return arcs_of[ci][idx]  # idx -1 wraps to the final arc

    crossings = []
    for (col, j) in sorted(passage_at):
        passes = passage_at[(col, j)]
        s = 1 if coeffs[col] > 0 else -1
        over = [p for p in passes if _is_over(s, p[2])]
        under = [p for p in passes if not _is_over(s, p[2])]
        if len(over) != 1 or len(under) != 1:
            raise LinkEncodeError("crossing must have one over and one under passage")
        oci, opos, ocorner = over[0]
        uci, upos, ucorner = under[0]
        over_arc = arc_covering(oci, opos)
        uidx = under_pos[uci].index(upos)
        under_out = arcs_of[uci][uidx]
        under_in = arcs_of[uci][uidx - 1]
        ot, ut = _TANGENT[ocorner], _TANGENT[ucorner]
        sign = 1 if ot[0] * ut[1] - ot[1] * ut[0] > 0 else -1
        crossings.append(PDCrossing(under_in, over_arc, under_out, over_arc, sign))

    pd = PDCode(crossings, comp_arcs, twist_layout=coeffs, closure=closure,
                reversed_labels=tuple(sorted(reverse_labels)))
    _validate_pd(pd)
    return pd


def torus_pd(k: int, labels=None) -> PDCode:
    """Closure of the two-strand braid with k signed half twists: T(2, k).

    k = 2 gives the Hopf link, k = 3 the trefoil; one or two components
    by the parity of k.
    """
    if k == 0:
        raise LinkEncodeError("zero twists gives a split pair, not supported")
    return twist_region_pd([k], labels=labels, closure="braid")


def unknot_pd() -> PDCode:
    """Crossing-free round unknot: one closed arc, no relations."""
    return PDCode([], {"K": [0]}, twist_layout=None)


def pretzel_pd(p: PretzelParams) -> PDCode:
    """Standard diagram of P(-2r1-1, 2q1, -2q2, 2r2+1) with U/K labels.

    The unknotted component is the one confined to the two even twist
    columns; crossing count is (2r1+1) + 2q1 + 2q2 + (2r2+1).  The
    knotted component is traversed in the reversed direction: that
    orientation of its meridian is the one under which the grid-derived
    dual polytope reproduces the closed-form vertex table (pinned by
    the P(-3,2,-2,3) computation; the table is not reflection-symmetric,
    so the sign convention is observable).
    """
    coeffs = p.coefficients()
    cycles = _twist_trace(coeffs)
    if len(cycles) != 2:
        raise LinkEncodeError("pretzel trace did not give two components")
    visited_cols = [set(ev[1] for ev in events if ev[0] == 'pass')
                    for events in cycles]
    u_index = [i for i, cols in enumerate(visited_cols) if cols <= {1, 2}]
    if len(u_index) != 1:
        raise LinkEncodeError("could not identify the unknotted component")
    labels = ["U" if i == u_index[0] else "K" for i in range(2)]
    return twist_region_pd(coeffs, labels=labels, reverse_labels=("K",))


# ---------------------------------------------------------------------------
# Wirtinger presentations


@dataclass
class WirtingerPresentation:
    """One generator per arc; one conjugation relation per crossing.

    Relations are relator words over the generators: sequences of
    (generator, +-1) letters multiplying to the identity.
    """

    n_generators: int
    component_of: list[str]          # generator index -> component label
    relations: list[tuple[tuple[int, int], ...]]

    @property
    def component_labels(self) -> list[str]:
        seen = []
        for c in self.component_of:
            if c not in seen:
                seen.append(c)
        seen.sort(key=lambda s: (s != "U", s))
        return seen

    def abelianized_relation_matrix(self) -> list[list[int]]:
        rows = []
        for word in self.relations:
            row = [0] * self.n_generators
            for g, e in word:
                row[g] += e
            rows.append(row)
        return rows


def wirtinger(pd: PDCode) -> WirtingerPresentation:
    """Wirtinger presentation of the diagram's link group.

    At a positive crossing with over arc o the outgoing under arc v
    satisfies v = o u o^{-1}; at a negative crossing v = o^{-1} u o.
    """
    _validate_pd(pd)
    arc_comp = pd.arc_component()
    n = pd.n_arcs
    relabel = {arc: i for i, arc in enumerate(sorted(arc_comp))}
    component_of: list[str] = [""] * n
    for arc, comp in arc_comp.items():
        component_of[relabel[arc]] = comp
    relations = []
    for c in pd.crossings:
        o = relabel[c.over_in]
        u = relabel[c.under_in]
        v = relabel[c.under_out]
        e = c.sign
        relations.append(((o, e), (u, 1), (o, -e), (v, -1)))
    return WirtingerPresentation(n, component_of, relations)


# ---------------------------------------------------------------------------
# grid diagrams


def _trace_columns(n, O, X) -> list[list[int]]:
    """Column cycles traced along vertical then horizontal segments."""
    col_of_o_row = {O[i]: i for i in range(n)}
    seen: set[int] = set()
    comps = []
    for start in range(n):
        if start in seen:
            continue
        cols = []
        c = start
        while c not in seen:
            seen.add(c)
            cols.append(c)
            # vertical segment O(c)-X(c), then the horizontal segment of
            # row X(c) leads to the column holding that row's O
            c = col_of_o_row[X[c]]
        comps.append(cols)
    return comps


@dataclass(frozen=True)
class GridDiagram:
    """Toroidal n x n grid: one O and one X per row and per column.

    ``O[i]`` / ``X[i]`` give the marking rows of column i (0-indexed
    internally; grid files are 1-indexed).  ``labels[i]`` names the link
    component owning column i's markings; tracing the vertical (O-X in a
    column) and horizontal (X-O in a row) segments must reproduce the
    label partition.
    """

    n: int
    O: tuple[int, ...]
    X: tuple[int, ...]
    labels: tuple[str, ...]

    def __post_init__(self):
        n = self.n
        if sorted(self.O) != list(range(n)) or sorted(self.X) != list(range(n)):
            raise LinkEncodeError("O and X must be permutations of the rows")
        if any(self.O[i] == self.X[i] for i in range(n)):
            raise LinkEncodeError("O and X collide in a column")
        if len(self.labels) != n:
            raise LinkEncodeError("need one component label per column")
        traced = self.trace_components()
        for cols in traced:
            if len(set(self.labels[c] for c in cols)) != 1:
                raise LinkEncodeError("component labels disagree along a traced component")
        if len(self.component_order()) != len(traced):
            raise LinkEncodeError("label count does not match traced components")
        if len(traced) > 2:
            raise LinkEncodeError("only knots and two-component links supported")

    def trace_components(self) -> list[list[int]]:
        """Column sets of the traced components."""
        return _trace_columns(self.n, self.O, self.X)

    def component_order(self) -> list[str]:
        """Component labels, U before K, otherwise sorted."""
        seen = sorted(set(self.labels))
        seen.sort(key=lambda s: (s != "U", s))
        return seen

    def markings_of(self, label: str) -> int:
        """Number of O markings owned by the component (its column count)."""
        return sum(1 for lab in self.labels if lab == label)


def serialize_grid(g: GridDiagram) -> str:
    lines = [
        f"n={g.n}",
        "O=" + ",".join(str(r + 1) for r in g.O),
        "X=" + ",".join(str(r + 1) for r in g.X),
        "labels=" + ",".join(g.labels),
    ]
    return "\n".join(lines) + "\n"


def parse_grid(text: str) -> GridDiagram:
    fields: dict[str, tuple[str, int]] = {}
    keys = ["n", "O", "X", "labels"]
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise GridParseError(f"line {lineno}: expected key=value")
        key, _, value = line.partition("=")
        key = key.strip()
        if key not in keys:
            raise GridParseError(f"line {lineno}: unknown key {key!r}")
        if key in fields:
            raise GridParseError(f"line {lineno}: duplicate key {key!r}")
        fields[key] = (value.strip(), lineno)
    for key in keys:
        if key not in fields:
            raise GridParseError(f"missing key {key!r}")
    try:
        n = int(fields["n"][0])
    except ValueError:
        raise GridParseError(f"line {fields['n'][1]}: n must be an integer") from None

    def parse_perm(key):
        value, lineno = fields[key]
        try:
            rows = tuple(int(x) - 1 for x in value.split(","))
        except ValueError:
            raise GridParseError(
                f"line {lineno}: {key} must be comma-separated integers") from None
        if len(rows) != n or sorted(rows) != list(range(n)):
            raise GridParseError(f"line {lineno}: {key} must be a permutation of 1..{n}")
        return rows

    O = parse_perm("O")
    X = parse_perm("X")
    labels = tuple(x.strip() for x in fields["labels"][0].split(","))
    if len(labels) != n:
        raise GridParseError(f"line {fields['labels'][1]}: need {n} labels")
    try:
        return GridDiagram(n, O, X, labels)
    except LinkEncodeError as exc:
        raise GridParseError(str(exc)) from None


# -- rectangularization -----------------------------------------------------


def _port_directions(cycles):
    """Travel direction through the column below each top port.

    A strand departs a T-port downward when the column-side wire is the
    next event of its traversal; otherwise it arrived there upward.
    """
    dirs = {}
    for events in cycles:
        size = len(events)
        for pos, ev in enumerate(events):
            if ev[0] == 'port' and ev[1][0] == 'T':
                _, col, _side = ev[1]
                nxt = events[(pos + 1) % size]
                goes_down = (nxt[0] == 'pass' and nxt[1] == col) or \
                    (nxt[0] == 'port' and nxt[1][0] == 'B' and nxt[1][1] == col)
                dirs[ev[1]] = 'down' if goes_down else 'up'
    return dirs


def _build_grid(coeffs, labels, closure="pretzel", reverse_labels=()) -> GridDiagram:
    """Full-size grid of the twist-column template, one column per crossing.

    Invariant: the open columns, left to right, always correspond to the
    strand lanes in order, so every horizontal jog crosses exactly the
    vertical it should (and verticals always cross over horizontals).
    Marker types follow the traversal direction (verticals run O to X),
    so the grid inherits the diagram's component orientations.
    """
    coeffs = tuple(int(c) for c in coeffs)
    m = len(coeffs)
    cycles = _oriented_cycles(coeffs, closure, labels, reverse_labels)
    comp_of_port = {}
    for ci, events in enumerate(cycles):
        for ev in events:
            if ev[0] == 'port':
                comp_of_port[ev[1]] = labels[ci]
    port_dir = _port_directions(cycles)

    col_order: list[int] = []
    col_comp: dict[int, str] = {}
    col_dir: dict[int, str] = {}
    markers: list[tuple[int, int]] = []
    next_col = 0
    next_row = 0
    lane_col: dict[int, int] = {}
    lane_comp: dict[int, str] = {}
    lane_dir: dict[int, str] = {}

    def new_row() -> int:
        nonlocal next_row
        next_row += 1
        return next_row - 1

    def open_lane(lane: int, port) -> int:
        nonlocal next_col
        left_cols = [lane_col[l] for l in lane_col if l < lane]
        idx = max((col_order.index(c) for c in left_cols), default=-1) + 1
        cid = next_col
        next_col += 1
        col_order.insert(idx, cid)
        col_comp[cid] = comp_of_port[port]
        col_dir[cid] = port_dir[port]
        lane_col[lane] = cid
        lane_comp[lane] = comp_of_port[port]
        lane_dir[lane] = port_dir[port]
        return cid

    # top bridges: the long wrap first so its row clears every vertical
    bridges = [(m - 1, 0)] + [(i, i + 1) for i in range(m - 1)]
    for right_of, left_of in bridges:
        row = new_row()
        markers.append((open_lane(2 * right_of + 1, ('T', right_of, 1)), row))
        markers.append((open_lane(2 * left_of, ('T', left_of, 0)), row))

    # crossings, column by column, top to bottom: the under strand closes
    # its column and jogs to a fresh column on the far side of the over one
    for i, a in enumerate(coeffs):
        left, right = 2 * i, 2 * i + 1
        for _ in range(abs(a)):
            over, under = (left, right) if a > 0 else (right, left)
            c_over, c_under = lane_col[over], lane_col[under]
            row = new_row()
            markers.append((c_under, row))
            pos = col_order.index(c_over)
            cid = next_col
            next_col += 1
            col_order.insert(pos if a > 0 else pos + 1, cid)
            col_comp[cid] = lane_comp[under]
            col_dir[cid] = lane_dir[under]
            markers.append((cid, row))
            # strands swap lanes: the mover now sits on the over side
            lane_col[over], lane_col[under] = cid, c_over
            lane_comp[over], lane_comp[under] = lane_comp[under], lane_comp[over]
            lane_dir[over], lane_dir[under] = lane_dir[under], lane_dir[over]

    # bottom bridges: plain ones first, the long wrap last
    for right_of, left_of in [(i, i + 1) for i in range(m - 1)] + [(m - 1, 0)]:
        row = new_row()
        markers.append((lane_col[2 * right_of + 1], row))
        markers.append((lane_col[2 * left_of], row))

    n = next_row
    if len(col_order) != n or len(markers) != 2 * n:
        raise LinkEncodeError("rectangularization bookkeeping failed")
    col_index = {cid: i for i, cid in enumerate(col_order)}
    by_col: dict[int, list[int]] = {i: [] for i in range(n)}
    dir_by_col: dict[int, str] = {}
    for cid, row in markers:
        by_col[col_index[cid]].append(row)
    for cid in col_comp:
        dir_by_col[col_index[cid]] = col_dir[cid]
    O = [-1] * n
    X = [-1] * n
    out_labels = [""] * n
    for cid, comp in col_comp.items():
        c = col_index[cid]
        top, bottom = sorted(by_col[c])
        if dir_by_col[c] == 'down':
            O[c], X[c] = top, bottom
        else:
            O[c], X[c] = bottom, top
        out_labels[c] = comp
    return GridDiagram(n, tuple(O), tuple(X), tuple(out_labels))


def _assign_markers(n, by_col, comp_by_col):
    """Alternate O and X along each traced curve; deterministic phase."""
    row_cols: dict[int, list[int]] = {r: [] for r in range(n)}
    for col, rows in by_col.items():
        if len(rows) != 2 or rows[0] == rows[1]:
            raise LinkEncodeError("column without two distinct marker rows")
        for r in rows:
            row_cols[r].append(col)
    for r, cols in row_cols.items():
        if len(cols) != 2 or cols[0] == cols[1]:
            raise LinkEncodeError("row without two distinct marker columns")
    marker_type: dict[tuple[int, int], str] = {}
    all_markers = sorted((c, r) for c, rows in by_col.items() for r in rows)
    seen: set[tuple[int, int]] = set()
    for start in all_markers:
        if start in seen:
            continue
        cur, t = start, "O"
        while cur not in seen:
            seen.add(cur)
            marker_type[cur] = t
            c, r = cur
            r2 = next(rr for rr in by_col[c] if rr != r)
            partner = (c, r2)
            t = "X" if t == "O" else "O"
            seen.add(partner)
            marker_type[partner] = t
            c2 = next(cc for cc in row_cols[r2] if cc != c)
            cur = (c2, r2)
            t = "X" if t == "O" else "O"
    O = [-1] * n
    X = [-1] * n
    for (c, r), t in marker_type.items():
        if t == "O":
            O[c] = r
        else:
            X[c] = r
    labels = tuple(comp_by_col[c] for c in range(n))
    return tuple(O), tuple(X), labels


def _rotate(g: GridDiagram, row_shift: int, col_shift: int) -> GridDiagram:
    """Cyclic translation of the torus grid (preserves the link)."""
    n = g.n
    O = [0] * n
    X = [0] * n
    labels = [""] * n
    for i in range(n):
        j = (i + col_shift) % n
        O[j] = (g.O[i] + row_shift) % n
        X[j] = (g.X[i] + row_shift) % n
        labels[j] = g.labels[i]
    return GridDiagram(n, tuple(O), tuple(X), tuple(labels))


def _find_destabilization(g: GridDiagram):
    """A 2x2 cyclically-adjacent block holding exactly three markers."""
    n = g.n
    marks = set()
    for i in range(n):
        marks.add((i, g.O[i]))
        marks.add((i, g.X[i]))
    for c in range(n):
        for r in range(n):
            block = [(c, r), ((c + 1) % n, r), (c, (r + 1) % n),
                     ((c + 1) % n, (r + 1) % n)]
            if sum(cell in marks for cell in block) == 3:
                return c, r
    return None


def _destabilize_once(g: GridDiagram) -> GridDiagram | None:
    found = _find_destabilization(g)
    if found is None:
        return None
    c, r = found
    # rotate so the block sits planar-adjacent at rows/cols (n-2, n-1)
    g = _rotate(g, (g.n - 2 - r) % g.n, (g.n - 2 - c) % g.n)
    n = g.n
    lo, hi = n - 2, n - 1
    marks = {}
    for i in (lo, hi):
        for row, t in ((g.O[i], "O"), (g.X[i], "X")):
            if row in (lo, hi):
                marks[(i, row)] = t
    cells = sorted(marks)
    corner = None
    for cell in cells:
        if any(o != cell and o[0] == cell[0] for o in cells) and \
           any(o != cell and o[1] == cell[1] for o in cells):
            corner = cell
    del_col, del_row = corner
    dest_col = lo if del_col == hi else hi
    dest_row = lo if del_row == hi else hi
    leg_types = {marks[cell] for cell in cells if cell != corner}
    if len(leg_types) != 1:
        raise LinkEncodeError("inconsistent destabilization block")
    leg_type = leg_types.pop()

    def keep_row(row):
        return row if row < del_row else row - 1

    O, X, labels = [], [], []
    for i in range(n):
        if i == del_col:
            continue
        o_row, x_row = g.O[i], g.X[i]
        if i == dest_col:
            # the leg in the corner's row merges to the opposite cell
            if leg_type == "O":
                o_row = dest_row
            else:
                x_row = dest_row
        O.append(keep_row(o_row))
        X.append(keep_row(x_row))
        labels.append(g.labels[i])
    return GridDiagram(n - 1, tuple(O), tuple(X), tuple(labels))


def _interleave(pair_a, pair_b, n) -> bool:
    """Do the chords a1-a2 and b1-b2 cross on the cyclic row circle?"""
    a1, a2 = pair_a
    b1, b2 = pair_b
    def between(x, lo, hi):
        return (x - lo) % n < (hi - lo) % n and x != lo
    inside = sum(1 for b in (b1, b2) if between(b, a1, a2))
    return inside == 1


def _commute_cols(g: GridDiagram, c: int) -> GridDiagram | None:
    """Exchange columns c and c+1 (cyclic) when their verticals are parallel."""
    n = g.n
    c2 = (c + 1) % n
    pa = (g.O[c], g.X[c])
    pb = (g.O[c2], g.X[c2])
    if set(pa) & set(pb):
        return None
    if _interleave(pa, pb, n):
        return None
    O, X, labels = list(g.O), list(g.X), list(g.labels)
    O[c], O[c2] = O[c2], O[c]
    X[c], X[c2] = X[c2], X[c]
    labels[c], labels[c2] = labels[c2], labels[c]
    return GridDiagram(n, tuple(O), tuple(X), tuple(labels))


def _commute_rows(g: GridDiagram, r: int) -> GridDiagram | None:
    """Exchange rows r and r+1 (cyclic) when their horizontals are parallel."""
    n = g.n
    r2 = (r + 1) % n
    cols_a = tuple(i for i in range(n) if g.O[i] == r or g.X[i] == r)
    cols_b = tuple(i for i in range(n) if g.O[i] == r2 or g.X[i] == r2)
    if set(cols_a) & set(cols_b):
        return None
    if _interleave(cols_a, cols_b, n):
        return None
    swap = {r: r2, r2: r}
    O = tuple(swap.get(x, x) for x in g.O)
    X = tuple(swap.get(x, x) for x in g.X)
    return GridDiagram(n, O, X, g.labels)


def _commutation_neighbors(g: GridDiagram):
    for c in range(g.n):
        out = _commute_cols(g, c)
        if out is not None:
            yield out
    for r in range(g.n):
        out = _commute_rows(g, r)
        if out is not None:
            yield out


def _walk_tiny(g: GridDiagram) -> GridDiagram | None:
    """Slide a one-tall column (or one-wide row) until a block unlocks.

    A column whose markers sit in cyclically adjacent rows commutes past
    any neighbor whose markers avoid those two rows; a neighbor meeting
    one of the rows forms a three-marker block.  The walk is therefore
    never size-increasing and ends in a destabilization or a full loop.
    """
    n = g.n
    for c in range(n):
        if (g.O[c] + 1) % n == g.X[c] or (g.X[c] + 1) % n == g.O[c]:
            for direction in (0, -1):   # commute (pos, pos+1): 0 walks right
                h, pos = g, c
                for _ in range(n):
                    nxt = _commute_cols(h, (pos + direction) % n)
                    if nxt is None:
                        break
                    pos = (pos + 1) % n if direction == 0 else (pos - 1) % n
                    h = nxt
                    if _find_destabilization(h) is not None:
                        return h
    for r in range(n):
        cols = [i for i in range(n) if g.O[i] == r or g.X[i] == r]
        if (cols[0] + 1) % n == cols[1] or (cols[1] + 1) % n == cols[0]:
            for direction in (0, -1):
                h, pos = g, r
                for _ in range(n):
                    nxt = _commute_rows(h, (pos + direction) % n)
                    if nxt is None:
                        break
                    pos = (pos + 1) % n if direction == 0 else (pos - 1) % n
                    h = nxt
                    if _find_destabilization(h) is not None:
                        return h
    return None


_COMMUTE_DEPTH = 4
_COMMUTE_FRONTIER = 4096


def _commute_search(g: GridDiagram) -> GridDiagram | None:
    """Bounded breadth-first walk through commutations of parallel strips.

    Commutations never change the grid size; the first position with a
    destabilizable block wins.  Frontier and depth are capped, so this
    is a local unlock step, not an arc-index search.
    """
    frontier = [g]
    seen = {(g.O, g.X)}
    for _ in range(_COMMUTE_DEPTH):
        new: list[GridDiagram] = []
        for h in frontier:
            for c in _commutation_neighbors(h):
                key = (c.O, c.X)
                if key in seen:
                    continue
                seen.add(key)
                if _find_destabilization(c) is not None:
                    return c
                new.append(c)
                if len(new) >= _COMMUTE_FRONTIER:
                    break
            if len(new) >= _COMMUTE_FRONTIER:
                break
        if not new:
            return None
        frontier = new
    return None


def destabilize(g: GridDiagram) -> GridDiagram:
    """Greedy monotonic simplification of the grid.

    Applies destabilizations whenever a 2x2 block with three markers
    exists; when stuck, walks one-tall columns / one-wide rows sideways
    and breadth-searches a bounded number of commutations, committing
    the first move sequence that unlocks a destabilization.  Moves
    never increase the grid size.
    """
    while g.n > 2:
        smaller = _destabilize_once(g)
        if smaller is not None:
            g = smaller
            continue
        walked = _walk_tiny(g)
        if walked is not None:
            g = walked
            continue
        unlocked = _commute_search(g)
        if unlocked is not None:
            g = unlocked
            continue
        break
    return g


def pd_to_grid(pd: PDCode) -> GridDiagram:
    """Grid diagram presenting the same link as the planar diagram.

    Crossings become one-column jogs of the under strand (verticals
    always cross over horizontals), bridges become the outer rows, and
    the result is destabilized greedily.  Requires the twist-column
    layout recorded by the diagram constructors.
    """
    if not pd.crossings:
        labels = sorted(pd.components)
        if len(labels) != 1:
            raise LinkEncodeError("crossingless multi-component diagrams not supported")
        lab = labels[0]
        return GridDiagram(2, (0, 1), (1, 0), (lab, lab))
    if pd.twist_layout is None:
        raise LinkEncodeError("grid conversion requires a twist-column layout")
    pd_labels = _trace_labels(pd)
    if pd.closure == "braid":
        g = _staircase_grid(pd.twist_layout[0], pd_labels)
    else:
        g = _build_grid(pd.twist_layout, pd_labels,
                        reverse_labels=pd.reversed_labels)
    return destabilize(g)


def _staircase_grid(k: int, labels) -> GridDiagram:
    """Rectangularized braid closure of k half twists: the diagonal grid.

    Each crossing takes one column/row; the two closure arcs add two
    more.  Component labels follow the trace order of the braid diagram.
    """
    n = abs(k) + 2
    if k > 0:
        O = tuple((i + 1) % n for i in range(n))
        X = tuple((i - 1) % n for i in range(n))
    else:
        O = tuple((i - 1) % n for i in range(n))
        X = tuple((i + 1) % n for i in range(n))
    # trace order: the component through column 0 comes first
    comps = _trace_columns(n, O, X)
    lab = [""] * n
    for idx, cols in enumerate(comps):
        for c in cols:
            lab[c] = labels[idx if len(labels) > 1 else 0]
    return GridDiagram(n, O, X, tuple(lab))


def _trace_labels(pd: PDCode) -> list[str]:
    """Component labels in trace order (arc numbering follows trace order)."""
    firsts = {label: min(arcs) for label, arcs in pd.components.items() if arcs}
    return [label for label, _ in sorted(firsts.items(), key=lambda kv: kv[1])]


def grid_to_pd(g: GridDiagram) -> PDCode:
    """Planar diagram read off a grid (verticals cross over horizontals).

    Independent of the twist-column constructors: used to cross-check
    that a grid presents the intended link via the Alexander oracle.
    """
    n = g.n
    # walk the link: alternating vertical (O->X in a column) and
    # horizontal (X->O in a row) segments, planar straight lines
    col_of_o_row = {g.O[i]: i for i in range(n)}
    events_by_comp = []
    seen_cols: set[int] = set()
    for start in range(n):
        if start in seen_cols:
            continue
        events = []  # (kind, data): 'V' (col, r_from, r_to) | 'H' (row, c_from, c_to)
        c = start
        while c not in seen_cols:
            seen_cols.add(c)
            events.append(('V', c, g.O[c], g.X[c]))
            row = g.X[c]
            c2 = col_of_o_row[row]
            events.append(('H', row, c, c2))
            c = c2
        events_by_comp.append(events)

    def strict_between(x, a, b):
        return min(a, b) < x < max(a, b)

    # crossings: horizontal segment passing under a vertical segment
    crossings_geo = []  # (comp_h, event_index_h, col, comp_v, event_index_v, row)
    verts = []
    for ci, events in enumerate(events_by_comp):
        for ei, ev in enumerate(events):
            if ev[0] == 'V':
                verts.append((ci, ei, ev[1], ev[2], ev[3]))
    for ci, events in enumerate(events_by_comp):
        for ei, ev in enumerate(events):
            if ev[0] != 'H':
                continue
            _, row, c_from, c_to = ev
            for (cj, ej, col, r_from, r_to) in verts:
                if strict_between(col, c_from, c_to) and strict_between(row, r_from, r_to):
                    crossings_geo.append((ci, ei, cj, ej, row, col))

    # arcs: cut each component at its underpasses, ordered along the walk
    under_keys: dict[int, list] = {ci: [] for ci in range(len(events_by_comp))}
    for (ci, ei, cj, ej, row, col) in crossings_geo:
        _, _, c_from, c_to = events_by_comp[ci][ei]
        along = abs(col - c_from)   # travel distance into the horizontal
        under_keys[ci].append((ei, along))
    next_arc = 0
    arcs_of = {}
    comp_arcs: dict[str, list[int]] = {}
    comp_label = {}
    for ci, events in enumerate(events_by_comp):
        first_col = events[0][1]
        comp_label[ci] = g.labels[first_col]
    for ci in range(len(events_by_comp)):
        unders = sorted(under_keys[ci])
        count = max(len(unders), 1)
        arcs = list(range(next_arc, next_arc + count))
        next_arc += count
        arcs_of[ci] = (unders, arcs)
        label = comp_label[ci]
        comp_arcs.setdefault(label, []).extend(arcs)

    def arc_at(ci, key):
        unders, arcs = arcs_of[ci]
        if not unders:
            return arcs[0]
        idx = bisect.bisect_left(unders, key) - 1
        return arcs[idx]

    pd_crossings = []
    for (ci, ei, cj, ej, row, col) in sorted(crossings_geo, key=lambda t: (t[4], t[5])):
        unders, arcs = arcs_of[ci]
        _, _, c_from, c_to = events_by_comp[ci][ei]
        key = (ei, abs(col - c_from))
        uidx = unders.index(key)
        under_out = arcs[uidx]
        under_in = arcs[uidx - 1]
        _, _, r_from, r_to = events_by_comp[cj][ej]
        over_arc = arc_at(cj, (ej, 0))
        h_dir = (1 if c_to > c_from else -1, 0)
        v_dir = (0, 1 if r_to > r_from else -1)
        sign = 1 if v_dir[0] * h_dir[1] - v_dir[1] * h_dir[0] > 0 else -1
        pd_crossings.append(PDCrossing(under_in, over_arc, under_out, over_arc, sign))
    pd = PDCode(pd_crossings, comp_arcs)
    _validate_pd(pd)
    return pd


def pd_to_json(pd: PDCode) -> str:
    return json.dumps(pd.to_json_dict(), sort_keys=True, indent=2)


def pd_from_json(text: str) -> PDCode:
    return PDCode.from_json_dict(json.loads(text))
