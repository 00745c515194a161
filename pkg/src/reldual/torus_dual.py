"""
Rectangular duals on the flat torus.

Both constructions work in the universal cover.  For each color ``i`` a
feedback walk ``C_i`` is chosen and ``L_i`` is cut open along it; the
longest-path numbering ``d_i`` of the acyclic dual of the cut graph is
then extended to every lift of every face by

    ``X_i(f^tau) = d_i(f) + P_i * (S_i(f) + algebraic_crossing(tau, c_i))``

where ``P_i = d_i(t_i) - 1`` is the period, ``S_i(f)`` the strip of the
canonical lift of ``f`` between consecutive lifts of ``C_i`` and ``c_i``
the class of ``C_i``.  The rectangle of ``v^tau`` spans
``X_1`` of its left and right ``L_1`` faces horizontally and ``-X_2`` of
its right and left ``L_2`` faces vertically, so a deck transformation
``tau`` moves rectangles by
``(P_1 * ihat(tau, c_1), -P_2 * ihat(tau, c_2))``.

For an orbital REL ``c_1 = (0, 1)`` and ``c_2 = (1, 0)``, and the
fundamental polygon is an axis-aligned ``P_1 x P_2`` rectangle.  For a
slanted REL it is the parallelogram spanned by the images ``t_M`` and
``t_H`` of the two orbit classes, anchored at the point where the three
rectangles of the crossing face meet.  The walks ``C_1`` and ``C_2`` cut
the torus into patches; the strip pair ``(S_1, S_2)`` of a face lift is
its tile.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import floor
from typing import Dict, List, Optional, Sequence, Tuple

from .cycles import SplitGraph, _gap_face, feedback_closed_walk, frame, split_along
from .errors import NotOrbital, NotSlanted, TraceFailure, Unrealizable
from .homotopy import HomotopyClass, algebraic_crossing
from .labeling import BLUE, RED
from .rel import classify
from .walks import ClosedWalk, walk_contacts

__all__ = [
    "ConsistentNumbering",
    "RectangularDual",
    "consistent_numbering",
    "vertex_sides",
    "build_orbital_dual",
    "build_slanted_dual",
    "build_toroidal_dual",
    "patches",
    "crossing_count",
    "trace_curve",
    "reduce_point",
]

Point = Tuple[int, int]
Rect = Tuple[int, int, int, int]


@dataclass
class ConsistentNumbering:
    """Longest-path labels of the dual of a :class:`SplitGraph`.

    Attributes
    ----------
    d : list of int
        Label of every dual node (faces of ``L_i``, then ``s``, then ``t``).
    period : int
        ``d(t) - 1``.
    """

    split: SplitGraph = field(repr=False)
    d: List[int] = field(repr=False)

    @property
    def source(self) -> int:
        return self.d[self.split.s]

    @property
    def sink(self) -> int:
        return self.d[self.split.t]

    @property
    def period(self) -> int:
        return self.sink - 1

    def of_face(self, f: int) -> int:
        """Label of the ``L_i`` face containing face ``f`` of ``g``."""
        return self.d[self.split.comp[f]]

    def X(self, f: int, lift: Tuple[int, int] = (0, 0)) -> int:
        """Unwrapped coordinate of the lift ``f^lift`` of face ``f``."""
        c = self.split.walk.homotopy
        return self.of_face(f) + self.period * (self.split.strip[f] + lift[0] * c.h - lift[1] * c.m)


def consistent_numbering(split: SplitGraph) -> ConsistentNumbering:
    """Label every dual node by its longest-path distance from ``s``."""
    d = [0] * split.num_nodes
    for x in split.order:
        for y in split.adj[x]:
            if d[x] + 1 > d[y]:
                d[y] = d[x] + 1
    return ConsistentNumbering(split, d)


def vertex_sides(split: SplitGraph, numbering: ConsistentNumbering, v: int) -> Tuple[int, int]:
    """Labels of the left and right ``L_i`` faces of ``v``.

    For a vertex visited ``k`` times by the walk the right label is
    reported after adding ``k`` periods, so ``low < high`` always holds.
    """
    fl, sl = _gap_face(split.g, split.g_rel, v, split.i, left=True)
    fr, sr = _gap_face(split.g, split.g_rel, v, split.i, left=False)
    xl = numbering.X(fl, sl)
    xr = numbering.X(fr, sr)
    low = numbering.of_face(fl)
    return low, xr - (xl - low)


@dataclass
class RectangularDual:
    """A rectangular dual on the flat torus or the flat cylinder.

    Attributes
    ----------
    kind : str
        ``"orbital"``, ``"slanted"`` or ``"cylindrical"``.
    Q : list of Point
        Corners ``p1, p2 = p1 + t_M, p3 = p1 + t_M + t_H, p4 = p1 + t_H``.
        For a cylinder ``Q`` is the rectangle between the boundary lines.
    t_M, t_H : Point or None
        Translations identifying the cover; ``t_H`` is ``None`` for a
        cylinder.
    rects : dict
        Vertex to ``(x_left, x_right, y_bottom, y_top)``: one lift of the
        rectangle, with its lower left corner reduced into ``Q``.
    info : dict
        Construction data (periods, walks, patches, tiles, traces).
    """

    kind: str
    Q: List[Point]
    t_M: Point
    t_H: Optional[Point]
    rects: Dict[int, Rect]
    info: dict = field(default_factory=dict, repr=False, compare=False)

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "Q": [list(p) for p in self.Q],
            "t_M": list(self.t_M),
            "t_H": None if self.t_H is None else list(self.t_H),
            "rects": {str(v): list(r) for v, r in sorted(self.rects.items())},
        }

    @classmethod
    def from_json(cls, raw: dict) -> "RectangularDual":
        return cls(
            raw.get("kind", "orbital"),
            [tuple(p) for p in raw["Q"]],
            tuple(raw["t_M"]),
            None if raw.get("t_H") is None else tuple(raw["t_H"]),
            {int(v): tuple(r) for v, r in raw["rects"].items()},
        )

    @property
    def width(self) -> int:
        xs = [p[0] for p in self.Q]
        return max(xs) - min(xs)

    @property
    def height(self) -> int:
        ys = [p[1] for p in self.Q]
        return max(ys) - min(ys)

    def area(self) -> int:
        """Area of ``Q`` (for a cylinder: of the strip over one period)."""
        if self.t_H is None:
            return self.width * self.height
        return abs(self.t_M[0] * self.t_H[1] - self.t_M[1] * self.t_H[0])

    def __eq__(self, other):
        return (
            isinstance(other, RectangularDual)
            and self.kind == other.kind
            and list(map(tuple, self.Q)) == list(map(tuple, other.Q))
            and tuple(self.t_M) == tuple(other.t_M)
            and (self.t_H is None) == (other.t_H is None)
            and (self.t_H is None or tuple(self.t_H) == tuple(other.t_H))
            and self.rects == other.rects
        )


def reduce_point(p: Point, origin: Point, t_M: Point, t_H: Point) -> Tuple[int, int]:
    """Lattice coefficients ``(a, b)`` with ``p - a t_M - b t_H`` in the half-open ``Q``."""
    det = t_M[0] * t_H[1] - t_M[1] * t_H[0]
    if det == 0:
        raise ValueError("degenerate translations")
    dx, dy = p[0] - origin[0], p[1] - origin[1]
    a = Fraction(dx * t_H[1] - dy * t_H[0], det)
    b = Fraction(t_M[0] * dy - t_M[1] * dx, det)
    return floor(a), floor(b)


# ----------------------------------------------------------------------
# the common coordinate construction


class _Coordinates:
    """Numberings of both colors and the induced cover coordinates."""

    def __init__(self, g, rel, C1: ClosedWalk, C2: ClosedWalk):
        self.g, self.rel = g, rel
        self.C = {BLUE: C1, RED: C2}
        self.split = {i: split_along(g, rel, i, self.C[i]) for i in (BLUE, RED)}
        self.num = {i: consistent_numbering(self.split[i]) for i in (BLUE, RED)}
        self.c = {i: self.C[i].homotopy for i in (BLUE, RED)}
        self.P = {i: self.num[i].period for i in (BLUE, RED)}

    def translation(self, tau: Tuple[int, int]) -> Point:
        c1, c2 = self.c[BLUE], self.c[RED]
        return (
            self.P[BLUE] * algebraic_crossing(tau, c1),
            -self.P[RED] * algebraic_crossing(tau, c2),
        )

    def face_point(self, f: int, lift=(0, 0)) -> Point:
        return (self.num[BLUE].X(f, lift), -self.num[RED].X(f, lift))

    def tile(self, f: int, lift=(0, 0)) -> Tuple[int, int]:
        return tuple(
            self.split[i].strip[f] + algebraic_crossing(lift, self.c[i]) for i in (BLUE, RED)
        )

    def rect(self, v: int) -> Rect:
        g, rel = self.g, self.rel
        f, s = _gap_face(g, rel, v, BLUE, left=True)
        xl = self.num[BLUE].X(f, s)
        f, s = _gap_face(g, rel, v, BLUE, left=False)
        xr = self.num[BLUE].X(f, s)
        f, s = _gap_face(g, rel, v, RED, left=True)
        yt = -self.num[RED].X(f, s)
        f, s = _gap_face(g, rel, v, RED, left=False)
        yb = -self.num[RED].X(f, s)
        if not (xl < xr and yb < yt):
            raise TraceFailure(f"vertex {v} gets a degenerate rectangle {(xl, xr, yb, yt)}")
        return (xl, xr, yb, yt)


def _reduced_rects(co: _Coordinates, origin: Point, t_M: Point, t_H: Point) -> Dict[int, Rect]:
    rects = {}
    for v in co.g.vertices:
        xl, xr, yb, yt = co.rect(v)
        a, b = reduce_point((xl, yb), origin, t_M, t_H)
        dx = a * t_M[0] + b * t_H[0]
        dy = a * t_M[1] + b * t_H[1]
        rects[v] = (xl - dx, xr - dx, yb - dy, yt - dy)
    return rects


# ----------------------------------------------------------------------
# orbit traces


def _curve_events(g, curve: str):
    """Per face, the crossings of an orbit curve in counterclockwise order.

    Each event is ``(dart, token index, is_entry)``: the curve enters or
    leaves the face on the left of ``dart``.
    """
    events: List[List[Tuple[int, int, bool]]] = []
    for walk in g.face_walks:
        ev = []
        for d in walk:
            for k, tok in enumerate(g.tokens[d]):
                if tok[1] != curve:
                    continue
                positive = tok[0] == "+"
                entry = positive if curve == "M" else not positive
                ev.append((d, k, entry))
        events.append(ev)
    return events


def _match(ev: Sequence[Tuple[int, int, bool]]) -> Dict[int, int]:
    """Pair entries with exits as nested parentheses on the face boundary."""
    n = len(ev)
    if n == 0:
        return {}
    if n % 2:
        raise TraceFailure("odd number of crossings on a face")
    for r in range(n):
        stack: List[int] = []
        pairs: Dict[int, int] = {}
        good = True
        for t in range(n):
            idx = (r + t) % n
            if ev[idx][2]:
                stack.append(idx)
            elif stack:
                pairs[stack.pop()] = idx
            else:
                good = False
                break
        if good and not stack:
            return pairs
    raise TraceFailure("crossings on a face do not pair up")


def _interleaved(n: int, a: Tuple[int, int], b: Tuple[int, int]) -> bool:
    def between(x, lo, hi):
        return 0 < (x - lo) % n < (hi - lo) % n

    return between(b[0], a[0], a[1]) != between(b[1], a[0], a[1])


def trace_curve(g, curve: str, face_point=None) -> dict:
    """Follow an orbit curve through the faces of ``g`` in the cover.

    The curve starts in the crossing face at its intersection with the
    other orbit curve, which is located as the unique pair of interleaved
    chords there.

    Returns
    -------
    dict
        ``faces``: list of ``(face, lift)`` visited, starting and ending in
        the crossing face; ``end_lift``: lift of the final face;
        ``points``: face points along the way if ``face_point`` is given.

    Raises
    ------
    TraceFailure
    """
    other = "H" if curve == "M" else "M"
    f0 = g.face_of[g.crossing_face]
    ev = _curve_events(g, curve)
    ev_other = _curve_events(g, other)
    pairs = [_match(e) for e in ev]
    # position of every event along the boundary of its face
    walk0 = g.face_walks[f0]
    pos_of: Dict[Tuple[int, int], int] = {}
    p = 0
    for d in walk0:
        for k in range(len(g.tokens[d])):
            pos_of[(d, k)] = p
            p += 1
    n0 = p
    chords = [(pos_of[ev[f0][a][:2]], pos_of[ev[f0][b][:2]], a) for a, b in pairs[f0].items()]
    o_pairs = _match(ev_other[f0])
    o_chords = [(pos_of[ev_other[f0][a][:2]], pos_of[ev_other[f0][b][:2]]) for a, b in o_pairs.items()]
    through = [
        a for (x, y, a) in chords for (u, w) in o_chords if _interleaved(n0, (x, y), (u, w))
    ]
    if len(through) != 1:
        raise TraceFailure(f"curves {curve} and {other} do not cross exactly once in the crossing face")
    start_entry = through[0]
    exit_of = [dict(p) for p in pairs]
    entry_index = []
    for f, e in enumerate(ev):
        entry_index.append({(d, k): idx for idx, (d, k, ent) in enumerate(e) if ent})
    total = sum(len(e) for e in ev) // 2
    visited = [(f0, (0, 0))]
    f, lift, idx = f0, (0, 0), exit_of[f0][start_entry]
    used = 1
    while True:
        d, k, _ = ev[f][idx]
        am, ah = g.across(d)
        lift = (lift[0] + am, lift[1] + ah)
        t = g.twin[d]
        nf = g.face_of[t]
        kk = len(g.tokens[t]) - 1 - k
        if (t, kk) not in entry_index[nf]:
            raise TraceFailure(f"crossing at dart {d} does not enter the neighboring face")
        entry = entry_index[nf][(t, kk)]
        f = nf
        visited.append((f, lift))
        if f == f0 and entry == start_entry:
            break
        used += 1
        if used > total:
            raise TraceFailure(f"curve {curve} does not close up")
        idx = exit_of[f][entry]
    if used != total:
        raise TraceFailure(f"curve {curve} visits {used} of {total} face crossings")
    out = {"faces": visited, "end_lift": lift}
    if face_point is not None:
        out["points"] = [face_point(ff, ll) for ff, ll in visited]
    return out


# ----------------------------------------------------------------------
# patches


def patches(g, C1, C2) -> List[List[int]]:
    """Faces of ``g`` grouped into the regions cut out by two walks."""
    cut = set()
    for W in (C1, C2):
        for d in getattr(W, "darts", W):
            cut.add(d)
            cut.add(g.twin[d])
    parent = list(range(g.num_faces))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for d in range(g.num_darts):
        if d not in cut:
            a, b = find(g.face_of[d]), find(g.face_of[g.twin[d]])
            if a != b:
                parent[a] = b
    groups: Dict[int, List[int]] = {}
    for f in range(g.num_faces):
        groups.setdefault(find(f), []).append(f)
    return sorted(groups.values())


def crossing_count(g, C1, C2) -> int:
    """Combinatorial number of crossings between two closed walks."""
    return sum(1 for c in walk_contacts(g, C1, C2) if c.is_crossing)


# ----------------------------------------------------------------------
# builders


def _orbit_walks(g, rel, prefer_orbital: bool):
    mode = "prefer_orbital" if prefer_orbital else "any"
    return feedback_closed_walk(g, rel, BLUE, mode), feedback_closed_walk(g, rel, RED, mode)


def build_orbital_dual(g, rel) -> RectangularDual:
    """Rectangular dual of an orbital REL on a rectangular flat torus.

    ``Q = [0, P_1] x [0, P_2]`` with ``P_i = d_i(t_i) - 1``.

    Raises
    ------
    NotOrbital
    """
    cl = classify(g, rel)
    if cl.kind != "orbital":
        if cl.kind == "unrealizable":
            raise Unrealizable(cl.witness.dart, cl.witness.color)
        raise NotOrbital(f"REL is {cl.kind}")
    C1, C2 = _orbit_walks(g, rel, prefer_orbital=True)
    if C1.homotopy != HomotopyClass(0, 1) or C2.homotopy != HomotopyClass(1, 0):
        raise AssertionError(f"orbital feedback walks have classes {C1.homotopy}, {C2.homotopy}")
    co = _Coordinates(g, rel, C1, C2)
    P1, P2 = co.P[BLUE], co.P[RED]
    t_M, t_H = co.translation((0, 1)), co.translation((1, 0))
    assert t_M == (0, P2) and t_H == (P1, 0)
    Q = [(0, 0), (0, P2), (P1, P2), (P1, 0)]
    rects = _reduced_rects(co, (0, 0), t_M, t_H)
    info = {
        "periods": (P1, P2),
        "sinks": (co.num[BLUE].sink, co.num[RED].sink),
        "walks": (C1, C2),
        "coordinates": co,
    }
    return RectangularDual("orbital", Q, t_M, t_H, rects, info)


def build_slanted_dual(g, rel) -> RectangularDual:
    """Rectangular dual of a slanted REL on a slanted flat torus.

    ``Q`` is the parallelogram ``p1, p1 + t_M, p1 + t_M + t_H, p1 + t_H``
    where ``p1`` is the point of the crossing face and ``t_M``, ``t_H``
    are the end points of the traced orbit curves minus ``p1``.

    Raises
    ------
    NotSlanted, TraceFailure
    """
    cl = classify(g, rel)
    if cl.kind != "slanted":
        if cl.kind == "unrealizable":
            raise Unrealizable(cl.witness.dart, cl.witness.color)
        raise NotSlanted(f"REL is {cl.kind}")
    C1, C2 = _orbit_walks(g, rel, prefer_orbital=False)
    co = _Coordinates(g, rel, C1, C2)
    f0 = g.face_of[g.crossing_face]
    p1 = co.face_point(f0)
    traces = {}
    for curve, target in (("M", (0, 1)), ("H", (1, 0))):
        tr = trace_curve(g, curve, co.face_point)
        if tr["end_lift"] != target:
            raise TraceFailure(f"trace of {curve} ends in lift {tr['end_lift']}")
        traces[curve] = tr
    pM = traces["M"]["points"][-1]
    pH = traces["H"]["points"][-1]
    t_M = (pM[0] - p1[0], pM[1] - p1[1])
    t_H = (pH[0] - p1[0], pH[1] - p1[1])
    if t_M != co.translation((0, 1)) or t_H != co.translation((1, 0)):
        raise TraceFailure("traced corners disagree with the deck translations")
    Q = [p1, pM, (p1[0] + t_M[0] + t_H[0], p1[1] + t_M[1] + t_H[1]), pH]
    rects = _reduced_rects(co, p1, t_M, t_H)
    pt = patches(g, C1, C2)
    tiles = set()
    for f in range(g.num_faces):
        a, b = reduce_point(co.face_point(f), p1, t_M, t_H)
        tiles.add(co.tile(f, (-b, -a)))
    if len(tiles) > 4 * g.num_faces + 4:
        raise AssertionError(f"{len(tiles)} tiles meet Q")
    info = {
        "periods": (co.P[BLUE], co.P[RED]),
        "sinks": (co.num[BLUE].sink, co.num[RED].sink),
        "walks": (C1, C2),
        "coordinates": co,
        "patches": pt,
        "crossings": crossing_count(g, C1, C2),
        "ihat": algebraic_crossing(C1.homotopy, C2.homotopy),
        "tiles": sorted(tiles),
        "traces": traces,
    }
    return RectangularDual("slanted", Q, t_M, t_H, rects, info)


def build_toroidal_dual(g, rel) -> RectangularDual:
    """Classify the REL and build the matching dual.

    Raises
    ------
    Unrealizable
        Carrying the lonely edge.
    """
    cl = classify(g, rel)
    if cl.kind == "unrealizable":
        raise Unrealizable(cl.witness.dart, cl.witness.color)
    if cl.kind == "orbital":
        return build_orbital_dual(g, rel)
    return build_slanted_dual(g, rel)
