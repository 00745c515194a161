"""
Independent oracles: geometric checks of duals, REL extraction from
geometry, brute-force classification and random REL sampling.

Nothing here uses the numberings or walks of the constructions.  The
geometric checks see only the rectangles, the translations and the host
graph, and use exact integer arithmetic throughout.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from math import ceil, floor
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import AmbiguousContact, Report, TooLarge
from .homotopy import HomotopyClass
from .labeling import BLUE, RED, RegularEdgeLabeling
from .rel import Classification, LonelyEdge, validate_toroidal_rel

__all__ = [
    "check_toroidal_dual",
    "check_cylindrical_dual",
    "extract_rel",
    "contact_matching",
    "brute_force_classification",
    "simple_cycles",
    "random_rel",
    "enumerate_rels",
    "same_classification",
]

TOP, RIGHT, BOTTOM, LEFT = 0, 1, 2, 3
# side of the lower rectangle -> (color, whether the dart from it is forward)
_SIDE_LABEL = {TOP: (BLUE, True), RIGHT: (RED, True), BOTTOM: (BLUE, False), LEFT: (RED, False)}


# ----------------------------------------------------------------------
# lattice helpers


class _Lattice:
    """Translations ``a * t_M + b * t_H`` (only ``a * t_M`` on a cylinder)."""

    def __init__(self, t_M, t_H):
        self.t_M = tuple(t_M)
        self.t_H = None if t_H is None else tuple(t_H)
        if self.t_H is not None:
            self.det = self.t_M[0] * self.t_H[1] - self.t_M[1] * self.t_H[0]
            if self.det == 0:
                raise ValueError("translations are parallel")
        elif self.t_M[1] != 0 or self.t_M[0] == 0:
            raise ValueError("cylinder translation must be horizontal and non-zero")

    def vec(self, a: int, b: int) -> Tuple[int, int]:
        x, y = a * self.t_M[0], a * self.t_M[1]
        if self.t_H is not None:
            x += b * self.t_H[0]
            y += b * self.t_H[1]
        return (x, y)

    def of_class(self, m: int, h: int) -> Tuple[int, int]:
        """Translation of the deck transformation of class ``(m, h)``."""
        if self.t_H is None:
            return (m * self.t_M[0], 0)
        return (m * self.t_H[0] + h * self.t_M[0], m * self.t_H[1] + h * self.t_M[1])

    def coeffs(self, x, y) -> Tuple[Fraction, Fraction]:
        if self.t_H is None:
            return Fraction(x, self.t_M[0]), Fraction(0)
        a = Fraction(x * self.t_H[1] - y * self.t_H[0], self.det)
        b = Fraction(self.t_M[0] * y - self.t_M[1] * x, self.det)
        return a, b

    def translations_into(self, lo: Tuple[int, int], hi: Tuple[int, int]):
        """All lattice vectors inside the closed box ``lo .. hi``."""
        corners = [(x, y) for x in (lo[0], hi[0]) for y in (lo[1], hi[1])]
        cs = [self.coeffs(x, y) for x, y in corners]
        a_range = range(floor(min(c[0] for c in cs)), ceil(max(c[0] for c in cs)) + 1)
        b_range = range(floor(min(c[1] for c in cs)), ceil(max(c[1] for c in cs)) + 1) if self.t_H else [0]
        for a in a_range:
            for b in b_range:
                v = self.vec(a, b)
                if lo[0] <= v[0] <= hi[0] and lo[1] <= v[1] <= hi[1]:
                    yield v


def _shift(r, v):
    return (r[0] + v[0], r[1] + v[0], r[2] + v[1], r[3] + v[1])


def _box(Q):
    xs = [p[0] for p in Q]
    ys = [p[1] for p in Q]
    return (min(xs), max(xs), min(ys), max(ys))


def _window_lifts(rects, lat: _Lattice, box, closed: bool):
    """Lifts ``(vertex, translation, rect)`` meeting ``box`` (closed or with positive area)."""
    out = []
    for v, r in sorted(rects.items()):
        lo = (box[0] - r[1], box[2] - r[3])
        hi = (box[1] - r[0], box[3] - r[2])
        for t in lat.translations_into(lo, hi):
            s = _shift(r, t)
            if closed:
                hit = s[0] <= box[1] and box[0] <= s[1] and s[2] <= box[3] and box[2] <= s[3]
            else:
                hit = s[0] < box[1] and box[0] < s[1] and s[2] < box[3] and box[2] < s[3]
            if hit:
                out.append((v, t, s))
    return out


def _overlap(r, s) -> bool:
    return r[0] < s[1] and s[0] < r[1] and r[2] < s[3] and s[2] < r[3]


# ----------------------------------------------------------------------
# contacts


def _contacts_of(u, r, lifts):
    """Segment contacts of rectangle ``r`` with nearby lifts, in clockwise order."""
    res = []
    for w, t, s in lifts:
        if s == r and w == u:
            continue
        if r[3] == s[2] and min(r[1], s[1]) > max(r[0], s[0]):
            lo, hi = max(r[0], s[0]), min(r[1], s[1])
            res.append(((TOP, lo + hi), w, t))
        if r[1] == s[0] and min(r[3], s[3]) > max(r[2], s[2]):
            lo, hi = max(r[2], s[2]), min(r[3], s[3])
            res.append(((RIGHT, -(lo + hi)), w, t))
        if r[2] == s[3] and min(r[1], s[1]) > max(r[0], s[0]):
            lo, hi = max(r[0], s[0]), min(r[1], s[1])
            res.append(((BOTTOM, -(lo + hi)), w, t))
        if r[0] == s[1] and min(r[3], s[3]) > max(r[2], s[2]):
            lo, hi = max(r[2], s[2]), min(r[3], s[3])
            res.append(((LEFT, lo + hi), w, t))
    res.sort()
    return [(key[0], w, t) for key, w, t in res]


def contact_matching(dual, g) -> Dict[int, Tuple[int, Tuple[int, int]]]:
    """Match every dart of ``g`` with a contact of the rectangles.

    Returns
    -------
    dict
        Dart to ``(side, translation)``: the side of the tail rectangle
        carrying the contact and the translation of the head rectangle.

    Raises
    ------
    AmbiguousContact
        If the contacts around some rectangle do not follow the rotation of
        its vertex, or no consistent choice of lifts exists.
    """
    lat = _Lattice(dual.t_M, dual.t_H)
    rects = dual.rects
    if set(rects) != set(g.vertices):
        raise AmbiguousContact("rectangles and vertices differ")
    around: Dict[int, list] = {}
    for u in g.vertices:
        r = rects[u]
        box = (r[0], r[1], r[2], r[3])
        lifts = _window_lifts(rects, lat, box, closed=True)
        around[u] = _contacts_of(u, r, lifts)
    # candidate cyclic shifts per vertex
    cands: Dict[int, List[int]] = {}
    for u in g.vertices:
        ds = g.darts_at(u)
        cs = around[u]
        if len(cs) != len(ds):
            raise AmbiguousContact(f"vertex {u} has {len(ds)} darts but {len(cs)} contacts")
        k = len(ds)
        ok = []
        for s in range(k):
            if all(cs[(j + s) % k][1] == g.head(ds[j]) for j in range(k)):
                ok.append(s)
        if not ok:
            raise AmbiguousContact(f"contacts around vertex {u} do not follow its rotation")
        cands[u] = ok

    def kappa(u, s, j):
        ds = g.darts_at(u)
        side, w, t = around[u][(j + s) % len(ds)]
        d = ds[j]
        dm, dh = g.dm[d], g.dh[d]
        td = lat.of_class(dm, dh)
        return d, side, t, (t[0] - td[0], t[1] - td[1])

    # backtracking over shifts; phi(v) is the offset of the stored lift of v
    order = list(g.vertices)
    phi: Dict[int, Tuple[int, int]] = {order[0]: (0, 0)}
    chosen: Dict[int, int] = {}

    def consistent(u, s):
        for j in range(len(g.darts_at(u))):
            d, _, _, kap = kappa(u, s, j)
            w = g.head(d)
            want = (phi[u][0] - kap[0], phi[u][1] - kap[1]) if u in phi else None
            if want is not None and w in phi and phi[w] != want:
                return False
        return True

    def assign(u, s, new):
        for j in range(len(g.darts_at(u))):
            d, _, _, kap = kappa(u, s, j)
            w = g.head(d)
            if w not in phi:
                phi[w] = (phi[u][0] - kap[0], phi[u][1] - kap[1])
                new.append(w)

    def solve(idx):
        pending = [v for v in order if v not in chosen and v in phi]
        if not pending:
            rest = [v for v in order if v not in chosen]
            if not rest:
                return True
            return False
        u = pending[0]
        for s in cands[u]:
            if not consistent(u, s):
                continue
            new: List[int] = []
            assign(u, s, new)
            chosen[u] = s
            if all(consistent(v, chosen[v]) for v in chosen) and solve(idx + 1):
                return True
            del chosen[u]
            for w in new:
                del phi[w]
        return False

    import sys

    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 4 * len(order) + 100))
    try:
        if not solve(0):
            raise AmbiguousContact("no consistent assignment of contacts to darts")
    finally:
        sys.setrecursionlimit(limit)
    result = {}
    for u in g.vertices:
        for j in range(len(g.darts_at(u))):
            d, side, t, _ = kappa(u, chosen[u], j)
            result[d] = (side, t)
    for d, (side, _) in result.items():
        if result[g.twin[d]][0] != (side + 2) % 4:
            raise AmbiguousContact(f"dart {d} and its twin use non-opposite sides")
    return result


def extract_rel(dual, g) -> RegularEdgeLabeling:
    """Read the REL off a dual: horizontal contacts are blue and point up,
    vertical contacts are red and point right.

    Raises
    ------
    AmbiguousContact
    """
    m = contact_matching(dual, g)
    fwd = {}
    for d, (side, _) in m.items():
        color, out = _SIDE_LABEL[side]
        if out:
            fwd[d] = color
    return RegularEdgeLabeling(g, fwd)


# ----------------------------------------------------------------------
# geometric checks


def _common_checks(rep: Report, dual, g, rel, lat, box, interior_point) -> None:
    rects = dual.rects
    for v, r in sorted(rects.items()):
        if not (r[0] < r[1] and r[2] < r[3]):
            rep.add("degenerate", f"rectangle of {v} is degenerate: {r}", v)
    # overlap
    lifts = _window_lifts(rects, lat, box, closed=False)
    lifts.sort(key=lambda x: x[2][0])
    overlap_ok = True
    active: list = []
    for item in lifts:
        active = [a for a in active if a[2][1] > item[2][0]]
        for other in active:
            if _overlap(item[2], other[2]):
                overlap_ok = False
                rep.add("overlap", f"rectangles of {other[0]} and {item[0]} overlap", (other[0], item[0]))
        active.append(item)
    rep.mark("overlap", overlap_ok)
    # four corners
    closed = _window_lifts(rects, lat, (box[0] - 1, box[1] + 1, box[2] - 1, box[3] + 1), closed=True)
    seen = set()
    corner_ok = True
    for v, t, s in closed:
        for p in ((s[0], s[2]), (s[0], s[3]), (s[1], s[2]), (s[1], s[3])):
            q = _reduce(p, dual, lat)
            if q in seen or not interior_point(q):
                continue
            seen.add(q)
            n = sum(1 for _, _, z in closed if z[0] <= q[0] <= z[1] and z[2] <= q[1] <= z[3])
            if n != 3:
                corner_ok = False
                code = "four_corner" if n >= 4 else "corner"
                rep.add(code, f"{n} rectangles meet at corner point {q}", q)
    rep.mark("four_corner", corner_ok)
    # contact graph and REL
    try:
        m = contact_matching(dual, g)
    except AmbiguousContact as exc:
        rep.add("contact_graph", str(exc))
        rep.mark("contact_graph", False)
        rep.mark("rel", False)
        return
    rep.mark("contact_graph", True)
    got = extract_rel(dual, g)
    diffs = got.differences(rel)
    for d, why in diffs:
        rep.add("rel", f"dart {d}: {why}", d)
    rep.mark("rel", not diffs)


def _reduce(p, dual, lat: _Lattice):
    p1 = dual.Q[0]
    a, b = lat.coeffs(p[0] - p1[0], p[1] - p1[1])
    a, b = floor(a), floor(b) if lat.t_H is not None else 0
    v = lat.vec(a, b)
    return (p[0] - v[0], p[1] - v[1])


def check_toroidal_dual(dual, g, rel) -> Report:
    """Exact verification of a toroidal rectangular dual.

    Checks, each recorded in ``report.checks``: ``area`` (areas add up to
    the area of ``Q``), ``overlap`` (no two lifts overlap), ``four_corner``
    (every corner point lies on exactly three rectangles),
    ``contact_graph`` (the contacts reproduce ``g`` with its rotation and
    homotopy data) and ``rel`` (the extracted REL equals ``rel``).
    """
    rep = Report("toroidal_dual")
    if dual.t_H is None:
        rep.add("shape", "toroidal dual needs two translations")
        return rep
    lat = _Lattice(dual.t_M, dual.t_H)
    Q = list(dual.Q)
    t_M, t_H = tuple(dual.t_M), tuple(dual.t_H)
    p1 = Q[0]
    expect = [p1, (p1[0] + t_M[0], p1[1] + t_M[1]), (p1[0] + t_M[0] + t_H[0], p1[1] + t_M[1] + t_H[1]),
              (p1[0] + t_H[0], p1[1] + t_H[1])]
    if [tuple(p) for p in Q] != expect:
        rep.add("shape", f"Q corners {Q} do not match the translations")
    total = sum((r[1] - r[0]) * (r[3] - r[2]) for r in dual.rects.values())
    area = abs(lat.det)
    if total != area:
        rep.add("area", f"rectangle areas sum to {total}, Q has area {area}")
    rep.mark("area", total == area)
    _common_checks(rep, dual, g, rel, lat, _box(Q), lambda q: True)
    return rep


def check_cylindrical_dual(dual, g, rel) -> Report:
    """Exact verification of a cylindrical rectangular dual.

    Besides ``overlap``, ``four_corner`` (interior points only),
    ``contact_graph`` and ``rel`` it checks ``strip`` (all rectangles lie
    between the two boundary lines and fill the strip) and
    ``boundary_order`` (the rectangles on the bottom and top line appear
    in the order of the outer faces ``f_s`` and ``f_t``).
    """
    rep = Report("cylindrical_dual")
    if dual.t_H is not None:
        rep.add("shape", "cylindrical dual must not have a second translation")
        return rep
    lat = _Lattice(dual.t_M, None)
    x0, x1, y0, y1 = _box(dual.Q)
    P = dual.t_M[0]
    strip_ok = x1 - x0 == abs(P)
    if not strip_ok:
        rep.add("strip", f"Q has width {x1 - x0}, translation is {P}")
    for v, r in sorted(dual.rects.items()):
        if r[2] < y0 or r[3] > y1:
            strip_ok = False
            rep.add("strip", f"rectangle of {v} leaves the strip", v)
    total = sum((r[1] - r[0]) * (r[3] - r[2]) for r in dual.rects.values())
    if total != abs(P) * (y1 - y0):
        strip_ok = False
        rep.add("strip", f"rectangle areas sum to {total}, strip has area {abs(P) * (y1 - y0)}")
    rep.mark("strip", strip_ok)
    _common_checks(rep, dual, g, rel, lat, (x0, x1, y0, y1), lambda q: y0 < q[1] < y1)
    # boundary order
    order_ok = True
    for face, line, left_to_right in ((g.f_t, y1, True), (g.f_s, y0, False)):
        walk = [g.vertex[d] for d in g.face_walks[face]]
        on_line = []
        for v, r in dual.rects.items():
            if (r[3] if line == y1 else r[2]) == line:
                start = (r[0] - x0) % P
                on_line.append((start, v))
        on_line.sort()
        seq = [v for _, v in on_line]
        if not left_to_right:
            seq.reverse()
        if not _cyclic_equal(seq, walk):
            order_ok = False
            rep.add("boundary_order", f"rectangles on line y={line} read {seq}, outer face reads {walk}", face)
    rep.mark("boundary_order", order_ok)
    return rep


def _cyclic_equal(a: Sequence, b: Sequence) -> bool:
    if len(a) != len(b):
        return False
    if not a:
        return True
    n = len(a)
    return any(all(a[(s + j) % n] == b[j] for j in range(n)) for s in range(n))


# ----------------------------------------------------------------------
# brute-force classification


def simple_cycles(g, rel, i: int):
    """All simple directed cycles of ``L_i``, as dart tuples.

    Every cycle is reported once, starting at its smallest vertex position.
    """
    pos = {v: k for k, v in enumerate(g.vertices)}
    out = {v: [d for d in g.darts_at(v) if rel.color[d] == i and rel.is_out[d]] for v in g.vertices}
    for s in g.vertices:
        ps = pos[s]
        path: List[int] = []
        on_path = {s}
        stack = [iter(out[s])]
        while stack:
            d = next(stack[-1], None)
            if d is None:
                stack.pop()
                if path:
                    on_path.discard(g.head(path.pop()))
                continue
            w = g.head(d)
            if w == s:
                yield tuple(path + [d])
                continue
            if pos[w] < ps or w in on_path:
                continue
            path.append(d)
            on_path.add(w)
            stack.append(iter(out[w]))


def brute_force_classification(g, rel, max_vertices: int = 12) -> Classification:
    """Classify a toroidal REL by enumerating every simple directed cycle.

    An edge is lonely if it lies on no cycle of its color; the REL is
    orbital if every blue edge lies on a cycle of class ``(0, 1)`` and every
    red edge on a cycle of class ``(1, 0)``.

    Raises
    ------
    TooLarge
        If ``g`` has more than ``max_vertices`` vertices.
    """
    if len(g.vertices) > max_vertices:
        raise TooLarge(f"{len(g.vertices)} vertices exceed the bound {max_vertices}")
    target = {BLUE: (0, 1), RED: (1, 0)}
    on_cycle: Dict[int, set] = {}
    for i in (BLUE, RED):
        for cyc in simple_cycles(g, rel, i):
            c = (sum(g.dm[d] for d in cyc), sum(g.dh[d] for d in cyc))
            for d in cyc:
                on_cycle.setdefault(d, set()).add(c)
    orbital = True
    for i in (BLUE, RED):
        for d in range(g.num_darts):
            if rel.color[d] != i or not rel.is_out[d]:
                continue
            classes = on_cycle.get(d)
            if not classes:
                return Classification("unrealizable", witness=LonelyEdge(d, i))
            if target[i] not in classes:
                orbital = False
    return Classification("orbital" if orbital else "slanted")


def same_classification(a: Classification, b: Classification) -> bool:
    """Equal kind and equal lonely-edge witness."""
    return a.kind == b.kind and a.witness == b.witness


# ----------------------------------------------------------------------
# REL sampling


def _compositions(k: int) -> List[Tuple[int, int, int, int]]:
    return [s for s in itertools.product(range(1, k + 1), repeat=4) if sum(s) == k]


class _GroupPatterns:
    """Feasibility of partially labeled rotations for the four-group rule."""

    def __init__(self):
        self.cache: Dict[int, List[Tuple[int, ...]]] = {}

    def patterns(self, k: int) -> List[Tuple[int, ...]]:
        if k not in self.cache:
            pats = set()
            for sizes in _compositions(k):
                base = []
                for gidx, sz in enumerate(sizes):
                    base.extend([gidx] * sz)
                for s in range(k):
                    pats.add(tuple(base[s:] + base[:s]))
            self.cache[k] = sorted(pats)
        return self.cache[k]

    def feasible(self, labels: Sequence[Optional[int]]) -> bool:
        for p in self.patterns(len(labels)):
            if all(l is None or l == q for l, q in zip(labels, p)):
                return True
        return False


def _search_rels(g, rng: Optional[random.Random], limit: Optional[int]):
    n = g.num_darts
    color = [0] * n
    out = [False] * n
    at = {v: g.darts_at(v) for v in g.vertices}
    pats = _GroupPatterns()

    def feasible(v):
        return pats.feasible([(2 if out[d] else 0) + color[d] - 1 if color[d] else None for d in at[v]])

    order = sorted(g.edges(), key=lambda e: (min(g.vertex[e], g.head(e)), e))
    state = {"found": 0}

    def rec(idx):
        if idx == len(order):
            yield RegularEdgeLabeling(g, {d: color[d] for d in range(n) if out[d]})
            state["found"] += 1
            return
        e = order[idx]
        t = g.twin[e]
        opts = [(c, fw) for c in (BLUE, RED) for fw in (e, t)]
        if rng is not None:
            rng.shuffle(opts)
        for c, fw in opts:
            color[e] = color[t] = c
            out[fw] = True
            out[g.twin[fw]] = False
            if feasible(g.vertex[e]) and feasible(g.head(e)):
                yield from rec(idx + 1)
                if limit is not None and state["found"] >= limit:
                    return
            color[e] = color[t] = 0
            out[e] = out[t] = False

    import sys

    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 3 * len(order) + 200))
    try:
        yield from rec(0)
    finally:
        sys.setrecursionlimit(old)


def enumerate_rels(g, limit: Optional[int] = None):
    """Yield toroidal RELs of ``g`` in a fixed order (all of them by default)."""
    return _search_rels(g, None, limit)


def random_rel(g, seed=None) -> RegularEdgeLabeling:
    """A toroidal REL found by randomized backtracking.

    Raises
    ------
    ValueError
        If ``g`` admits no toroidal REL.
    """
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    for rel in _search_rels(g, rng, 1):
        return rel
    raise ValueError("graph admits no toroidal REL")
