"""
Reproducible instances: a geometric graph builder and fixture generators.

The builder takes straight-line drawings in the universal cover and turns
them into combinatorial maps.  Vertex positions live in the open unit
square; an edge ``(u, w, (m, h))`` is the segment from ``pos(u)`` to
``pos(w) + (m, h)``.  Rotations come from sorting edge directions and
orbit tokens from the crossings of each segment with the integer lines
``x = k`` (the meridian and its lifts) and ``y = k`` (the horizon).
All arithmetic uses :class:`fractions.Fraction`.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cmp_to_key
from typing import Dict, List, Optional, Sequence, Tuple

from .graph import (
    EmbeddedCylinderGraph,
    EmbeddedTorusGraph,
    build_cylinder_graph,
    build_torus_graph,
    reverse_tokens,
)
from .labeling import BLUE, RED, RegularEdgeLabeling

__all__ = [
    "segment_tokens",
    "geometric_torus_graph",
    "geometric_cylinder_graph",
    "torus_grid",
    "twisted_grid",
    "straight_grid",
    "grid_canonical_rel",
    "stacked_rings",
    "three_loop_torus",
    "three_loop_rel",
    "loop_vertex_cylinder",
    "enclosing_pair_cylinder",
    "degree_violation_cylinder",
    "single_loop_map",
]

Point = Tuple[Fraction, Fraction]


def _frac(x) -> Fraction:
    if isinstance(x, float):
        return Fraction(str(x))
    return Fraction(x)


def _is_int(x: Fraction) -> bool:
    return x.denominator == 1


def segment_tokens(p: Point, q: Point, use_h: bool = True) -> List[str]:
    """Orbit tokens met along the segment from ``p`` to ``q``.

    Raises
    ------
    ValueError
        If the segment passes through a lattice point, i.e. crosses a
        vertical and a horizontal integer line simultaneously, or if an
        endpoint lies on an integer line.
    """
    (px, py), (qx, qy) = p, q
    if _is_int(px) or (use_h and _is_int(py)) or _is_int(qx) or (use_h and _is_int(qy)):
        raise ValueError(f"segment endpoint on an orbit line: {p} -> {q}")
    events = []
    for a, b, tok_pos, tok_neg, active in ((px, qx, "+M", "-M", True), (py, qy, "+H", "-H", use_h)):
        if not active or a == b:
            continue
        lo, hi = (a, b) if a < b else (b, a)
        k = int(lo) if lo >= 0 else int(lo) - 1
        k += 1
        while k < hi:
            t = (k - a) / (b - a)
            events.append((t, tok_pos if b > a else tok_neg))
            k += 1
    events.sort(key=lambda e: e[0])
    for (t1, _), (t2, _) in zip(events, events[1:]):
        if t1 == t2:
            raise ValueError(f"segment {p} -> {q} passes through a lattice point")
    if use_h:
        return [tok for _, tok in events]
    return [tok for _, tok in events]


def _ccw_cmp(a: Point, b: Point) -> int:
    """Counterclockwise angle comparison starting at the positive x-axis."""

    def half(v):
        return 0 if (v[1] > 0 or (v[1] == 0 and v[0] > 0)) else 1

    ha, hb = half(a), half(b)
    if ha != hb:
        return ha - hb
    cross = a[0] * b[1] - a[1] * b[0]
    if cross == 0:
        raise ValueError(f"two edges leave a vertex in the same direction {a}, {b}")
    return -1 if cross > 0 else 1


def _raw_from_geometry(
    positions: Dict[int, Sequence], edges: Sequence[Tuple[int, int, Tuple[int, int]]], use_h: bool
):
    pos = {v: (_frac(p[0]), _frac(p[1])) for v, p in positions.items()}
    vertex: List[int] = []
    twin: List[int] = []
    toks: List[Tuple[str, ...]] = []
    direction: List[Point] = []
    for k, (u, w, tau) in enumerate(edges):
        tm, th = tau
        pu = pos[u]
        pw = (pos[w][0] + tm, pos[w][1] + th)
        t = tuple(segment_tokens(pu, pw, use_h))
        vertex += [u, w]
        twin += [2 * k + 1, 2 * k]
        toks += [t, reverse_tokens(t)]
        dx, dy = pw[0] - pu[0], pw[1] - pu[1]
        direction += [(dx, dy), (-dx, -dy)]
    n = len(vertex)
    nxt = [0] * n
    at: Dict[int, List[int]] = {v: [] for v in pos}
    for d in range(n):
        at[vertex[d]].append(d)
    for v, ds in at.items():
        ds.sort(key=cmp_to_key(lambda a, b: _ccw_cmp(direction[a], direction[b])))
        ds.reverse()  # clockwise
        for i, d in enumerate(ds):
            nxt[d] = ds[(i + 1) % len(ds)]
    darts = [
        {"id": d, "vertex": vertex[d], "twin": twin[d], "next_cw": nxt[d], "tokens": list(toks[d])}
        for d in range(n)
    ]
    return pos, {"vertices": sorted(pos), "darts": darts}


def _face_walks(raw) -> List[List[int]]:
    darts = raw["darts"]
    n = len(darts)
    seen = [False] * n
    walks = []
    for s in range(n):
        if seen[s]:
            continue
        w = []
        d = s
        while not seen[d]:
            seen[d] = True
            w.append(d)
            d = darts[darts[d]["twin"]]["next_cw"]
        walks.append(w)
    return walks


def _token_shift(tokens) -> Tuple[int, int]:
    m = h = 0
    for t in tokens:
        if t == "+M":
            m += 1
        elif t == "-M":
            m -= 1
        elif t == "+H":
            h += 1
        else:
            h -= 1
    return m, h


def _winding(poly: List[Point], z: Point) -> int:
    wn = 0
    k = len(poly)
    for i in range(k):
        (x1, y1), (x2, y2) = poly[i], poly[(i + 1) % k]
        side = (x2 - x1) * (z[1] - y1) - (z[0] - x1) * (y2 - y1)
        if y1 <= z[1] < y2 and side > 0:
            wn += 1
        elif y2 <= z[1] < y1 and side < 0:
            wn -= 1
    return wn


def _find_crossing_face(pos, raw) -> int:
    """Anchor dart of a face whose lifted boundary encloses a lattice point."""
    darts = raw["darts"]
    for walk in _face_walks(raw):
        anchor = min(walk)
        poly = []
        sm = sh = 0
        k = walk.index(anchor)
        ordered = walk[k:] + walk[:k]
        for d in ordered:
            x, y = pos[darts[d]["vertex"]]
            poly.append((x + sm, y + sh))
            dm, dh = _token_shift(darts[d]["tokens"])
            sm += dm
            sh += dh
        xs = [p[0] for p in poly]
        ys = [p[1] for p in poly]
        for zx in range(int(min(xs)) - 1, int(max(xs)) + 2):
            for zy in range(int(min(ys)) - 1, int(max(ys)) + 2):
                if _winding(poly, (Fraction(zx), Fraction(zy))) != 0:
                    return anchor
    raise ValueError("no face contains a lattice point")


def geometric_torus_graph(positions, edges) -> EmbeddedTorusGraph:
    """Torus graph from a straight-line drawing in the universal cover.

    Parameters
    ----------
    positions : dict
        Vertex id to ``(x, y)`` with ``0 < x, y < 1`` (non-integers).
    edges : sequence of ``(u, w, (m, h))``
        Edge ``k`` becomes darts ``2k`` (leaving ``u``) and ``2k + 1``.

    Notes
    -----
    Edge crossings are not detected; an invalid drawing is caught by the
    Euler and face-class checks of :func:`build_torus_graph` in most cases.
    """
    pos, raw = _raw_from_geometry(positions, edges, use_h=True)
    raw["crossing_face"] = _find_crossing_face(pos, raw)
    g = build_torus_graph(raw)
    g.positions = pos
    return g


def geometric_cylinder_graph(positions, edges) -> EmbeddedCylinderGraph:
    """Cylinder graph from a drawing periodic in ``x`` with period 1.

    The bottom outer face (below the drawing) becomes ``f_s``; its face-left
    walk runs right to left, so its seam count is ``-1``.  The top outer
    face ``f_t`` has seam count ``+1``.
    """
    pos, raw = _raw_from_geometry(positions, edges, use_h=False)
    darts = raw["darts"]
    fs = ft = None
    for walk in _face_walks(raw):
        m, _ = _token_shift([t for d in walk for t in darts[d]["tokens"]])
        if m == 1:
            if ft is not None:
                raise ValueError("several faces wind around the cylinder forwards")
            ft = min(walk)
        elif m == -1:
            if fs is not None:
                raise ValueError("several faces wind around the cylinder backwards")
            fs = min(walk)
        elif m != 0:
            raise ValueError("face winds around the cylinder more than once")
    if fs is None or ft is None:
        raise ValueError("drawing does not have two outer faces")
    raw["outer_faces"] = [fs, ft]
    g = build_cylinder_graph(raw)
    g.positions = pos
    return g


# ----------------------------------------------------------------------
# grids

# dart 6 v + k leaves vertex v in direction k
_E, _N, _NE, _W, _S, _SW = range(6)
_STEP = {_E: (1, 0), _N: (0, 1), _NE: (1, 1)}
_CW_NEXT = {_N: _NE, _NE: _E, _E: _S, _S: _SW, _SW: _W, _W: _N}
_OPPOSITE = {_E: _W, _N: _S, _NE: _SW}

_OFFSETS = [
    (1, 2, 3),
    (1, 3, 5),
    (2, 5, 7),
    (3, 7, 11),
]


def _floor_div(x: int, y: int) -> int:
    return x // y


def _int_segment_tokens(x1, y1, x2, y2, L) -> Tuple[str, ...]:
    """Tokens of the segment between two integer points scaled by ``L``."""
    events = []
    for a, b, pos_tok, neg_tok in ((x1, x2, "+M", "-M"), (y1, y2, "+H", "-H")):
        fa, fb = a // L, b // L
        if fa == fb:
            continue
        lo, hi = (fa, fb) if fa < fb else (fb, fa)
        for n in range(lo + 1, hi + 1):
            events.append((Fraction(n * L - a, b - a), pos_tok if b > a else neg_tok))
    if not events:
        return ()
    events.sort(key=lambda e: e[0])
    for (t1, _), (t2, _) in zip(events, events[1:]):
        if t1 == t2:
            raise ValueError("grid edge passes through a lattice point")
    return tuple(tok for _, tok in events)


def _lattice_grid(a: int, b: int, c: int, k: int, meta: dict) -> EmbeddedTorusGraph:
    """Triangulated grid ``Z^2`` modulo the lattice spanned by ``(a, c)`` and ``(k, b)``."""
    D = a * b - c * k
    if D <= 0:
        raise ValueError("lattice must be positively oriented")
    if k == 0:
        # representatives {0..a-1} x {0..b-1}; (0, b) lies in the lattice
        def rep(qx, qy):
            w = qx // a
            x, y = qx - w * a, qy - w * c
            return x, y % b

        reps = [(i, j) for j in range(b) for i in range(a)]
    else:
        # Hermite normal form: (p, 0) and (r, s) span the lattice
        s, u, v = _ext_gcd(c, b)
        r = u * a + v * k
        p = D // s

        def rep(qx, qy):
            t = qy // s
            x, y = qx - t * r, qy - t * s
            return x % p, y

        reps = [(x, y) for y in range(s) for x in range(p)]
    index = {pt: n for n, pt in enumerate(reps)}
    V = len(reps)
    last: Optional[Exception] = None
    for an, bn, den in _OFFSETS:
        L = den * D
        try:
            def scaled(px, py):
                gx, gy = den * px + an, den * py + bn
                return b * gx - k * gy, -c * gx + a * gy

            def tokens_of(i, j, sx, sy):
                X1, Y1 = scaled(i, j)
                X2, Y2 = scaled(i + sx, j + sy)
                if X1 % L == 0 or Y1 % L == 0:
                    raise ValueError("vertex on an orbit line")
                cx, cy = (X1 // L) * L, (Y1 // L) * L
                t = _int_segment_tokens(X1 - cx, Y1 - cy, X2 - cx, Y2 - cy, L)
                return index[rep(i + sx, j + sy)], t

            raw = _grid_raw(reps, tokens_of, index[rep(-1, -1)])
            g = build_torus_graph(raw)
        except ValueError as exc:
            last = exc
            continue
        g.meta = dict(meta, points=reps, lattice=((a, c), (k, b)))
        return g
    raise ValueError(f"no generic offset works for this grid: {last}")


def _ext_gcd(x: int, y: int):
    """Return ``(g, u, v)`` with ``u x + v y = g = gcd(x, y) > 0``."""
    old_r, r = x, y
    old_u, u = 1, 0
    old_v, v = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_u, u = u, old_u - q * u
        old_v, v = v, old_v - q * v
    if old_r < 0:
        old_r, old_u, old_v = -old_r, -old_u, -old_v
    return old_r, old_u, old_v


def _grid_raw(reps, tokens_of, crossing_vertex: int):
    V = len(reps)
    vertex = [0] * (6 * V)
    twin = [0] * (6 * V)
    nxt = [0] * (6 * V)
    toks: List[Tuple[str, ...]] = [()] * (6 * V)
    for v, (i, j) in enumerate(reps):
        for kk in range(6):
            d = 6 * v + kk
            vertex[d] = v
            nxt[d] = 6 * v + _CW_NEXT[kk]
        for kk, (sx, sy) in _STEP.items():
            w, t = tokens_of(i, j, sx, sy)
            d = 6 * v + kk
            r = 6 * w + _OPPOSITE[kk]
            twin[d] = r
            twin[r] = d
            toks[d] = t
            toks[r] = reverse_tokens(t)
    darts = [
        {"id": d, "vertex": vertex[d], "twin": twin[d], "next_cw": nxt[d], "tokens": list(toks[d])}
        for d in range(6 * V)
    ]
    return {"vertices": list(range(V)), "darts": darts, "crossing_face": 6 * crossing_vertex + _E}


def torus_grid(a: int, b: int) -> EmbeddedTorusGraph:
    """Triangulated ``a x b`` grid on the torus.

    The vertex set is ``Z_a x Z_b`` with edges E, N and NE; vertex
    ``(i, j)`` has id ``j * a + i`` and dart ``6 v + k`` leaves ``v``
    towards E, N, NE, W, S, SW for ``k = 0 .. 5``.  Columns close up
    straight (class ``(0, 1)``), while the horizontal wraparound shifts by
    one row: leaving column ``a - 1`` to the east arrives in column ``0``
    one row lower.  The lattice of identifications is spanned by ``(a, 1)``
    and ``(0, b)``.  With the straight lattice ``(a, 0), (0, b)`` no REL of
    this triangulation is orbital; the extra row shift makes the canonical
    REL orbital.
    """
    if a < 1 or b < 1:
        raise ValueError("grid dimensions must be positive")
    return _lattice_grid(a, b, 1, 0, {"kind": "grid", "a": a, "b": b, "k": 0})


def twisted_grid(a: int, b: int, k: int) -> EmbeddedTorusGraph:
    """:func:`torus_grid` whose vertical wraparound is shifted by ``k`` columns.

    The lattice is spanned by ``(a, 1)`` and ``(k, b)``, so the graph has
    ``a * b - k`` vertices.  ``twisted_grid(a, b, 0)`` equals
    ``torus_grid(a, b)``.  For ``k != 0`` the columns no longer close up
    with class ``(0, 1)`` and the canonical REL is slanted.
    """
    if a < 1 or b < 1:
        raise ValueError("grid dimensions must be positive")
    return _lattice_grid(a, b, 1, k, {"kind": "grid", "a": a, "b": b, "k": k})


def straight_grid(a: int, b: int, k: int = 0) -> EmbeddedTorusGraph:
    """Grid modulo the lattice spanned by ``(a, 0)`` and ``(k, b)``.

    With ``k = 0`` this is the plain rectangular torus grid.  Its canonical
    REL is always slanted.
    """
    return _lattice_grid(a, b, 0, k, {"kind": "grid", "a": a, "b": b, "k": k, "straight": True})


def grid_canonical_rel(g) -> RegularEdgeLabeling:
    """Vertical edges blue upwards, horizontal and diagonal edges red rightwards."""
    meta = getattr(g, "meta", {})
    if meta.get("kind") != "grid":
        raise ValueError("grid_canonical_rel needs a graph from torus_grid or twisted_grid")
    fwd = {}
    for v in g.vertices:
        fwd[6 * v + _N] = BLUE
        fwd[6 * v + _E] = RED
        fwd[6 * v + _NE] = RED
    return RegularEdgeLabeling(g, fwd)


# ----------------------------------------------------------------------
# small hand-made instances


def three_loop_torus() -> EmbeddedTorusGraph:
    """One vertex with loops of classes ``(0,1)``, ``(1,0)``, ``(1,1)``.

    Edge 0 (darts 0, 1) is the vertical loop, edge 1 (darts 2, 3) the
    horizontal one, edge 2 (darts 4, 5) the diagonal one.
    """
    return geometric_torus_graph(
        {0: ("3/10", "6/10")}, [(0, 0, (0, 1)), (0, 0, (1, 0)), (0, 0, (1, 1))]
    )


def three_loop_rel(g) -> RegularEdgeLabeling:
    return RegularEdgeLabeling(g, {0: BLUE, 2: RED, 4: RED})


def single_loop_map():
    """Raw combinatorial map of one vertex with one loop (not cellular)."""
    from .graph import EmbeddedGraph

    g = EmbeddedGraph([0], [0, 0], [1, 0], [1, 0], [("+H",), ("-H",)])
    g._derive()
    return g


def stacked_rings(c: int, k: int) -> EmbeddedCylinderGraph:
    """``k`` rings of ``c`` vertices stacked on the cylinder.

    Ring ``r`` vertex ``i`` has id ``r * c + i``.  Consecutive rings are
    joined by vertical edges ``(r, i) - (r + 1, i)`` and diagonals
    ``(r, i) - (r + 1, i + 1)``.  For ``c = 2`` the rings are parallel
    pairs.
    """
    if c < 1 or k < 1:
        raise ValueError("stacked_rings needs c >= 1 and k >= 1")
    pos = {}
    edges = []
    for r in range(k):
        for i in range(c):
            pos[r * c + i] = (Fraction(3 * i + 1, 3 * c) + Fraction(r, 7 * c), Fraction(2 * r + 1, 2 * k))
    for r in range(k):
        for i in range(c):
            v = r * c + i
            w = r * c + (i + 1) % c
            edges.append((v, w, (1 if i == c - 1 else 0, 0)))
            if r + 1 < k:
                up = (r + 1) * c + i
                edges.append((v, up, (0, 0)))
                diag = (r + 1) * c + (i + 1) % c
                edges.append((v, diag, (1 if i == c - 1 else 0, 0)))
    g = geometric_cylinder_graph(pos, edges)
    g.meta = {"kind": "rings", "c": c, "k": k}
    return g


def loop_vertex_cylinder(ell: int = 3) -> EmbeddedCylinderGraph:
    """Vertex ``0`` with a loop bounding ``f_s`` below a ring ``1..ell``.

    Every ring vertex is joined to ``0``; ring vertex ``1`` twice (once
    around the cylinder), closing the strip between the loop and the ring
    into triangles.
    """
    pos = {0: (Fraction(1, 2) + Fraction(1, 97), Fraction(1, 4))}
    edges = [(0, 0, (1, 0))]
    for i in range(1, ell + 1):
        pos[i] = (Fraction(2 * i - 1, 2 * ell), Fraction(3, 4))
    for i in range(1, ell + 1):
        nxt = i % ell + 1
        edges.append((i, nxt, (1 if i == ell else 0, 0)))
    for i in range(1, ell + 1):
        edges.append((0, i, (0, 0)))
    edges.append((0, 1, (1, 0)))
    g = geometric_cylinder_graph(pos, edges)
    g.meta = {"kind": "loop_vertex", "ell": ell}
    return g


def enclosing_pair_cylinder() -> EmbeddedCylinderGraph:
    """Two parallel-pair rings above a triangle ring.

    ``f_t`` is bounded by the parallel pair on ``{5, 6}``, directly above
    the parallel pair on ``{3, 4}``; the bottom ring is ``{0, 1, 2}``.
    """
    pos = {
        0: (Fraction(1, 7), Fraction(1, 8)),
        1: (Fraction(3, 7), Fraction(1, 8)),
        2: (Fraction(5, 7), Fraction(1, 8)),
        3: (Fraction(1, 5), Fraction(1, 2)),
        4: (Fraction(7, 10), Fraction(1, 2)),
        5: (Fraction(3, 10), Fraction(7, 8)),
        6: (Fraction(4, 5), Fraction(7, 8)),
    }
    edges = [
        (0, 1, (0, 0)), (1, 2, (0, 0)), (2, 0, (1, 0)),
        (3, 4, (0, 0)), (4, 3, (1, 0)),
        (5, 6, (0, 0)), (6, 5, (1, 0)),
        (0, 3, (0, 0)), (1, 3, (0, 0)), (1, 4, (0, 0)), (2, 4, (0, 0)), (2, 3, (1, 0)),
        (3, 5, (0, 0)), (4, 5, (0, 0)), (4, 6, (0, 0)), (3, 6, (-1, 0)),
    ]
    g = geometric_cylinder_graph(pos, edges)
    g.meta = {"kind": "enclosing_pair"}
    return g


def degree_violation_cylinder() -> EmbeddedCylinderGraph:
    """Low-degree vertex ``1`` between two looped vertices.

    Vertex ``0`` carries a loop bounding ``f_s``, vertex ``2`` a loop
    bounding ``f_t``; ``1`` has parallel edges to both and degree 4, so the
    degree condition fails.
    """
    pos = {
        0: (Fraction(1, 2), Fraction(1, 6)),
        1: (Fraction(1, 2), Fraction(1, 2)),
        2: (Fraction(1, 2), Fraction(5, 6)),
    }
    edges = [
        (0, 0, (1, 0)),
        (2, 2, (1, 0)),
        (0, 1, (0, 0)),
        (0, 1, (1, 0)),
        (1, 2, (0, 0)),
        (1, 2, (1, 0)),
        (0, 2, (1, 0)),
    ]
    return geometric_cylinder_graph(pos, edges)
