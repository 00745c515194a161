"""
Dart-based embedded multigraphs on the flat torus and the flat cylinder.

A graph is stored as a combinatorial map.  Darts are the integers
``0 .. D-1``; every dart has an origin vertex, a twin (the same edge in the
other direction) and the next dart clockwise around its origin.  Instead of
planarizing the graph with the orbit curves we keep, per dart, the ordered
list of orbit tokens met while walking along the edge from its origin.
Token ``"+M"`` means the meridian is crossed from left to right, ``"+H"``
that the horizon is crossed from bottom to top.

Universal-cover bookkeeping
---------------------------
Fix for every vertex ``v`` a canonical lift ``v^0``; the lift shifted by the
deck translation ``tau = (m, h)`` is ``v^tau``.  A dart ``d`` leaving
``v^tau`` ends at ``w^(tau + delta(d))`` where ``delta(d)`` is the class of
its token list.  Faces are traversed with the face on the left
(``next = next_cw(twin(d))``) and anchored at their smallest dart; the lift
``f^sigma`` of a face is the one whose anchor starts at
``tail(anchor)^sigma``.  ``offset(d)`` is the token sum of the face walk
before ``d``, so the face to the left of ``d`` leaving ``v^tau`` is
``f^(tau - offset(d))``.
"""

from __future__ import annotations

from array import array
from collections import defaultdict
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .errors import (
    NotClosed,
    Report,
    Violation,
    raise_validation,
)
from .homotopy import HomotopyClass, class_of_tokens

__all__ = [
    "TOKENS",
    "EmbeddedGraph",
    "EmbeddedTorusGraph",
    "EmbeddedCylinderGraph",
    "build_torus_graph",
    "build_cylinder_graph",
    "faces",
    "walk_homotopy",
    "is_ptt",
    "is_ptc",
    "reverse_tokens",
]

TOKENS = ("+M", "-M", "+H", "-H")
_FLIP = {"+M": "-M", "-M": "+M", "+H": "-H", "-H": "+H"}


def _packed(values: List[int]):
    """``values`` as a machine-integer array, or the list itself if too wide."""
    try:
        return array("q", values)
    except OverflowError:
        return values


def reverse_tokens(tokens: Sequence[str]) -> Tuple[str, ...]:
    """Token list of the twin: reversed order, flipped signs."""
    return tuple(_FLIP[t] for t in reversed(tokens))


class EmbeddedGraph:
    """Common part of torus and cylinder graphs.

    Instances are created by :func:`build_torus_graph` or
    :func:`build_cylinder_graph`, which validate the input first.  All
    attributes are treated as immutable afterwards.

    Attributes
    ----------
    vertices : tuple of int
        Sorted vertex ids.
    vertex, twin, next_cw : list of int
        Per-dart arrays.
    tokens : list of tuple of str
        Per-dart orbit token lists.
    """

    surface = "abstract"

    def __init__(self, vertices, vertex, twin, next_cw, tokens):
        self.vertices: Tuple[int, ...] = tuple(sorted(vertices))
        self.vertex: List[int] = list(vertex)
        self.twin: List[int] = list(twin)
        self.next_cw: List[int] = list(next_cw)
        self.tokens: List[Tuple[str, ...]] = [tuple(t) for t in tokens]
        self._derived = False

    # ------------------------------------------------------------------
    # derived structure
    def _derive(self) -> None:
        n = len(self.vertex)
        dm = [0] * n
        dh = [0] * n
        for d, toks in enumerate(self.tokens):
            if toks:
                m = h = 0
                for t in toks:
                    if t == "+M":
                        m += 1
                    elif t == "-M":
                        m -= 1
                    elif t == "+H":
                        h += 1
                    else:
                        h -= 1
                dm[d] = m
                dh[d] = h
        self.dm = dm
        self.dh = dh
        prev = [0] * n
        for d, e in enumerate(self.next_cw):
            prev[e] = d
        self.prev_cw = prev
        face_of = [-1] * n
        om = [0] * n
        oh = [0] * n
        walks: List[List[int]] = []
        twin = self.twin
        nxt = self.next_cw
        for start in range(n):
            if face_of[start] >= 0:
                continue
            fid = len(walks)
            walk = []
            d = start
            m = h = 0
            while face_of[d] < 0:
                face_of[d] = fid
                om[d] = m
                oh[d] = h
                m += dm[d]
                h += dh[d]
                walk.append(d)
                d = nxt[twin[d]]
            walks.append(walk)
        self.heads = [self.vertex[t] for t in twin]
        self.face_of = face_of
        self.face_walks = walks
        self.off_m = om
        self.off_h = oh
        first: Dict[int, int] = {}
        for d in range(n):
            v = self.vertex[d]
            if v not in first:
                first[v] = d
        self._first_dart = first
        # packed copies of the per-dart tables for the linear-time passes in
        # rel: large inputs stay cache resident instead of chasing pointers
        self.packed_vertex = _packed(self.vertex)
        self.packed_heads = _packed(self.heads)
        self.packed_next_cw = _packed(self.next_cw)
        self.packed_prev_cw = _packed(prev)
        self._derived = True

    @property
    def num_darts(self) -> int:
        return len(self.vertex)

    @property
    def num_edges(self) -> int:
        return len(self.vertex) // 2

    @property
    def num_faces(self) -> int:
        return len(self.face_walks)

    def head(self, d: int) -> int:
        return self.vertex[self.twin[d]]

    def tail(self, d: int) -> int:
        return self.vertex[d]

    def delta(self, d: int) -> HomotopyClass:
        return HomotopyClass(self.dm[d], self.dh[d])

    def offset(self, d: int) -> Tuple[int, int]:
        return (self.off_m[d], self.off_h[d])

    def face_next(self, d: int) -> int:
        """Next dart along the face to the left of ``d``."""
        return self.next_cw[self.twin[d]]

    def edge_id(self, d: int) -> int:
        """Canonical id of the undirected edge of ``d`` (smaller dart)."""
        t = self.twin[d]
        return d if d < t else t

    def edges(self) -> List[int]:
        return [d for d in range(self.num_darts) if d < self.twin[d]]

    def darts_at(self, v: int) -> List[int]:
        """Darts leaving ``v`` in clockwise order, starting at the smallest."""
        first = self._first_dart.get(v)
        if first is None:
            return []
        out = [first]
        d = self.next_cw[first]
        while d != first:
            out.append(d)
            d = self.next_cw[d]
        return out

    def degree(self, v: int) -> int:
        return len(self.darts_at(v))

    def is_loop(self, d: int) -> bool:
        return self.vertex[d] == self.vertex[self.twin[d]]

    def face_class(self, f: int) -> HomotopyClass:
        m = h = 0
        for d in self.face_walks[f]:
            m += self.dm[d]
            h += self.dh[d]
        return HomotopyClass(m, h)

    def face_vertices(self, f: int) -> List[int]:
        return [self.vertex[d] for d in self.face_walks[f]]

    def across(self, d: int) -> Tuple[int, int]:
        """Lift shift from the face left of ``d`` to the face right of it.

        If the face left of ``d`` is taken at lift ``sigma``, the face on
        the other side (left of ``twin(d)``) is at ``sigma + across(d)``.
        """
        t = self.twin[d]
        return (
            self.off_m[d] + self.dm[d] - self.off_m[t],
            self.off_h[d] + self.dh[d] - self.off_h[t],
        )

    def sector_face(self, d: int) -> int:
        """Face occupying the angle from ``d`` clockwise to ``next_cw(d)``."""
        return self.face_of[self.next_cw[d]]

    def to_raw(self) -> dict:
        darts = [
            {
                "id": d,
                "twin": self.twin[d],
                "vertex": self.vertex[d],
                "next_cw": self.next_cw[d],
                "tokens": list(self.tokens[d]),
            }
            for d in range(self.num_darts)
        ]
        return {"surface": self.surface, "vertices": list(self.vertices), "darts": darts}

    def __eq__(self, other):
        return type(self) is type(other) and self.to_raw() == other.to_raw()

    def __hash__(self):
        return id(self)

    def __repr__(self) -> str:
        return (
            f"<{type(self).__name__} V={len(self.vertices)} E={self.num_edges} "
            f"F={self.num_faces}>"
        )


class EmbeddedTorusGraph(EmbeddedGraph):
    """Graph cellularly embedded on the flat torus.

    Attributes
    ----------
    crossing_face : int
        Anchor dart of the face containing the crossing point of ``M`` and
        ``H``.  The face to the left of this dart, taken at lift ``(0, 0)``
        relative to its tail, is the face where the canonical copies of the
        orbit curves meet.
    """

    surface = "torus"

    def __init__(self, vertices, vertex, twin, next_cw, tokens, crossing_face: int):
        super().__init__(vertices, vertex, twin, next_cw, tokens)
        self.crossing_face = int(crossing_face)

    def to_raw(self) -> dict:
        raw = super().to_raw()
        raw["crossing_face"] = self.crossing_face
        return raw


class EmbeddedCylinderGraph(EmbeddedGraph):
    """Graph embedded on the flat cylinder with two marked outer faces.

    Only ``"+M"`` / ``"-M"`` tokens are used; they record crossings of a
    fixed seam running from one boundary of the cylinder to the other.  A
    closed walk is non-contractible iff its seam count ``m`` is non-zero.

    Attributes
    ----------
    outer_faces : tuple of int
        Anchor darts ``(f_s, f_t)`` of the bottom and top outer face.
    """

    surface = "cylinder"

    def __init__(self, vertices, vertex, twin, next_cw, tokens, outer_faces):
        super().__init__(vertices, vertex, twin, next_cw, tokens)
        self.outer_faces = (int(outer_faces[0]), int(outer_faces[1]))

    @property
    def f_s(self) -> int:
        return self.face_of[self.outer_faces[0]]

    @property
    def f_t(self) -> int:
        return self.face_of[self.outer_faces[1]]

    def is_outer(self, f: int) -> bool:
        return f == self.f_s or f == self.f_t

    def to_raw(self) -> dict:
        raw = super().to_raw()
        raw["outer_faces"] = list(self.outer_faces)
        return raw


# ----------------------------------------------------------------------
# construction and validation


def _read_darts(raw: Mapping) -> Tuple[list, list, list, list, list, List[Violation]]:
    problems: List[Violation] = []
    darts = list(raw.get("darts", []))
    n = len(darts)
    vertex = [0] * n
    twin = [0] * n
    nxt = [0] * n
    toks: List[Tuple[str, ...]] = [()] * n
    seen = set()
    for k, rec in enumerate(darts):
        if isinstance(rec, Mapping):
            did = rec.get("id", k)
            fields = (rec.get("vertex"), rec.get("twin"), rec.get("next_cw"), rec.get("tokens", []))
        else:
            did = k
            fields = tuple(rec) + ((),) * (4 - len(rec))
        if not isinstance(did, int) or not 0 <= did < n or did in seen:
            problems.append(Violation("InvalidDart", f"dart ids must be 0..{n - 1}, got {did!r}", did))
            continue
        seen.add(did)
        v, t, c, tk = fields
        vertex[did] = v
        twin[did] = t
        nxt[did] = c
        toks[did] = tuple(tk or ())
    return darts, vertex, twin, nxt, toks, problems


def _validate_common(vertices, vertex, twin, nxt, toks) -> List[Violation]:
    problems: List[Violation] = []
    n = len(vertex)
    vset = set(vertices)
    if len(vset) != len(list(vertices)):
        problems.append(Violation("InvalidVertex", "duplicate vertex ids"))
    for d in range(n):
        if vertex[d] not in vset:
            problems.append(Violation("InvalidVertex", f"dart {d} has unknown origin {vertex[d]!r}", d))
        for name, arr in (("twin", twin), ("next_cw", nxt)):
            x = arr[d]
            if not isinstance(x, int) or not 0 <= x < n:
                problems.append(Violation("InvalidDart", f"dart {d}: {name} {x!r} is not a dart id", d))
        for t in toks[d]:
            if t not in _FLIP:
                problems.append(Violation("InvalidToken", f"dart {d}: unknown token {t!r}", d))
    if problems:
        return problems
    for d in range(n):
        t = twin[d]
        if t == d or twin[t] != d:
            problems.append(Violation("NonInvolutiveTwin", f"twin of dart {d} is {t}, whose twin is {twin[t]}", d))
    image = set()
    for d in range(n):
        c = nxt[d]
        if vertex[c] != vertex[d]:
            problems.append(
                Violation("InvalidRotation", f"next_cw({d}) = {c} leaves a different vertex", d)
            )
        image.add(c)
    if len(image) != n:
        problems.append(Violation("InvalidRotation", "next_cw is not a permutation"))
    if problems:
        return problems
    per_vertex = defaultdict(int)
    for d in range(n):
        per_vertex[vertex[d]] += 1
    visited = [False] * n
    for d in range(n):
        if visited[d]:
            continue
        v = vertex[d]
        k = 0
        e = d
        while not visited[e]:
            visited[e] = True
            k += 1
            e = nxt[e]
        if k != per_vertex[v]:
            problems.append(
                Violation("InvalidRotation", f"rotation at vertex {v} splits into several cycles", v)
            )
            per_vertex[v] = -1
    for d in range(n):
        t = twin[d]
        if d < t and toks[t] != reverse_tokens(toks[d]):
            problems.append(
                Violation(
                    "TokenMismatch",
                    f"tokens of dart {t} are not the reversed, negated tokens of its twin {d}",
                    d,
                )
            )
    isolated = [v for v in vertices if per_vertex.get(v, 0) == 0]
    if isolated and len(vset) > 1:
        problems.append(Violation("DisconnectedGraph", f"isolated vertices {isolated[:10]}", isolated[0]))
    elif n:
        adj = defaultdict(list)
        for d in range(n):
            adj[vertex[d]].append(vertex[twin[d]])
        start = vertex[0]
        seen = {start}
        stack = [start]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) != len(vset):
            missing = sorted(vset - seen)
            problems.append(
                Violation("DisconnectedGraph", f"vertices {missing[:10]} unreachable from {start}", missing[0])
            )
    return problems


def build_torus_graph(raw: Mapping) -> EmbeddedTorusGraph:
    """Validate a raw description and return a torus graph.

    Parameters
    ----------
    raw : mapping
        ``{"vertices": [...], "darts": [...], "crossing_face": d}`` where
        every dart is a mapping with keys ``id``, ``vertex``, ``twin``,
        ``next_cw`` and ``tokens``, or a tuple
        ``(vertex, twin, next_cw, tokens)`` indexed by position.

    Raises
    ------
    GraphValidationError
        Listing every violated invariant.  The concrete subclass
        (``NonInvolutiveTwin``, ``EulerMismatch``, ``TokenMismatch``,
        ``DisconnectedGraph``, ...) names the first violation.
    """
    _, vertex, twin, nxt, toks, problems = _read_darts(raw)
    vertices = list(raw.get("vertices", sorted(set(vertex))))
    if not problems:
        problems = _validate_common(vertices, vertex, twin, nxt, toks)
    cf = raw.get("crossing_face")
    if not isinstance(cf, int) or not 0 <= cf < len(vertex):
        problems.append(Violation("InvalidCrossingFace", f"crossing face anchor {cf!r} is not a dart"))
    raise_validation(problems)
    g = EmbeddedTorusGraph(vertices, vertex, twin, nxt, toks, cf)
    g._derive()
    problems = []
    V, E, F = len(g.vertices), g.num_edges, g.num_faces
    if V - E + F != 0:
        problems.append(Violation("EulerMismatch", f"V - E + F = {V} - {E} + {F} = {V - E + F}, expected 0"))
    for f in range(F):
        c = g.face_class(f)
        if not c.is_contractible:
            problems.append(Violation("FaceClassMismatch", f"face {f} has class {c.as_tuple()}", f))
    raise_validation(problems)
    return g


def build_cylinder_graph(raw: Mapping) -> EmbeddedCylinderGraph:
    """Validate a raw description and return a cylinder graph.

    Same format as :func:`build_torus_graph` with ``"outer_faces": [s, t]``
    (anchor darts of the bottom and top outer face) instead of a crossing
    face.  Tokens may only be ``"+M"`` and ``"-M"``.
    """
    _, vertex, twin, nxt, toks, problems = _read_darts(raw)
    vertices = list(raw.get("vertices", sorted(set(vertex))))
    if not problems:
        problems = _validate_common(vertices, vertex, twin, nxt, toks)
        for d, tk in enumerate(toks):
            if any(t in ("+H", "-H") for t in tk):
                problems.append(Violation("InvalidToken", f"dart {d}: cylinder graphs use M tokens only", d))
    of = raw.get("outer_faces")
    n = len(vertex)
    if not isinstance(of, (list, tuple)) or len(of) != 2 or not all(isinstance(x, int) and 0 <= x < n for x in of):
        problems.append(Violation("InvalidOuterFaces", f"outer_faces must be two dart ids, got {of!r}"))
    raise_validation(problems)
    g = EmbeddedCylinderGraph(vertices, vertex, twin, nxt, toks, of)
    g._derive()
    problems = []
    if g.f_s == g.f_t:
        problems.append(Violation("InvalidOuterFaces", "the two outer faces coincide"))
    V, E, F = len(g.vertices), g.num_edges, g.num_faces
    if V - E + F != 2:
        problems.append(Violation("EulerMismatch", f"V - E + F = {V} - {E} + {F} = {V - E + F}, expected 2"))
    for f in range(F):
        c = g.face_class(f)
        if g.is_outer(f):
            if c.m == 0:
                problems.append(Violation("FaceClassMismatch", f"outer face {f} does not wind around the cylinder", f))
        elif c.m != 0:
            problems.append(Violation("FaceClassMismatch", f"inner face {f} winds around the cylinder", f))
    raise_validation(problems)
    return g


def faces(g: EmbeddedGraph) -> List[List[int]]:
    """Face boundary walks, each with the face on its left.

    Every dart appears in exactly one walk; walks start at their smallest
    dart and are listed in order of that dart.
    """
    return [list(w) for w in g.face_walks]


def walk_homotopy(g: EmbeddedGraph, walk) -> HomotopyClass:
    """Homotopy class of a closed walk given as darts.

    Raises
    ------
    NotClosed
        If consecutive darts do not connect or the walk does not return to
        its start.
    """
    darts = list(getattr(walk, "darts", walk))
    if not darts:
        raise NotClosed("empty walk")
    n = len(darts)
    m = h = 0
    for k, d in enumerate(darts):
        if not 0 <= d < g.num_darts:
            raise NotClosed(f"dart {d!r} is not in the graph")
        nd = darts[(k + 1) % n]
        if g.head(d) != g.vertex[nd]:
            raise NotClosed(f"dart {d} ends at {g.head(d)} but dart {nd} starts at {g.vertex[nd]}")
        m += g.dm[d]
        h += g.dh[d]
    return HomotopyClass(m, h)


# ----------------------------------------------------------------------
# short closed walks


def _short_walks(g: EmbeddedGraph):
    """Yield closed walks with 1, 2 or 3 darts on pairwise distinct edges.

    Each cyclic walk is reported once per starting dart and orientation;
    callers deduplicate when needed.
    """
    out_by_vertex = {v: g.darts_at(v) for v in g.vertices}
    head = g.head
    eid = g.edge_id
    for d1 in range(g.num_darts):
        u = g.vertex[d1]
        v = head(d1)
        e1 = eid(d1)
        if v == u:
            yield (d1,)
        for d2 in out_by_vertex[v]:
            e2 = eid(d2)
            if e2 == e1:
                continue
            w = head(d2)
            if w == u:
                yield (d1, d2)
            for d3 in out_by_vertex[w]:
                if head(d3) != u:
                    continue
                e3 = eid(d3)
                if e3 == e1 or e3 == e2:
                    continue
                yield (d1, d2, d3)


def _canonical_cycle(darts: Tuple[int, ...]) -> Tuple[int, ...]:
    k = darts.index(min(darts))
    return darts[k:] + darts[:k]


def _face_cycles(g: EmbeddedGraph) -> set:
    return {_canonical_cycle(tuple(w)) for w in g.face_walks}


def _bounds_face(g, walk, face_set) -> bool:
    if _canonical_cycle(walk) in face_set:
        return True
    rev = tuple(g.twin[d] for d in reversed(walk))
    return _canonical_cycle(rev) in face_set


def is_ptt(g: EmbeddedTorusGraph) -> Report:
    """Check whether ``g`` is a properly triangulated toroidal graph.

    Checks
    ------
    (a) every face is a triangle (a walk of three darts);
    (b) every loop is non-contractible;
    (c) every two-edge closed walk (parallel pair, or two loops at a
        vertex) is non-contractible;
    (d) every contractible three-edge closed walk bounds a face.

    Returns
    -------
    Report
        Violations carry codes ``"a"`` to ``"d"``.
    """
    rep = Report("is_ptt")
    for f, w in enumerate(g.face_walks):
        if len(w) != 3:
            rep.add("a", f"face {f} has {len(w)} sides", f)
    face_set = _face_cycles(g)
    seen = set()
    for walk in _short_walks(g):
        k = len(walk)
        m = h = 0
        for d in walk:
            m += g.dm[d]
            h += g.dh[d]
        if m or h:
            continue
        key = _canonical_cycle(walk)
        rkey = _canonical_cycle(tuple(g.twin[d] for d in reversed(walk)))
        if key in seen or rkey in seen:
            continue
        seen.add(key)
        if k == 1:
            rep.add("b", f"loop {g.edge_id(walk[0])} is contractible", g.edge_id(walk[0]))
        elif k == 2:
            rep.add("c", f"edges {sorted(g.edge_id(d) for d in walk)} form a contractible 2-cycle", key)
        elif not _bounds_face(g, walk, face_set):
            rep.add("d", f"contractible triangle {key} is not a face", key)
    return rep


def is_ptc(g: EmbeddedCylinderGraph) -> Report:
    """Check whether ``g`` is a properly triangulated cylindrical graph.

    Non-contractible on the cylinder means winding around it (non-zero seam
    count).  Violation codes:

    ``"triangulated"``
        an inner face is not a triangle;
    ``"loop"``, ``"parallel"``, ``"triangle"``
        a contractible loop, parallel pair or separating triangle;
    ``"outer_simple"``, ``"chord"``
        an outer face repeats a vertex or has a chord;
    ``"degree"``
        the degree condition at a vertex with parallel edges to a looped
        neighbour fails.
    """
    rep = Report("is_ptc")
    fs, ft = g.f_s, g.f_t
    for f, w in enumerate(g.face_walks):
        if f in (fs, ft):
            continue
        if len(w) != 3:
            rep.add("triangulated", f"inner face {f} has {len(w)} sides", f)
    face_set = {_canonical_cycle(tuple(w)) for f, w in enumerate(g.face_walks) if f not in (fs, ft)}
    seen = set()
    for walk in _short_walks(g):
        m = sum(g.dm[d] for d in walk)
        if m:
            continue
        key = _canonical_cycle(walk)
        rkey = _canonical_cycle(tuple(g.twin[d] for d in reversed(walk)))
        if key in seen or rkey in seen:
            continue
        seen.add(key)
        if len(walk) == 1:
            rep.add("loop", f"loop {g.edge_id(walk[0])} is contractible", g.edge_id(walk[0]))
        elif len(walk) == 2:
            rep.add("parallel", f"edges {sorted(g.edge_id(d) for d in walk)} form a contractible 2-cycle", key)
        elif not _bounds_face(g, walk, face_set):
            rep.add("triangle", f"contractible triangle {key} is not an inner face", key)
    for f in (fs, ft):
        walk = g.face_walks[f]
        verts = [g.vertex[d] for d in walk]
        if len(set(verts)) != len(verts):
            rep.add("outer_simple", f"outer face {f} visits a vertex twice", f)
        on_face = set(verts)
        boundary = {g.edge_id(d) for d in walk}
        for e in g.edges():
            if e in boundary:
                continue
            if g.vertex[e] in on_face and g.head(e) in on_face:
                rep.add("chord", f"edge {e} is a chord of outer face {f}", e)
    looped = {g.vertex[d] for d in range(g.num_darts) if g.is_loop(d)}
    on_outer = set(g.face_vertices(fs)) | set(g.face_vertices(ft))
    mult: Dict[int, Dict[int, int]] = defaultdict(lambda: defaultdict(int))
    for e in g.edges():
        a, b = g.vertex[e], g.head(e)
        if a != b:
            mult[a][b] += 1
            mult[b][a] += 1
    for u in g.vertices:
        partners = {v for v, k in mult[u].items() if k >= 2 and v in looped}
        if not partners:
            continue
        deg = g.degree(u)
        nbrs = {g.head(d) for d in g.darts_at(u)} - {u}
        ok = deg >= 4 and (
            u in on_outer or deg >= 6 or (deg == 5 and any(w not in looped for w in nbrs))
        )
        if not ok:
            rep.add("degree", f"vertex {u} of degree {deg} has parallel edges to looped {sorted(partners)}", u)
    V, E, F = len(g.vertices), g.num_edges, g.num_faces
    if V - E + F != 2:
        rep.add("euler", f"V - E + F = {V - E + F}")
    return rep
