"""
Rectangular duals on the flat cylinder.

The pipeline has three stages.

1. :func:`cylindrical_rel` peels vertex sets off the top outer face
   ``f_t`` until only the bottom face ``f_s`` is left.  Peeled edges on
   ``f_t`` become red (left to right), every other edge at a peeled set
   becomes blue and points into the set, and the final cycle is red.
2. :func:`extend_to_torus` closes the cylinder into a torus with two
   framing vertices ``v_t`` (above ``f_t``) and ``v_s`` (below ``f_s``),
   each carrying a red loop, joined by two blue edges.  The meridian is
   then redrawn along a simple blue cycle through ``v_t`` built from the
   left-first and right-first cycles there, which makes the extended REL
   orbital.
3. :func:`build_cylindrical_dual` runs the orbital construction and cuts
   the framing rectangles away.

Throughout, the vertices of ``f_t`` are read in the order of its face walk,
which runs left to right along the top boundary of the strip.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .cycles import combine_cycles
from .errors import GraphValidationError, NoProgress, NotPTC, PreconditionViolation
from .graph import EmbeddedCylinderGraph, build_cylinder_graph, build_torus_graph, is_ptc, reverse_tokens
from .homotopy import algebraic_crossing
from .labeling import BLUE, RED, RegularEdgeLabeling
from .rel import (
    classify,
    is_realizable,
    left_first_cycle,
    right_first_cycle,
    strongly_connected_components,
    validate_cylindrical_rel,
    validate_toroidal_rel,
)
from .walks import ClosedWalk

__all__ = [
    "RemovableSet",
    "find_removable_set",
    "delete_vertices",
    "cylindrical_rel",
    "check_peeling_properties",
    "Extension",
    "extend_to_torus",
    "build_cylindrical_dual",
]

SINGLETON = "singleton"
FAN = "fan"
LOOP_NEIGHBORHOOD = "loop_neighborhood"
ENCLOSING_PAIR = "enclosing_parallel_pair"


@dataclass
class RemovableSet:
    """A set ``V'`` of top-face vertices whose removal keeps the graph PTC.

    Attributes
    ----------
    kind : str
        ``"singleton"``, ``"fan"``, ``"loop_neighborhood"`` or
        ``"enclosing_parallel_pair"``.
    vertices : list of int
        ``z_1 .. z_k`` in the order of the face walk of ``f_t``.
    attachments : tuple of int or None
        ``(c_i, c_j)``: the top-face neighbours before ``z_1`` and after
        ``z_k`` when ``V'`` is not the whole top face.
    remainder : EmbeddedCylinderGraph
        ``g`` without ``V'``, already checked to be PTC.
    dart_map : list of int
        Dart of ``g`` for every dart of ``remainder``.
    """

    kind: str
    vertices: List[int]
    attachments: Optional[Tuple[int, int]] = None
    remainder: Optional[EmbeddedCylinderGraph] = field(default=None, repr=False)
    dart_map: Optional[List[int]] = field(default=None, repr=False)

    @property
    def whole_face(self) -> bool:
        return self.attachments is None


def delete_vertices(g: EmbeddedCylinderGraph, removed) -> Tuple[EmbeddedCylinderGraph, List[int]]:
    """Remove top-face vertices; the faces around them merge into the new ``f_t``.

    Returns
    -------
    (EmbeddedCylinderGraph, list of int)
        The smaller graph and, for each of its darts, the dart of ``g``.

    Raises
    ------
    GraphValidationError
        If the remainder is not a valid cylinder graph.
    PreconditionViolation
        If a removed vertex lies on ``f_s`` or nothing survives.
    """
    removed = set(removed)
    if removed & set(g.face_vertices(g.f_s)):
        raise PreconditionViolation("cannot delete vertices of f_s")
    keep = [d for d in range(g.num_darts) if g.vertex[d] not in removed and g.head(d) not in removed]
    if not keep:
        raise PreconditionViolation("nothing survives the deletion")
    new_id = {d: k for k, d in enumerate(keep)}
    alive = set(keep)
    anchor_t = None
    darts = []
    for d in keep:
        e = g.next_cw[d]
        while e not in alive:
            e = g.next_cw[e]
        darts.append(
            {"id": new_id[d], "vertex": g.vertex[d], "twin": new_id[g.twin[d]], "next_cw": new_id[e], "tokens": list(g.tokens[d])}
        )
    for d in keep:
        p = g.prev_cw[d]
        if p not in alive and anchor_t is None:
            anchor_t = new_id[d]
    if anchor_t is None:
        anchor_t = new_id[g.outer_faces[1]] if g.outer_faces[1] in alive else None
    if anchor_t is None:
        raise PreconditionViolation("no dart borders the merged top face")
    raw = {
        "vertices": [v for v in g.vertices if v not in removed],
        "darts": darts,
        "outer_faces": [new_id[g.outer_faces[0]], anchor_t],
    }
    return build_cylinder_graph(raw), keep


def _try(g, kind, verts, attachments) -> Optional[RemovableSet]:
    try:
        rest, dmap = delete_vertices(g, verts)
    except (GraphValidationError, PreconditionViolation):
        return None
    if not is_ptc(rest).ok:
        return None
    return RemovableSet(kind, list(verts), attachments, rest, dmap)


def _multiplicity(g) -> Dict[Tuple[int, int], int]:
    mult: Dict[Tuple[int, int], int] = {}
    for e in g.edges():
        a, b = g.vertex[e], g.head(e)
        key = (min(a, b), max(a, b))
        mult[key] = mult.get(key, 0) + 1
    return mult


def _candidates(g: EmbeddedCylinderGraph):
    """Candidate sets in the order of the case analysis."""
    walk = g.face_walks[g.f_t]
    top = [g.vertex[d] for d in walk]
    on_s = set(g.face_vertices(g.f_s))
    n = len(top)
    looped = {g.vertex[d] for d in range(g.num_darts) if g.is_loop(d)}
    disjoint = not (set(top) & on_s)
    # whole top face: loop neighbourhood
    if disjoint:
        common = None
        for c in top:
            nb = {g.head(d) for d in g.darts_at(c)}
            common = nb if common is None else common & nb
        for x in sorted((common or set()) & looped - set(top)):
            yield LOOP_NEIGHBORHOOD, top, None
            break
    # whole top face: enclosing parallel pair
    if disjoint and n == 2 and top[0] != top[1]:
        c1, c2 = top
        if g.degree(c1) == 4 and g.degree(c2) == 4:
            others = sorted({g.head(d) for c in top for d in g.darts_at(c)} - {c1, c2})
            mult = _multiplicity(g)
            if len(others) == 2 and mult.get((min(others), max(others)), 0) >= 2:
                yield ENCLOSING_PAIR, top, None
    # whole top face: a loop
    if n == 1 and top[0] not in on_s:
        yield SINGLETON, top, None
    if n < 2:
        return
    # singletons and fans along the top face
    for k in range(n):
        z = top[k]
        if z in on_s or g.degree(z) < 4:
            continue
        yield SINGLETON, [z], (top[k - 1], top[(k + 1) % n])
    eligible = [top[k] not in on_s and g.degree(top[k]) == 3 for k in range(n)]
    for length in range(n - 1, 0, -1):
        for k in range(n):
            idx = [(k + t) % n for t in range(length)]
            if all(eligible[t] for t in idx):
                verts = [top[t] for t in idx]
                if len(set(verts)) == len(verts):
                    yield FAN, verts, (top[k - 1], top[(k + length) % n])


def find_removable_set(g: EmbeddedCylinderGraph) -> RemovableSet:
    """Find ``V' ⊂ V(f_t)`` avoiding ``f_s`` whose removal leaves a PTC graph.

    Candidates are tried in the order loop neighbourhood, enclosing
    parallel pair, top-face loop, singletons of degree at least four, fans
    of degree-three vertices (longest first); the first one whose
    remainder passes :func:`~reldual.graph.is_ptc` is returned.

    Raises
    ------
    PreconditionViolation
        If ``g`` is not PTC or all its vertices lie on ``f_s``.
    NoProgress
        If no candidate works.
    """
    if not is_ptc(g).ok:
        raise PreconditionViolation("graph is not PTC")
    if set(g.face_vertices(g.f_s)) == set(g.vertices):
        raise PreconditionViolation("all vertices lie on f_s")
    tried = set()
    for kind, verts, att in _candidates(g):
        key = tuple(sorted(verts))
        if key in tried:
            continue
        tried.add(key)
        rs = _try(g, kind, verts, att)
        if rs is not None:
            return rs
    raise NoProgress("no removable set found")


# ----------------------------------------------------------------------
# peeling


def cylindrical_rel(g: EmbeddedCylinderGraph) -> RegularEdgeLabeling:
    """Cylindrical REL in which red edges lie on red cycles and blue is acyclic.

    Raises
    ------
    PreconditionViolation
        If ``g`` is not PTC.
    """
    rep = is_ptc(g)
    if not rep.ok:
        raise PreconditionViolation("graph is not PTC: " + "; ".join(v.message for v in rep.violations[:5]))
    fwd: Dict[int, int] = {}
    cur = g
    to_orig = list(range(g.num_darts))
    steps = []
    while set(cur.face_vertices(cur.f_s)) != set(cur.vertices):
        rs = find_removable_set(cur)
        steps.append((rs.kind, [v for v in rs.vertices]))
        vs = set(rs.vertices)
        walk = cur.face_walks[cur.f_t]
        red = {d for d in walk if cur.vertex[d] in vs or cur.head(d) in vs}
        for d in red:
            fwd[to_orig[d]] = RED
        for v in rs.vertices:
            for d in cur.darts_at(v):
                t = cur.twin[d]
                if d in red or t in red:
                    continue
                if cur.vertex[t] in vs:
                    raise AssertionError(f"edge of dart {d} joins two peeled vertices off the top face")
                fwd[to_orig[t]] = BLUE
        to_orig = [to_orig[d] for d in rs.dart_map]
        cur = rs.remainder
    walk = cur.face_walks[cur.f_t]
    if len(walk) != cur.num_edges:
        raise AssertionError("base case is not a single cycle")
    for d in walk:
        fwd[to_orig[d]] = RED
    rel = RegularEdgeLabeling(g, fwd)
    rel.peeling = steps
    return rel


def check_peeling_properties(g, rel) -> List[str]:
    """Problems with a cylindrical REL: validity, red cycles, blue acyclicity,
    blue sources on ``f_s`` and sinks on ``f_t``.  Empty if all hold."""
    problems = [v.message for v in validate_cylindrical_rel(g, rel).violations]
    vid = {v: k for k, v in enumerate(g.vertices)}
    for color in (RED, BLUE):
        adj: List[List[int]] = [[] for _ in g.vertices]
        fwd = []
        for d in range(g.num_darts):
            if rel.color[d] == color and rel.is_out[d]:
                a, b = vid[g.vertex[d]], vid[g.head(d)]
                adj[a].append(b)
                fwd.append((d, a, b))
        comp = strongly_connected_components(len(adj), adj)
        if color == RED:
            problems += [f"red dart {d} lies on no red cycle" for d, a, b in fwd if comp[a] != comp[b]]
        else:
            if len(set(comp)) != len(comp) or any(a == b for _, a, b in fwd):
                problems.append("blue subgraph has a directed cycle")
            has_in = {b for _, a, b in fwd}
            has_out = {a for _, a, b in fwd}
            on_s = set(g.face_vertices(g.f_s))
            on_t = set(g.face_vertices(g.f_t))
            for v in g.vertices:
                k = vid[v]
                if k not in has_in and v not in on_s:
                    problems.append(f"blue source {v} is not on f_s")
                if k not in has_out and v not in on_t:
                    problems.append(f"blue sink {v} is not on f_t")
    return problems


# ----------------------------------------------------------------------
# extension to the torus


@dataclass
class Extension:
    """Result of :func:`extend_to_torus`.

    Attributes
    ----------
    graph : EmbeddedTorusGraph
        Darts ``0 .. D-1`` are the darts of the cylinder graph.
    rel : RegularEdgeLabeling
    v_t, v_s : int
        Framing vertices; equal to a vertex of the cylinder graph when the
        corresponding outer face is a loop.
    reused : dict
        ``{"t": bool, "s": bool}``.
    meridian : ClosedWalk
        The blue cycle the meridian was redrawn along.
    flipped : bool
        Whether the seam orientation of the input had to be reversed.
    """

    graph: object
    rel: RegularEdgeLabeling
    v_t: int
    v_s: int
    reused: Dict[str, bool]
    meridian: ClosedWalk = field(repr=False)
    flipped: bool = False

    def __iter__(self):
        vmap = {v: v for v in self.graph.vertices}
        return iter((self.graph, self.rel, vmap))


def _face_lifts(g, walk) -> List[int]:
    """Seam offsets of the tails along an outer face walk."""
    out = [0]
    for d in walk[:-1]:
        out.append(out[-1] + g.dm[d])
    return out


_FLIP_M = {"+M": "-M", "-M": "+M"}


def _m_tokens(m: int) -> List[str]:
    return ["+M"] * m if m > 0 else ["-M"] * (-m)


def _rotate_walk(g, walk, total: int) -> List[int]:
    """Start an outer face walk right after a seam crossing, if there is one."""
    for k, d in enumerate(walk):
        if g.dm[d] == total:
            return walk[k + 1:] + walk[: k + 1]
    return list(walk)


def extend_to_torus(g: EmbeddedCylinderGraph, rel: RegularEdgeLabeling) -> Extension:
    """Close a cylindrical REL into an orbital toroidal REL.

    Raises
    ------
    PreconditionViolation
        If ``rel`` is not a valid cylindrical REL or an outer face does
        not wind around the cylinder exactly once.
    """
    rep = validate_cylindrical_rel(g, rel)
    if not rep.ok:
        raise PreconditionViolation("not a valid cylindrical REL: " + rep.violations[0].message)
    ft_walk = list(g.face_walks[g.f_t])
    fs_walk = list(g.face_walks[g.f_s])
    flip = g.face_class(g.f_t).m < 0
    sgn = -1 if flip else 1

    def dm(d):
        return sgn * g.dm[d]

    if abs(g.face_class(g.f_t).m) != 1 or abs(g.face_class(g.f_s).m) != 1:
        raise PreconditionViolation("outer faces must wind around the cylinder exactly once")
    D = g.num_darts
    vertex = list(g.vertex)
    twin = list(g.twin)
    nxt = list(g.next_cw)
    toks = [[_FLIP_M.get(t, t) if flip else t for t in g.tokens[d]] for d in range(D)]
    color = list(rel.color)
    is_out = list(rel.is_out)

    def new_edge(u, w, tokens, c):
        d = len(vertex)
        vertex.extend([u, w])
        twin.extend([d + 1, d])
        nxt.extend([None, None])
        toks.extend([list(tokens), list(reverse_tokens(tokens))])
        color.extend([c, c])
        is_out.extend([True, False])
        return d

    def insert_before(x, new):
        """Insert darts ``new`` (in clockwise order) just before dart ``x``."""
        p = x
        while nxt[p] != x:
            p = nxt[p]
        for d in new:
            nxt[p] = d
            p = d
        nxt[p] = x

    top_vs = [g.vertex[d] for d in ft_walk]
    bot_vs = [g.vertex[d] for d in fs_walk]
    reuse_t = len(ft_walk) == 1
    reuse_s = len(fs_walk) == 1
    next_v = max(g.vertices) + 1
    # --- top side
    if reuse_t:
        v_t = top_vs[0]
        loop_t = ft_walk[0]
    else:
        v_t = next_v
        next_v += 1
        walk = _rotate_walk(g, ft_walk, sgn)
        mu = [0]
        for d in walk[:-1]:
            mu.append(mu[-1] + dm(d))
        down = []
        for k, d in enumerate(walk):
            c = g.vertex[d]
            b = new_edge(c, v_t, _m_tokens(-mu[k]), BLUE)
            if k == 0:
                b2 = new_edge(c, v_t, _m_tokens(-1), BLUE)
                insert_before(d, [b2, b])
            else:
                insert_before(d, [b])
            down.append(b)
        loop_t = new_edge(v_t, v_t, ["+M"], RED)
    # --- bottom side
    if reuse_s:
        v_s = bot_vs[0]
        loop_s = g.twin[fs_walk[0]]
    else:
        v_s = next_v
        next_v += 1
        walk = _rotate_walk(g, fs_walk, -sgn)
        mu = [0]
        for d in walk[:-1]:
            mu.append(mu[-1] + dm(d))
        up = []
        for k, d in enumerate(walk):
            w = g.vertex[d]
            a = new_edge(v_s, w, _m_tokens(mu[k]), BLUE)
            if k == 0:
                a2 = new_edge(v_s, w, _m_tokens(-1), BLUE)
                insert_before(d, [twin[a2], twin[a]])
            else:
                insert_before(d, [twin[a]])
            up.append(a)
        loop_s = new_edge(v_s, v_s, ["+M"], RED)
    # --- the two framing edges, crossing the horizon
    # a single looped vertex bounds both faces: one blue loop suffices
    single = reuse_t and reuse_s and v_t == v_s
    framing = [] if single else [new_edge(v_t, v_s, ["-M", "+H"], BLUE)]
    e_B = new_edge(v_t, v_s, ["+H"], BLUE)
    framing.append(e_B)
    # rotation at v_t: [in-blue ...] L_w, e_A, e_B, L_e
    if reuse_t:
        insert_before(loop_t, framing)
    else:
        ins = [twin[b2]] + [twin[b] for b in reversed(down)]
        seq = ins + [twin[loop_t]] + framing + [loop_t]
        for x, y in zip(seq, seq[1:] + seq[:1]):
            nxt[x] = y
    # rotation at v_s: L_w, [out-blue ...], L_e, twin(e_A), twin(e_B)
    if reuse_s:
        insert_before(fs_walk[0], [twin[e] for e in framing])
    else:
        outs = [a2] + [a for a in reversed(up)]
        seq = [twin[loop_s]] + outs + [loop_s] + [twin[e] for e in framing]
        for x, y in zip(seq, seq[1:] + seq[:1]):
            nxt[x] = y
    vertices = list(g.vertices) + [v for v in (v_t, v_s) if v not in set(g.vertices)]
    raw = {
        "vertices": vertices,
        "darts": [
            {"id": d, "vertex": vertex[d], "twin": twin[d], "next_cw": nxt[d], "tokens": list(toks[d])}
            for d in range(len(vertex))
        ],
        "crossing_face": e_B,
    }
    tg = build_torus_graph(raw)
    fwd = {d: color[d] for d in range(len(vertex)) if is_out[d]}
    trel = RegularEdgeLabeling(tg, fwd)
    # redraw the meridian along a simple blue cycle through v_t
    C_l = left_first_cycle(tg, trel, BLUE, start=v_t)
    C_r = right_first_cycle(tg, trel, BLUE, start=v_t)
    ihat = algebraic_crossing(C_r.homotopy, C_l.homotopy)
    if ihat >= 2:
        C = combine_cycles(tg, trel, BLUE, C_l, C_r, C_l.darts[0], mode="simple")
    elif ihat == 1:
        # the first cycles already meet once; either one is a meridian
        C = C_r
    elif single:
        C = C_r
    else:
        raise AssertionError(f"first cycles through v_t cross {ihat} times")
    raw = _redraw_meridian(tg, C)
    tg = build_torus_graph(raw)
    trel = RegularEdgeLabeling(tg, fwd)
    return Extension(tg, trel, v_t, v_s, {"t": reuse_t, "s": reuse_s}, ClosedWalk(tg, C.darts), flip)


def _redraw_meridian(tg, C: ClosedWalk) -> dict:
    """Replace the meridian by a copy of ``C`` pushed slightly to its right.

    The new meridian crosses every edge that leaves ``C`` to the right, just
    next to ``C``; it crosses the horizon where ``C`` does, on the edge of
    ``C`` carrying the horizon token.
    """
    darts = C.darts
    n = len(darts)
    start = [False] * tg.num_darts
    for k, b in enumerate(darts):
        a = tg.twin[darts[k - 1]]
        x = tg.next_cw[b]
        while x != a:
            start[x] = True
            x = tg.next_cw[x]
    new_tokens = []
    for d in range(tg.num_darts):
        base = [t for t in tg.tokens[d] if t[1] == "H"]
        tk = (["+M"] if start[d] else []) + base + (["-M"] if start[tg.twin[d]] else [])
        new_tokens.append(tk)
    crossing = None
    for d in darts:
        if any(t[1] == "H" for t in tg.tokens[d]):
            crossing = tg.twin[d]
            break
    if crossing is None:
        raise AssertionError("meridian cycle does not cross the horizon")
    raw = tg.to_raw()
    for rec in raw["darts"]:
        rec["tokens"] = new_tokens[rec["id"]]
    raw["crossing_face"] = crossing
    return raw


# ----------------------------------------------------------------------
# the dual


def build_cylindrical_dual(g: EmbeddedCylinderGraph, rel: Optional[RegularEdgeLabeling] = None):
    """Rectangular dual of a PTC graph on a rectangular flat cylinder.

    Returns
    -------
    RectangularDual
        ``kind = "cylindrical"``, ``Q = [0, P] x [0, height]`` with ``f_s``
        along the bottom line, ``t_M = (±P, 0)`` and ``t_H = None``.
        ``info["rel"]`` holds the cylindrical REL that was realized.

    Raises
    ------
    NotPTC
    """
    from .torus_dual import RectangularDual, build_orbital_dual

    rep = is_ptc(g)
    if not rep.ok:
        raise NotPTC(rep)
    if rel is None:
        rel = cylindrical_rel(g)
    ext = extend_to_torus(g, rel)
    dual = build_orbital_dual(ext.graph, ext.rel)
    co = dual.info["coordinates"]
    P = dual.t_H[0]
    raw_rects = {v: co.rect(v) for v in g.vertices}
    y0 = min(r[2] for r in raw_rects.values())
    y1 = max(r[3] for r in raw_rects.values())
    if not ext.reused["s"] and co.rect(ext.v_s)[3] != y0:
        raise AssertionError("framing rectangle below f_s does not meet the strip")
    if not ext.reused["t"] and co.rect(ext.v_t)[2] != y1:
        raise AssertionError("framing rectangle above f_t does not meet the strip")
    rects = {}
    for v, (xl, xr, yb, yt) in raw_rects.items():
        shift = (xl // P) * P
        rects[v] = (xl - shift, xr - shift, yb - y0, yt - y0)
    height = y1 - y0
    Q = [(0, 0), (0, height), (P, height), (P, 0)]
    t_M = (-P if ext.flipped else P, 0)
    info = {"rel": rel, "extension": ext, "torus_dual": dual, "period": P}
    return RectangularDual("cylindrical", Q, t_M, None, rects, info)
