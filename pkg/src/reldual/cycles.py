"""
Combining first cycles, feedback closed walks and splitting along them.

Notation: ``C_l`` and ``C_r`` are the left-first and right-first cycles of
one color ``i`` and ``ihat = algebraic_crossing(class(C_r), class(C_l))``
counts how often ``C_r`` crosses ``C_l`` from left to right.  Statements
for color 2 are reduced to color 1 by the quarter turn
``(m, h) -> (-h, m)``, which maps the horizon class to the meridian class.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import NotFeedback, NotRealizable, PreconditionViolation
from .homotopy import HomotopyClass, algebraic_crossing
from .labeling import BLUE, RED
from .rel import is_realizable, left_first_cycle, right_first_cycle
from .walks import ClosedWalk, Contact, walk_contacts

__all__ = [
    "ClosedWalk",
    "CombineResult",
    "combine_cycles",
    "combine_cycles_detailed",
    "feedback_closed_walk",
    "SplitGraph",
    "split_along",
    "frame",
]


def frame(i: int, c: HomotopyClass) -> HomotopyClass:
    """Class as seen in the frame of color ``i`` (identity for blue)."""
    return c if i == BLUE else c.rotated()


@dataclass
class CombineResult:
    """Closed walk produced by :func:`combine_cycles` plus bookkeeping.

    Attributes
    ----------
    walk : ClosedWalk
    x_l, x_r : int
        Number of pieces taken from ``C_l`` and from ``C_r``.
    ihat : int
        Crossing number ``algebraic_crossing(class(C_r), class(C_l))``.
    crossings : list of Contact
        The crossing contacts of ``C_r`` with ``C_l``.
    """

    walk: ClosedWalk
    x_l: int
    x_r: int
    ihat: int
    crossings: List[Contact] = field(default_factory=list, repr=False)


def _slice(darts: Sequence[int], start: int, stop: int, full_if_equal: bool) -> List[int]:
    n = len(darts)
    length = (stop - start) % n
    if length == 0 and full_if_equal:
        length = n
    return [darts[(start + t) % n] for t in range(length)]


def combine_cycles_detailed(g, rel, i: int, C_l, C_r, e: int, mode: str = "any") -> CombineResult:
    """Combine two crossing cycles of ``L_i`` into one closed walk through ``e``.

    See :func:`combine_cycles`; this variant also returns the piece counts.
    """
    if mode not in ("any", "simple", "orbital"):
        raise ValueError(f"unknown mode {mode!r}")
    A = list(getattr(C_l, "darts", C_l))
    B = list(getattr(C_r, "darts", C_r))
    cl = ClosedWalk(g, A).homotopy
    cr = ClosedWalk(g, B).homotopy
    for name, W in (("C_l", A), ("C_r", B)):
        verts = [g.vertex[d] for d in W]
        if len(set(verts)) != len(verts):
            raise PreconditionViolation(f"{name} is not a simple cycle")
        if any(rel.color[d] != i or not rel.is_out[d] for d in W):
            raise PreconditionViolation(f"{name} is not a directed cycle of color {i}")
    ihat = algebraic_crossing(cr, cl)
    contacts = walk_contacts(g, A, B)
    crossings = [c for c in contacts if c.is_crossing]
    if any(c.kind == "cross_rl" for c in crossings):
        raise PreconditionViolation("C_l crosses C_r from left to right")
    touch_sides = {c.kind for c in contacts if c.kind.startswith("touch")}
    if len(touch_sides) > 1:
        raise PreconditionViolation("C_r touches C_l from both sides")
    if not crossings:
        raise PreconditionViolation("C_l and C_r do not cross")
    if len(crossings) != ihat:
        raise PreconditionViolation(
            f"combinatorial crossing count {len(crossings)} differs from crossing number {ihat}"
        )
    fl, fr = frame(i, cl), frame(i, cr)
    if mode == "simple" and ihat < 2:
        raise PreconditionViolation("mode 'simple' needs at least two crossings")
    if mode == "orbital" and not (fl.m < 0 < fr.m and fl.h > 0 and fr.h > 0):
        raise PreconditionViolation(
            f"mode 'orbital' needs m(C_l) < 0 < m(C_r) and positive h in the color frame, got {fl}, {fr}"
        )
    na, nb = len(A), len(B)
    by_a = sorted(crossings, key=lambda c: c.a_end)
    q = len(by_a)
    a_ends = [c.a_end for c in by_a]
    b_end_of = [c.b_end for c in by_a]
    pos_a = {d: k for k, d in enumerate(A)}
    pos_b = {d: k for k, d in enumerate(B)}
    if e in pos_a:
        p = pos_a[e]
        # piece j covers dart indices a_ends[j-1] .. a_ends[j]-1 (cyclically)
        j0 = None
        for j in range(q):
            lo, hi = a_ends[j - 1], a_ends[j]
            if q == 1 or (lo <= p < hi if lo < hi else (p >= lo or p < hi)):
                j0 = (j - 1) % q
                break
        x_l = fr.m if mode == "orbital" else 1
        start_idx = j0
        end_idx = (j0 + x_l) % q
        part_a = _slice(A, a_ends[start_idx], a_ends[end_idx], full_if_equal=True) if x_l else []
        if x_l and x_l % q == 0 and x_l != q:
            raise PreconditionViolation("more pieces requested than crossings")
        b_from = b_end_of[end_idx]
        b_to = b_end_of[start_idx]
        part_b = _slice(B, b_from, b_to, full_if_equal=True)
        b_ends_sorted = sorted(b_end_of)
        x_r = _count_ends(b_ends_sorted, b_from, b_to, nb)
        darts = part_a + part_b
    elif e in pos_b:
        by_b = sorted(crossings, key=lambda c: c.b_end)
        b_ends = [c.b_end for c in by_b]
        a_end_of = [c.a_end for c in by_b]
        p = pos_b[e]
        j0 = None
        for j in range(q):
            lo, hi = b_ends[j - 1], b_ends[j]
            if q == 1 or (lo <= p < hi if lo < hi else (p >= lo or p < hi)):
                j0 = (j - 1) % q
                break
        x_r = -fl.m if mode == "orbital" else 1
        end_idx = (j0 + x_r) % q
        part_b = _slice(B, b_ends[j0], b_ends[end_idx], full_if_equal=True)
        a_from = a_end_of[end_idx]
        a_to = a_end_of[j0]
        part_a = _slice(A, a_from, a_to, full_if_equal=True)
        x_l = _count_ends(sorted(a_end_of), a_from, a_to, na)
        darts = part_b + part_a
    else:
        raise PreconditionViolation(f"dart {e} lies on neither cycle")
    walk = ClosedWalk(g, darts)
    if mode == "orbital":
        target = HomotopyClass(0, 1) if i == BLUE else HomotopyClass(1, 0)
        lhs = cl * x_l + cr * x_r
        if lhs != target * ihat:
            raise AssertionError(f"orbital identity fails: {x_l}*{cl} + {x_r}*{cr} != {ihat}*{target}")
        if walk.homotopy != target:
            raise AssertionError(f"orbital combination has class {walk.homotopy}")
    if mode in ("simple", "orbital") and walk.simplicity != "simple":
        raise AssertionError(f"combination in mode {mode!r} is {walk.simplicity}")
    return CombineResult(walk, x_l, x_r, ihat, crossings)


def _count_ends(ends_sorted: List[int], start: int, stop: int, n: int) -> int:
    """Crossing ends met when walking from ``start`` (exclusive) to ``stop`` (inclusive)."""
    length = (stop - start) % n or n
    count = 0
    for x in ends_sorted:
        off = (x - start) % n
        if off == 0:
            off = n
        if off <= length:
            count += 1
    return count


def combine_cycles(g, rel, i: int, C_l, C_r, e: int, mode: str = "any") -> ClosedWalk:
    """Closed walk through ``e`` built from pieces of two crossing cycles.

    Parameters
    ----------
    g : EmbeddedTorusGraph
    rel : RegularEdgeLabeling
    i : int
        Color of both cycles.
    C_l, C_r : ClosedWalk
        Simple directed cycles of ``L_i``.  ``C_r`` must cross ``C_l`` only
        from left to right, at least once, and touch it from one side only.
    e : int
        Dart on ``C_l`` (or on ``C_r``) the result must contain.
    mode : {"any", "simple", "orbital"}
        ``"any"`` and ``"simple"`` take one piece of ``C_l``;
        ``"simple"`` additionally requires two or more crossings so the
        result is a simple cycle.  ``"orbital"`` takes ``m(C_r)`` pieces of
        ``C_l`` (in the color frame) so that the result has the orbit class
        of color ``i``.

    Returns
    -------
    ClosedWalk
        Starts at the end of the crossing preceding the piece containing
        ``e``.  With a single crossing it is ``C_l`` followed by ``C_r``.

    Raises
    ------
    PreconditionViolation
    """
    return combine_cycles_detailed(g, rel, i, C_l, C_r, e, mode).walk


def feedback_closed_walk(g, rel, i: int, mode: str = "any") -> ClosedWalk:
    """A weakly simple closed walk of ``L_i`` meeting every dual cycle.

    If the left-first and right-first cycles do not cross, the right-first
    cycle is returned.  Otherwise they are combined; with
    ``mode="prefer_orbital"`` the orbital combination is used whenever the
    classes allow it, giving a simple cycle of the orbit class.

    Raises
    ------
    NotRealizable
        If the REL has a lonely edge.
    """
    if mode not in ("any", "prefer_orbital"):
        raise ValueError(f"unknown mode {mode!r}")
    ok, lonely = is_realizable(g, rel)
    if not ok:
        raise NotRealizable(f"dart {lonely.dart} is lonely", lonely.dart)
    C_l = left_first_cycle(g, rel, i)
    C_r = right_first_cycle(g, rel, i)
    ihat = algebraic_crossing(C_r.homotopy, C_l.homotopy)
    if ihat == 0:
        return C_r
    fl, fr = frame(i, C_l.homotopy), frame(i, C_r.homotopy)
    if mode == "prefer_orbital" and fl.m < 0 < fr.m and fl.h > 0 and fr.h > 0:
        return combine_cycles(g, rel, i, C_l, C_r, C_l.darts[0], "orbital")
    return combine_cycles(g, rel, i, C_l, C_r, C_l.darts[0], "any")


# ----------------------------------------------------------------------
# splitting


@dataclass
class SplitGraph:
    """``L_i`` cut open along a feedback walk ``C``.

    The faces of the cut graph are the faces of ``L_i`` (components of
    faces of ``g`` glued across edges of the other color) plus a super
    source ``s`` and a super sink ``t``: the two boundary copies of ``C``.
    Flow goes from left to right across every ``L_i`` edge; ``C`` itself
    is entered from its right side (``s``) and left on its left side
    (``t``).

    Attributes
    ----------
    i : int
    walk : ClosedWalk
    comp : list of int
        Face of ``L_i`` of every face of ``g``.
    num_comps : int
        Node ids ``0 .. num_comps - 1`` are faces of ``L_i``; ``s`` and
        ``t`` follow.
    dual_edges : list of (int, int, int)
        ``(tail node, head node, dart)``.
    multiplicity : dict
        Dart of ``C`` to how often ``C`` uses it.
    strip : list of int
        Index of the strip between consecutive lifts of ``C`` containing
        the canonical lift of every face of ``g``.
    passes : dict
        Vertex to the number of times ``C`` visits it.
    copies : dict
        Vertex to the tags of its copies in the cut graph.
    """

    g: object = field(repr=False)
    i: int
    walk: ClosedWalk
    comp: List[int] = field(repr=False)
    num_comps: int
    s: int
    t: int
    dual_edges: List[Tuple[int, int, int]] = field(repr=False)
    multiplicity: Dict[int, int] = field(repr=False)
    strip: List[int] = field(repr=False)
    passes: Dict[int, int] = field(repr=False)
    copies: Dict[int, List[str]] = field(repr=False)
    strands: Dict[int, List[Tuple[str, str]]] = field(default_factory=dict, repr=False)

    @property
    def num_nodes(self) -> int:
        return self.num_comps + 2

    def num_vertex_copies(self) -> int:
        return sum(len(c) for c in self.copies.values())

    def left_face(self, v: int) -> Tuple[int, Tuple[int, int]]:
        """Face of ``g`` (and its lift relative to ``v^0``) in the left gap of ``L_i`` at ``v``."""
        return _gap_face(self.g, self.g_rel, v, self.i, left=True)

    def right_face(self, v: int) -> Tuple[int, Tuple[int, int]]:
        return _gap_face(self.g, self.g_rel, v, self.i, left=False)


def _gap_face(g, rel, v: int, i: int, left: bool) -> Tuple[int, Tuple[int, int]]:
    """Sector face just after the last incoming (left) or last outgoing (right) ``L_i`` dart."""
    target_in = not left
    for d in g.darts_at(v):
        if rel.color[d] != i or rel.is_out[d] != target_in:
            continue
        e = g.next_cw[d]
        if rel.color[e] == i and rel.is_out[e] == target_in:
            continue
        f = g.face_of[e]
        return f, (-g.off_m[e], -g.off_h[e])
    raise PreconditionViolation(f"vertex {v} lacks a group of color {i}")


def split_along(g, rel, i: int, C) -> SplitGraph:
    """Cut ``L_i`` open along the closed walk ``C``.

    Raises
    ------
    NotFeedback
        If the dual of the cut graph still contains a directed cycle.
    """
    C = C if isinstance(C, ClosedWalk) else ClosedWalk(g, C)
    mult: Dict[int, int] = {}
    for d in C.darts:
        if rel.color[d] != i or not rel.is_out[d]:
            raise PreconditionViolation(f"dart {d} of C is not a forward dart of color {i}")
        mult[d] = mult.get(d, 0) + 1
    c = C.homotopy
    if c.is_contractible:
        raise NotFeedback("C is contractible")
    nf = g.num_faces
    # faces of L_i: union faces of g across edges of the other color
    parent = list(range(nf))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for d in range(g.num_darts):
        if rel.color[d] != i and d < g.twin[d]:
            a, b = find(g.face_of[d]), find(g.face_of[g.twin[d]])
            if a != b:
                parent[a] = b
    roots: Dict[int, int] = {}
    comp = [0] * nf
    for f in range(nf):
        r = find(f)
        if r not in roots:
            roots[r] = len(roots)
        comp[f] = roots[r]
    K = len(roots)
    s, t = K, K + 1
    edges: List[Tuple[int, int, int]] = []
    for d in range(g.num_darts):
        if rel.color[d] != i or not rel.is_out[d]:
            continue
        L = comp[g.face_of[d]]
        R = comp[g.face_of[g.twin[d]]]
        j = mult.get(d, 0)
        if j == 0:
            edges.append((L, R, d))
        else:
            edges.append((L, t, d))
            edges.append((s, R, d))
            for _ in range(j - 1):
                edges.append((s, t, d))
    # strip index of the canonical lift of every face
    strip = [None] * nf
    cm, ch = c.m, c.h
    for root_face in range(nf):
        if strip[root_face] is not None:
            continue
        strip[root_face] = 0
        queue = deque([root_face])
        while queue:
            f = queue.popleft()
            for d in g.face_walks[f]:
                other = g.face_of[g.twin[d]]
                am, ah = g.across(d)
                if d in mult:
                    jump = mult[d]
                elif g.twin[d] in mult:
                    jump = -mult[g.twin[d]]
                else:
                    jump = 0
                val = strip[f] + jump - (am * ch - ah * cm)
                if strip[other] is None:
                    strip[other] = val
                    queue.append(other)
                elif strip[other] != val:
                    raise NotFeedback(
                        f"inconsistent strip indices across dart {d}: C does not cut the torus into a cylinder"
                    )
    passes = C.visit_counts()
    copies: Dict[int, List[str]] = {}
    for v in g.vertices:
        k = passes.get(v, 0)
        if k == 0:
            copies[v] = ["interior"]
        else:
            copies[v] = ["t"] + ["middle"] * (k - 1) + ["s"]
    strands: Dict[int, List[Tuple[str, str]]] = {}
    for d, j in mult.items():
        strands[d] = [("left", "t")] + [("s", "t")] * (j - 1) + [("s", "right")]
    sg = SplitGraph(g, i, C, comp, K, s, t, edges, mult, strip, passes, copies, strands)
    sg.g_rel = rel
    _topological_order(sg)  # raises NotFeedback on a cycle
    return sg


def _topological_order(sg: SplitGraph) -> List[int]:
    n = sg.num_nodes
    adj: List[List[int]] = [[] for _ in range(n)]
    indeg = [0] * n
    for a, b, _ in sg.dual_edges:
        adj[a].append(b)
        indeg[b] += 1
    order = []
    queue = deque(x for x in range(n) if indeg[x] == 0)
    while queue:
        x = queue.popleft()
        order.append(x)
        for y in adj[x]:
            indeg[y] -= 1
            if indeg[y] == 0:
                queue.append(y)
    if len(order) != n:
        raise NotFeedback("the dual of the cut graph has a directed cycle")
    sg.order = order
    sg.adj = adj
    return order
