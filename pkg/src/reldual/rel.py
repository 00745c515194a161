"""
Regular edge labelings: validation, first cycles and classification.

Around every vertex the clockwise dart order of a toroidal REL splits into
four non-empty groups: incoming blue, incoming red, outgoing blue and
outgoing red.  Blue edges point "up" and red edges point "right" in a
rectangular dual.  Here ``L_1`` is the blue and ``L_2`` the red subgraph.

For a color ``i`` the clockwise order at a vertex reads
``[in_i] [gap A] [out_i] [gap B]``.  Gap A is the left side of ``L_i`` at
the vertex and gap B the right side.  The leftmost outgoing dart is the
first dart of ``out_i`` in clockwise order (the one next to gap A) and the
rightmost one is the last.
"""

from __future__ import annotations

import gc
from array import array
from contextlib import contextmanager
from dataclasses import dataclass, field
from itertools import compress
from typing import Dict, List, Optional, Tuple

from .errors import NoEdgesOfColor, PreconditionViolation, Report
from .graph import EmbeddedCylinderGraph, EmbeddedTorusGraph
from .homotopy import HomotopyClass
from .labeling import BLUE, COLOR_NAMES, RED, RegularEdgeLabeling
from .walks import ClosedWalk

__all__ = [
    "RegularEdgeLabeling",
    "BLUE",
    "RED",
    "Classification",
    "LonelyEdge",
    "dart_group",
    "validate_toroidal_rel",
    "validate_cylindrical_rel",
    "left_first_cycle",
    "right_first_cycle",
    "is_realizable",
    "classify",
    "strongly_connected_components",
    "orbit_advancing",
    "orbit_enclosing",
]

IN_BLUE, IN_RED, OUT_BLUE, OUT_RED = 0, 1, 2, 3
GROUP_NAMES = ("in-blue", "in-red", "out-blue", "out-red")


def dart_group(rel: RegularEdgeLabeling, d: int) -> int:
    """Group of dart ``d`` at its origin: 0 in-blue, 1 in-red, 2 out-blue, 3 out-red."""
    return (2 if rel.is_out[d] else 0) + (rel.color[d] - 1)


def _runs(labels: List[int]) -> List[int]:
    """Cyclic run-length compression, rotated to start at a run boundary."""
    n = len(labels)
    if n == 0:
        return []
    k = 0
    while k < n and labels[k] == labels[k - 1]:
        k += 1
    if k == n:
        return [labels[0]]
    rot = labels[k:] + labels[:k]
    out = [rot[0]]
    for x in rot[1:]:
        if x != out[-1]:
            out.append(x)
    return out


def _is_rotation(runs: List[int], pattern: Tuple[int, ...]) -> bool:
    if len(runs) != len(pattern):
        return False
    if not runs:
        return True
    try:
        k = pattern.index(runs[0])
    except ValueError:
        return False
    return tuple(runs) == pattern[k:] + pattern[:k]


def validate_toroidal_rel(g: EmbeddedTorusGraph, rel: RegularEdgeLabeling) -> Report:
    """Check the four-group property at every vertex.

    All four groups must be present at every vertex.  Violations have code
    ``"groups"`` and name the vertex.
    """
    rep = Report("validate_toroidal_rel")
    for v in g.vertices:
        labels = [dart_group(rel, d) for d in g.darts_at(v)]
        runs = _runs(labels)
        if not _is_rotation(runs, (IN_BLUE, IN_RED, OUT_BLUE, OUT_RED)):
            names = [GROUP_NAMES[x] for x in runs]
            rep.add("groups", f"vertex {v}: clockwise groups {names}", v)
    return rep


def validate_cylindrical_rel(g: EmbeddedCylinderGraph, rel: RegularEdgeLabeling) -> Report:
    """Check a cylindrical REL.

    Conditions
    ----------
    * ``f_t`` is bounded by a red cycle directed along its face walk and
      ``f_s`` by a red cycle directed against its face walk (so red runs
      left to right with ``f_t`` above and ``f_s`` below);
    * inner vertices have all four groups;
    * a vertex on one outer face lacks exactly one blue group (incoming on
      ``f_s``, outgoing on ``f_t``), and the outer face sits where the
      missing group would be; a vertex on both outer faces lacks both.
    """
    rep = Report("validate_cylindrical_rel")
    fs, ft = g.f_s, g.f_t
    for d in g.face_walks[ft]:
        if rel.color[d] != RED or not rel.is_out[d]:
            rep.add("outer_cycle", f"dart {d} on f_t is not red along the face", d)
    for d in g.face_walks[fs]:
        if rel.color[d] != RED or rel.is_out[d]:
            rep.add("outer_cycle", f"dart {d} on f_s is not red against the face", d)
    on_s = set(g.face_vertices(fs))
    on_t = set(g.face_vertices(ft))
    for v in g.vertices:
        ds = g.darts_at(v)
        labels = [dart_group(rel, d) for d in ds]
        runs = _runs(labels)
        if v in on_s and v in on_t:
            ok = _is_rotation(runs, (IN_RED, OUT_RED))
            ok = ok and _outer_gap_ok(g, rel, ds, fs, OUT_RED, IN_RED)
            ok = ok and _outer_gap_ok(g, rel, ds, ft, IN_RED, OUT_RED)
        elif v in on_s:
            ok = _is_rotation(runs, (IN_RED, OUT_BLUE, OUT_RED)) and _outer_gap_ok(g, rel, ds, fs, OUT_RED, IN_RED)
        elif v in on_t:
            ok = _is_rotation(runs, (IN_BLUE, IN_RED, OUT_RED)) and _outer_gap_ok(g, rel, ds, ft, IN_RED, OUT_RED)
        else:
            ok = _is_rotation(runs, (IN_BLUE, IN_RED, OUT_BLUE, OUT_RED))
        if not ok:
            names = [GROUP_NAMES[x] for x in runs]
            rep.add("groups", f"vertex {v}: clockwise groups {names}", v)
    return rep


def _outer_gap_ok(g, rel, ds, face, before, after) -> bool:
    """The outer-face sector at this vertex separates group ``before`` from ``after``."""
    for d in ds:
        if g.sector_face(d) == face:
            e = g.next_cw[d]
            return dart_group(rel, d) == before and dart_group(rel, e) == after
    return False


# ----------------------------------------------------------------------
# first cycles


class _Positions(dict):
    def __missing__(self, key):
        return -1


def _out_flags(rel, i: int) -> bytearray:
    """``flag[d]`` is 1 iff ``d`` is the forward dart of an edge of color ``i``."""
    return bytearray([o and c == i for o, c in zip(rel.is_out, rel.color)])


def _first_cycle(g, rel, i: int, leftmost: bool, start: Optional[int] = None, flag=None) -> ClosedWalk:
    if i not in (BLUE, RED):
        raise ValueError("color must be 1 (blue) or 2 (red)")
    vert = g.packed_vertex
    # one sequential pass: the extreme outgoing i-dart of every vertex is
    # the i-out dart whose neighbour on the chosen side is not i-out
    if flag is None:
        flag = _out_flags(rel, i)
    side = g.packed_prev_cw if leftmost else g.packed_next_cw
    vs = g.vertices
    dense = vs[0] == 0 and vs[-1] == len(vs) - 1
    heads = g.packed_heads
    # tab[2v] is the extreme dart at v and tab[2v + 1] its head; the walk
    # below then reads a single cache line per step
    tab = array("q", [-1]) * (2 * len(vs)) if dense else _Positions()
    has_out = bytearray(len(vs)) if dense else _Positions()
    for d in compress(range(len(flag)), flag):
        v = vert[d]
        has_out[v] = 1
        if not flag[side[d]] and tab[2 * v] < 0:
            tab[2 * v] = d
            tab[2 * v + 1] = heads[d]
    if start is None:
        outs = [v for v in vs if has_out[v] == 1]
        if not outs:
            raise NoEdgesOfColor(f"no {COLOR_NAMES[i]} edges")
        start = outs[0]
    darts: List[int] = []
    v = start
    while True:
        k = 2 * v
        w = tab[k + 1]
        if w < -1:
            break  # visited before, at position -2 - w
        if w == -1:
            if has_out[v] != 1:
                raise PreconditionViolation(f"vertex {v} has no outgoing {COLOR_NAMES[i]} edge")
            # every dart at v is an outgoing i-dart
            tab[k] = g._first_dart[v]
            w = heads[tab[k]]
        tab[k + 1] = -2 - len(darts)
        darts.append(tab[k])
        v = w
    # each dart ends where the next starts by construction, and the walk
    # is cut where it returns to a visited vertex
    return ClosedWalk._unchecked(g, darts[-2 - tab[2 * v + 1]:])


def left_first_cycle(g, rel: RegularEdgeLabeling, i: int, start: Optional[int] = None) -> ClosedWalk:
    """Directed cycle of ``L_i`` always leaving along the leftmost outgoing dart.

    The walk starts at the smallest vertex with an outgoing ``L_i`` dart
    (or at ``start``) and is cut at the first repeated vertex.

    Raises
    ------
    NoEdgesOfColor
    """
    return _first_cycle(g, rel, i, True, start)


def right_first_cycle(g, rel: RegularEdgeLabeling, i: int, start: Optional[int] = None) -> ClosedWalk:
    """Like :func:`left_first_cycle` with the rightmost outgoing dart."""
    return _first_cycle(g, rel, i, False, start)


# ----------------------------------------------------------------------
# strongly connected components


def strongly_connected_components(n_vertices: int, adj: List[List[int]]) -> List[int]:
    """Iterative Tarjan; returns a component id per vertex index.

    Component ids are in reverse topological order of the condensation
    (sinks first).
    """
    index = [-1] * n_vertices
    low = [0] * n_vertices
    comp = [-1] * n_vertices
    stack: List[int] = []
    counter = 0
    ncomp = 0
    for root in range(n_vertices):
        if index[root] >= 0:
            continue
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        path = [root]
        iters = [iter(adj[root])]
        while iters:
            v = path[-1]
            for w in iters[-1]:
                if index[w] < 0:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    path.append(w)
                    iters.append(iter(adj[w]))
                    break
                if comp[w] < 0 and index[w] < low[v]:
                    low[v] = index[w]
            else:
                path.pop()
                iters.pop()
                lv = low[v]
                if path:
                    u = path[-1]
                    if lv < low[u]:
                        low[u] = lv
                if lv == index[v]:
                    while True:
                        w = stack.pop()
                        comp[w] = ncomp
                        if w == v:
                            break
                    ncomp += 1
    return comp


@dataclass(frozen=True)
class LonelyEdge:
    """Forward dart of an edge lying on no directed cycle of its color."""

    dart: int
    color: int


def _color_components(g, rel, i: int, flag=None):
    """Strong components of ``L_i``.

    Returns the component id per vertex index and the forward darts of
    color ``i`` with tail and head indices.
    """
    vs = g.vertices
    if flag is None:
        flag = _out_flags(rel, i)
    darts = list(compress(range(g.num_darts), flag))
    tails = list(map(g.packed_vertex.__getitem__, darts))
    heads = list(map(g.packed_heads.__getitem__, darts))
    if not (vs and vs[0] == 0 and vs[-1] == len(vs) - 1):
        vid = {v: k for k, v in enumerate(vs)}
        tails = [vid[v] for v in tails]
        heads = [vid[v] for v in heads]
    adj: List[List[int]] = [[] for _ in vs]
    for a, b in zip(tails, heads):
        adj[a].append(b)
    comp = strongly_connected_components(len(adj), adj)
    return comp, darts, tails, heads


def _lonely(comp, darts, tails, heads) -> Optional[int]:
    if not any(comp):
        # a single component: every edge closes a cycle
        return None
    for d, a, b in zip(darts, tails, heads):
        if comp[a] != comp[b]:
            return d
    return None


def is_realizable(g, rel: RegularEdgeLabeling) -> Tuple[bool, Optional[LonelyEdge]]:
    """Search for a lonely edge.

    Returns
    -------
    (bool, LonelyEdge or None)
        ``(True, None)`` if every edge lies on a directed cycle of its
        color, otherwise ``(False, e)`` with the smallest lonely forward
        dart, blue edges first.
    """
    for i in (BLUE, RED):
        d = _lonely(*_color_components(g, rel, i))
        if d is not None:
            return False, LonelyEdge(d, i)
    return True, None


# ----------------------------------------------------------------------
# classification


def orbit_advancing(i: int, c: HomotopyClass) -> bool:
    return c.h > 0 if i == BLUE else c.m > 0


def orbit_enclosing(i: int, left: HomotopyClass, right: HomotopyClass) -> bool:
    if i == BLUE:
        return (left.m == 0 == right.m) or (left.m < 0 < right.m)
    return (left.h == 0 == right.h) or (right.h < 0 < left.h)


@dataclass
class Classification:
    """Result of :func:`classify`.

    Attributes
    ----------
    kind : str
        ``"unrealizable"``, ``"orbital"`` or ``"slanted"``.
    witness : LonelyEdge or None
        The lonely edge of an unrealizable REL.
    cycles : dict
        Color to ``(left-first class, right-first class)``.
    walks : dict
        Color to ``(left-first walk, right-first walk)``.
    """

    kind: str
    witness: Optional[LonelyEdge] = None
    cycles: Dict[int, Tuple[HomotopyClass, HomotopyClass]] = field(default_factory=dict)
    walks: Dict[int, Tuple[ClosedWalk, ClosedWalk]] = field(default_factory=dict, repr=False, compare=False)

    def to_json(self) -> dict:
        out: dict = {"class": self.kind}
        if self.witness is not None:
            out["witness"] = {"dart": self.witness.dart, "color": COLOR_NAMES[self.witness.color]}
        if self.cycles:
            out["cycles"] = {
                COLOR_NAMES[i]: {"left_first": list(l), "right_first": list(r)}
                for i, (l, r) in sorted(self.cycles.items())
            }
        return out


@contextmanager
def _gc_paused():
    """Suspend the cyclic garbage collector.

    The passes below allocate many small tuples; with the collector active
    its generation scans make large inputs look superlinear.
    """
    was = gc.isenabled()
    gc.disable()
    try:
        yield
    finally:
        if was:
            gc.enable()


def classify(g: EmbeddedTorusGraph, rel: RegularEdgeLabeling) -> Classification:
    """Decide whether a toroidal REL is unrealizable, orbital or slanted.

    Runs in time linear in the number of darts plus tokens: one strongly
    connected component pass per color and four first-cycle walks.
    """
    with _gc_paused():
        return _classify(g, rel)


def _classify(g, rel) -> Classification:
    starts = {}
    flags = {}
    for i in (BLUE, RED):
        flags[i] = _out_flags(rel, i)
        comp, darts, tails, heads = _color_components(g, rel, i, flags[i])
        d = _lonely(comp, darts, tails, heads)
        if d is not None:
            return Classification("unrealizable", witness=LonelyEdge(d, i))
        if not darts:
            raise NoEdgesOfColor(f"no {COLOR_NAMES[i]} edges")
        starts[i] = g.vertices[min(tails)]
    cycles = {}
    walks = {}
    orbital = True
    for i in (BLUE, RED):
        cl = _first_cycle(g, rel, i, True, starts[i], flags[i])
        cr = _first_cycle(g, rel, i, False, starts[i], flags[i])
        hl, hr = cl.homotopy, cr.homotopy
        cycles[i] = (hl, hr)
        walks[i] = (cl, cr)
        if not (orbit_advancing(i, hl) and orbit_advancing(i, hr) and orbit_enclosing(i, hl, hr)):
            orbital = False
    return Classification("orbital" if orbital else "slanted", None, cycles, walks)
