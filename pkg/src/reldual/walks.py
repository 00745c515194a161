"""
Closed walks in embedded graphs and how two of them meet.

Two walks that share vertices can cross or merely touch.  Shared pieces
are grouped into maximal runs (a single common vertex is a run of length
zero); each run is then decided by the side of the first walk on which the
second walk arrives and the side on which it leaves.  This is the usual
contract-and-expand device for walks sharing subpaths.

The side test works on the rotation at a vertex: a walk passing a vertex
by arriving along dart ``a`` (taken as leaving the vertex) and leaving
along dart ``b`` has on its left the darts strictly between ``a`` and
``b`` in clockwise order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import NotClosed
from .homotopy import HomotopyClass

__all__ = ["ClosedWalk", "Contact", "walk_contacts", "walk_simplicity", "left_of_pass"]

SIMPLE = "simple"
WEAKLY_SIMPLE = "weakly-simple"
OTHER = "other"


@dataclass(frozen=True, eq=False)
class ClosedWalk:
    """A closed walk, stored as its dart sequence.

    Attributes
    ----------
    darts : tuple of int
        ``darts[k]`` ends where ``darts[k + 1]`` starts, cyclically.
    """

    g: object = field(repr=False)
    darts: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "darts", tuple(self.darts))
        g = self.g
        n = len(self.darts)
        if n == 0:
            raise NotClosed("empty walk")
        for k, d in enumerate(self.darts):
            nd = self.darts[(k + 1) % n]
            if g.head(d) != g.vertex[nd]:
                raise NotClosed(f"dart {d} ends at {g.head(d)} but dart {nd} starts at {g.vertex[nd]}")

    @classmethod
    def _unchecked(cls, g, darts: Sequence[int]) -> "ClosedWalk":
        """Wrap darts already known to close up, skipping the closure check."""
        w = object.__new__(cls)
        object.__setattr__(w, "g", g)
        object.__setattr__(w, "darts", tuple(darts))
        return w

    def __len__(self) -> int:
        return len(self.darts)

    def __iter__(self):
        return iter(self.darts)

    def __eq__(self, other):
        return isinstance(other, ClosedWalk) and self.darts == other.darts

    def __hash__(self):
        return hash(self.darts)

    @cached_property
    def homotopy(self) -> HomotopyClass:
        g = self.g
        return HomotopyClass(sum(g.dm[d] for d in self.darts), sum(g.dh[d] for d in self.darts))

    @property
    def vertices(self) -> List[int]:
        """Visited vertices in order (start vertex of every dart)."""
        return [self.g.vertex[d] for d in self.darts]

    def visit_counts(self) -> Dict[int, int]:
        counts: Dict[int, int] = {}
        for v in self.vertices:
            counts[v] = counts.get(v, 0) + 1
        return counts

    @cached_property
    def simplicity(self) -> str:
        return walk_simplicity(self.g, self)

    def rotate_to(self, k: int) -> "ClosedWalk":
        return ClosedWalk(self.g, self.darts[k:] + self.darts[:k])

    def contains_edge(self, d: int) -> bool:
        return d in set(self.darts)


def left_of_pass(g, a: int, b: int, x: int) -> bool:
    """True if dart ``x`` lies strictly left of the pass ``a -> b``.

    ``a`` is the arrival dart reversed (so it leaves the vertex), ``b`` the
    departure dart; all three darts leave the same vertex and ``x`` differs
    from both.
    """
    d = g.next_cw[a]
    while d != b:
        if d == x:
            return True
        d = g.next_cw[d]
    return False


@dataclass
class Contact:
    """A maximal shared run of walks ``A`` and ``B``.

    Attributes
    ----------
    a_start, a_end : int
        Visit indices in ``A``: the run covers the vertices of ``A`` from
        visit ``a_start`` to visit ``a_end`` (cyclically, ``a_len`` darts).
    b_start, b_end : int
        Corresponding visit indices in ``B`` (``b_start`` pairs with
        ``a_start``).
    a_len : int
        Number of shared darts.
    same_direction : bool or None
        Whether ``B`` runs along the shared darts in the same direction;
        ``None`` for a single shared vertex.
    kind : str
        ``"cross_lr"`` if ``B`` crosses ``A`` from left to right,
        ``"cross_rl"`` for right to left, ``"touch_left"`` /
        ``"touch_right"`` if ``B`` stays on one side, ``"identical"`` if
        the walks share every dart.
    """

    a_start: int
    a_end: int
    b_start: int
    b_end: int
    a_len: int
    same_direction: Optional[bool]
    kind: str

    @property
    def is_crossing(self) -> bool:
        return self.kind.startswith("cross")


def walk_contacts(g, A: Sequence[int], B: Sequence[int], same_walk: bool = False) -> List[Contact]:
    """All maximal shared runs of two closed walks.

    Parameters
    ----------
    A, B : sequence of int
        Dart sequences of closed walks.
    same_walk : bool
        If true, ``A`` and ``B`` are the same walk and only pairs of
        distinct visits are considered (each unordered pair once).
    """
    A = list(getattr(A, "darts", A))
    B = list(getattr(B, "darts", B))
    na, nb = len(A), len(B)
    vert = g.vertex
    twin = g.twin
    b_visits: Dict[int, List[int]] = {}
    for l, d in enumerate(B):
        b_visits.setdefault(vert[d], []).append(l)
    pairs = set()
    for k, d in enumerate(A):
        for l in b_visits.get(vert[d], ()):
            if same_walk and l == k:
                continue
            pairs.add((k, l))

    def fwd(k, l):
        """Next pair along the run, with direction flag."""
        if A[k] == B[l]:
            return ((k + 1) % na, (l + 1) % nb), True
        lp = (l - 1) % nb
        if A[k] == twin[B[lp]]:
            return ((k + 1) % na, lp), False
        return None, None

    def bwd(k, l):
        kp = (k - 1) % na
        lp = (l - 1) % nb
        if A[kp] == B[lp]:
            return (kp, lp), True
        if A[kp] == twin[B[l]]:
            return (kp, (l + 1) % nb), False
        return None, None

    done = set()
    contacts: List[Contact] = []
    for start in sorted(pairs):
        if start in done:
            continue
        # walk backwards to the start of the run
        cur = start
        direction = None
        steps = 0
        cyclic = False
        while True:
            prev, flag = bwd(*cur)
            if prev is None or (direction is not None and flag != direction):
                break
            direction = flag
            cur = prev
            steps += 1
            if cur == start or steps > na:
                cyclic = True
                break
        if cyclic:
            run = [start]
            nxt, _ = fwd(*start)
            while nxt is not None and nxt != start and len(run) <= na:
                run.append(nxt)
                nxt, _ = fwd(*nxt)
            for p in run:
                done.add(p)
                if same_walk:
                    done.add((p[1], p[0]))
            contacts.append(Contact(run[0][0], run[0][0], run[0][1], run[0][1], na, direction, "identical"))
            continue
        first = cur
        run = [first]
        direction2 = None
        while True:
            nxt, flag = fwd(*run[-1])
            if nxt is None or (direction2 is not None and flag != direction2):
                break
            direction2 = flag
            run.append(nxt)
            if len(run) > na + 1:
                break
        for p in run:
            done.add(p)
            if same_walk:
                done.add((p[1], p[0]))
        (k0, l0), (k1, l1) = run[0], run[-1]
        L = len(run) - 1
        a_in = twin[A[(k0 - 1) % na]]
        a_out = A[k1]
        if L == 0:
            b_in = twin[B[(l0 - 1) % nb]]
            b_out = B[l0]
            in_left = left_of_pass(g, a_in, a_out, b_in)
            out_left = left_of_pass(g, a_in, a_out, b_out)
            same = None
        elif direction2:
            # B enters at A's start, leaves at A's end
            b_in = twin[B[(l0 - 1) % nb]]
            b_out = B[l1]
            in_left = left_of_pass(g, a_in, A[k0], b_in)
            out_left = left_of_pass(g, twin[A[(k1 - 1) % na]], a_out, b_out)
            same = True
        else:
            # B runs backwards: enters at A's end, leaves at A's start
            b_in = twin[B[(l1 - 1) % nb]]
            b_out = B[l0]
            in_left = left_of_pass(g, twin[A[(k1 - 1) % na]], a_out, b_in)
            out_left = left_of_pass(g, a_in, A[k0], b_out)
            same = False
        if in_left and not out_left:
            kind = "cross_lr"
        elif out_left and not in_left:
            kind = "cross_rl"
        elif in_left:
            kind = "touch_left"
        else:
            kind = "touch_right"
        contacts.append(Contact(k0, k1, l0, l1, L, same, kind))
    contacts.sort(key=lambda c: (c.a_start, c.b_start))
    return contacts


def walk_simplicity(g, walk) -> str:
    """``"simple"``, ``"weakly-simple"`` or ``"other"``.

    A walk is simple if it visits every vertex once, weakly simple if it
    visits every vertex at most twice and never crosses itself.
    """
    darts = list(getattr(walk, "darts", walk))
    counts: Dict[int, int] = {}
    for d in darts:
        v = g.vertex[d]
        counts[v] = counts.get(v, 0) + 1
    top = max(counts.values())
    if top == 1:
        return SIMPLE
    if top > 2:
        return OTHER
    for c in walk_contacts(g, darts, darts, same_walk=True):
        if c.is_crossing:
            return OTHER
    return WEAKLY_SIMPLE
