from collections import defaultdict
from functools import lru_cache

import pytest

from reldual.cycles import (
    combine_cycles,
    combine_cycles_detailed,
    feedback_closed_walk,
    frame,
    split_along,
)
from reldual.errors import NotFeedback, NotRealizable, PreconditionViolation
from reldual.fixtures import grid_canonical_rel, torus_grid, twisted_grid
from reldual.graph import walk_homotopy
from reldual.homotopy import HomotopyClass, algebraic_crossing
from reldual.labeling import BLUE, RED, RegularEdgeLabeling
from reldual.rel import left_first_cycle, right_first_cycle
from reldual.torus_dual import consistent_numbering, vertex_sides
from reldual.verify import random_rel

from helpers import orbital_cycle_pairs


def single_crossing_case():
    g = twisted_grid(4, 4, 1)
    rel = random_rel(g, seed=0)
    return g, rel, left_first_cycle(g, rel, BLUE), right_first_cycle(g, rel, BLUE)


def is_acyclic(n, edges):
    indeg = [0] * n
    adj = defaultdict(list)
    for x, y, _ in edges:
        adj[x].append(y)
        indeg[y] += 1
    todo = [x for x in range(n) if indeg[x] == 0]
    seen = 0
    while todo:
        x = todo.pop()
        seen += 1
        for y in adj[x]:
            indeg[y] -= 1
            if indeg[y] == 0:
                todo.append(y)
    return seen == n


def exhaustive_longest(n, edges, src):
    """Longest path lengths from ``src`` by recursion over all paths."""
    adj = defaultdict(set)
    for x, y, _ in edges:
        adj[x].add(y)

    @lru_cache(maxsize=None)
    def longest_to(y):
        preds = [x for x in range(n) if y in adj[x]]
        best = 0 if y == src else None
        for x in preds:
            b = longest_to(x)
            if b is not None and (best is None or b + 1 > best):
                best = b + 1
        return best

    return [longest_to(y) for y in range(n)]


# ----------------------------------------------------------------------
# combining


def test_single_crossing_concatenates():
    g, rel, cl, cr = single_crossing_case()
    assert algebraic_crossing(cr.homotopy, cl.homotopy) == 1
    res = combine_cycles_detailed(g, rel, BLUE, cl, cr, cl.darts[0])
    assert len(res.walk) == len(cl) + len(cr)
    assert sorted(res.walk.darts) == sorted(cl.darts + cr.darts)
    assert res.walk.simplicity == "weakly-simple"
    assert cl.darts[0] in res.walk.darts
    c = res.walk.homotopy
    assert algebraic_crossing(c, cl.homotopy) != 0
    assert algebraic_crossing(c, cr.homotopy) != 0


def test_dart_on_right_cycle():
    g, rel, cl, cr = single_crossing_case()
    w = combine_cycles(g, rel, BLUE, cl, cr, cr.darts[-1])
    assert cr.darts[-1] in w.darts
    assert len(w) == len(cl) + len(cr)


def test_simple_mode_needs_two_crossings():
    g, rel, cl, cr = single_crossing_case()
    with pytest.raises(PreconditionViolation):
        combine_cycles(g, rel, BLUE, cl, cr, cl.darts[0], "simple")


def test_orbital_mode_rejects_zero_meridian_count():
    g, rel, cl, cr = single_crossing_case()
    assert frame(BLUE, cl.homotopy).m * frame(BLUE, cr.homotopy).m == 0
    with pytest.raises(PreconditionViolation):
        combine_cycles(g, rel, BLUE, cl, cr, cl.darts[0], "orbital")


def test_swapped_cycles_rejected():
    g, rel, cl, cr = single_crossing_case()
    with pytest.raises(PreconditionViolation):
        combine_cycles(g, rel, BLUE, cr, cl, cl.darts[0])


def test_non_cycle_dart_rejected():
    g, rel, cl, cr = single_crossing_case()
    other = next(d for d in range(g.num_darts) if d not in cl.darts and d not in cr.darts)
    with pytest.raises(PreconditionViolation):
        combine_cycles(g, rel, BLUE, cl, cr, other)


def test_non_directed_cycle_rejected():
    g = torus_grid(3, 3)
    rel = grid_canonical_rel(g)
    cl = left_first_cycle(g, rel, BLUE)
    with pytest.raises(PreconditionViolation):
        combine_cycles(g, rel, RED, cl, cl, cl.darts[0])


def test_unknown_mode():
    g, rel, cl, cr = single_crossing_case()
    with pytest.raises(ValueError):
        combine_cycles(g, rel, BLUE, cl, cr, cl.darts[0], "fancy")


def test_orbital_combination_identity():
    pairs = list(orbital_cycle_pairs())
    assert len(pairs) >= 20
    for g, rel, i, cl, cr in pairs:
        target = HomotopyClass(0, 1) if i == BLUE else HomotopyClass(1, 0)
        for e in (cl.darts[0], cr.darts[0]):
            res = combine_cycles_detailed(g, rel, i, cl, cr, e, "orbital")
            ihat = algebraic_crossing(cr.homotopy, cl.homotopy)
            assert res.ihat == ihat >= 1
            m = cl.homotopy * res.x_l + cr.homotopy * res.x_r
            assert m == target * ihat
            assert walk_homotopy(g, res.walk.darts) == target
            assert res.walk.simplicity == "simple"
            assert e in res.walk.darts


# ----------------------------------------------------------------------
# feedback walks


def test_grid_feedback_is_column():
    g = torus_grid(4, 3)
    rel = grid_canonical_rel(g)
    C = feedback_closed_walk(g, rel, BLUE)
    assert C.homotopy == HomotopyClass(0, 1)
    assert C.simplicity == "simple"
    assert feedback_closed_walk(g, rel, RED).homotopy == HomotopyClass(1, 0)


def test_twisted_feedback_crosses_both_first_cycles():
    g, rel, cl, cr = single_crossing_case()
    C = feedback_closed_walk(g, rel, BLUE)
    assert algebraic_crossing(C.homotopy, cl.homotopy) != 0
    assert algebraic_crossing(C.homotopy, cr.homotopy) != 0
    assert C.simplicity in ("simple", "weakly-simple")


def test_prefer_orbital_feedback():
    for g, rel, i, cl, cr in list(orbital_cycle_pairs(((4, 2),)))[:1]:
        target = HomotopyClass(0, 1) if i == BLUE else HomotopyClass(1, 0)
        assert feedback_closed_walk(g, rel, i, "prefer_orbital").homotopy in (target, cr.homotopy)


def test_unrealizable_feedback():
    g = torus_grid(3, 3)
    fwd = grid_canonical_rel(g).as_dict()
    fwd[6 * 5 + 2] = BLUE
    with pytest.raises(NotRealizable):
        feedback_closed_walk(g, RegularEdgeLabeling(g, fwd), BLUE)


# ----------------------------------------------------------------------
# splitting and numbering


def test_grid_split_is_strip():
    a, b = 4, 3
    g = torus_grid(a, b)
    rel = grid_canonical_rel(g)
    C = left_first_cycle(g, rel, BLUE)
    sg = split_along(g, rel, BLUE, C)
    assert sg.num_comps == a
    assert is_acyclic(sg.num_nodes, sg.dual_edges)
    on_c = set(C.vertices)
    assert all(len(sg.copies[v]) == (2 if v in on_c else 1) for v in g.vertices)
    num = consistent_numbering(sg)
    assert num.source == 0 and num.sink == a + 1
    assert num.d == exhaustive_longest(sg.num_nodes, sg.dual_edges, sg.s)


def test_grid_split_red():
    g = torus_grid(4, 3)
    rel = grid_canonical_rel(g)
    sg = split_along(g, rel, RED, feedback_closed_walk(g, rel, RED))
    num = consistent_numbering(sg)
    assert num.d == exhaustive_longest(sg.num_nodes, sg.dual_edges, sg.s)
    # frozen regression value
    assert num.sink == 13


def test_weakly_simple_split_triples_path():
    g, rel, cl, cr = single_crossing_case()
    C = feedback_closed_walk(g, rel, BLUE)
    assert C.simplicity == "weakly-simple"
    sg = split_along(g, rel, BLUE, C)
    assert is_acyclic(sg.num_nodes, sg.dual_edges)
    counts = sorted(len(c) for c in sg.copies.values())
    assert counts[-1] == 3
    twice = {v for v, k in C.visit_counts().items() if k == 2}
    assert {v for v, c in sg.copies.items() if len(c) == 3} <= twice
    num = consistent_numbering(sg)
    assert num.d == exhaustive_longest(sg.num_nodes, sg.dual_edges, sg.s)


def test_vertex_sides_increase():
    for g, rel in ((torus_grid(4, 3), None), twisted_grid_case()):
        rel = rel or grid_canonical_rel(g)
        for i in (BLUE, RED):
            sg = split_along(g, rel, i, feedback_closed_walk(g, rel, i, "prefer_orbital"))
            num = consistent_numbering(sg)
            for v in g.vertices:
                low, high = vertex_sides(sg, num, v)
                assert low < high


def twisted_grid_case():
    g = twisted_grid(4, 4, 1)
    return g, random_rel(g, seed=0)


def test_non_feedback_cycle():
    g = twisted_grid(3, 3, 1)
    rel = grid_canonical_rel(g)
    C = left_first_cycle(g, rel, RED)
    assert C.homotopy != right_first_cycle(g, rel, RED).homotopy
    with pytest.raises(NotFeedback):
        split_along(g, rel, RED, C)


def test_split_rejects_wrong_color():
    g = torus_grid(3, 3)
    rel = grid_canonical_rel(g)
    with pytest.raises(PreconditionViolation):
        split_along(g, rel, RED, left_first_cycle(g, rel, BLUE))
