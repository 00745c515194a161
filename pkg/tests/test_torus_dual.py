import pytest
from hypothesis import given, settings, strategies as st

from reldual.errors import NotOrbital, NotSlanted, Unrealizable
from reldual.fixtures import grid_canonical_rel, straight_grid, torus_grid, twisted_grid
from reldual.homotopy import algebraic_crossing
from reldual.labeling import BLUE, RegularEdgeLabeling
from reldual.rel import classify
from reldual.torus_dual import (
    RectangularDual,
    build_orbital_dual,
    build_slanted_dual,
    build_toroidal_dual,
    crossing_count,
    reduce_point,
    trace_curve,
)
from reldual.verify import check_toroidal_dual, extract_rel, random_rel


def region_count(g, walks):
    """Connected groups of faces once the walk edges are cut (plain BFS)."""
    cut = {d for W in walks for d in W.darts} | {g.twin[d] for W in walks for d in W.darts}
    seen, count = set(), 0
    for f0 in range(g.num_faces):
        if f0 in seen:
            continue
        count += 1
        todo = [f0]
        seen.add(f0)
        while todo:
            f = todo.pop()
            for d in g.face_walks[f]:
                if d in cut:
                    continue
                h = g.face_of[g.twin[d]]
                if h not in seen:
                    seen.add(h)
                    todo.append(h)
    return count


def rect_area(r):
    return (r[1] - r[0]) * (r[3] - r[2])


@pytest.mark.parametrize("a,b", [(3, 3), (4, 6), (5, 3)])
def test_orbital_grid(a, b):
    g = torus_grid(a, b)
    rel = grid_canonical_rel(g)
    D = build_orbital_dual(g, rel)
    assert D.kind == "orbital"
    assert check_toroidal_dual(D, g, rel).ok
    s1, s2 = D.info["sinks"]
    assert (D.width, D.height) == (s1 - 1, s2 - 1)
    assert D.Q == [(0, 0), (0, s2 - 1), (s1 - 1, s2 - 1), (s1 - 1, 0)]
    assert sum(rect_area(r) for r in D.rects.values()) == D.area()
    assert extract_rel(D, g).as_dict() == rel.as_dict()


def test_orbital_grid_frozen_size():
    # frozen after checking the tiling with the geometric verifier
    D = build_orbital_dual(torus_grid(3, 3), grid_canonical_rel(torus_grid(3, 3)))
    assert (D.width, D.height) == (3, 9)


def test_orbital_rejects_slanted():
    g = twisted_grid(3, 3, 1)
    with pytest.raises(NotOrbital):
        build_orbital_dual(g, grid_canonical_rel(g))


def test_slanted_rejects_orbital():
    g = torus_grid(3, 3)
    with pytest.raises(NotSlanted):
        build_slanted_dual(g, grid_canonical_rel(g))


def test_unrealizable_rejected():
    g = torus_grid(3, 3)
    fwd = grid_canonical_rel(g).as_dict()
    fwd[6 * 5 + 2] = BLUE
    with pytest.raises(Unrealizable) as exc:
        build_toroidal_dual(g, RegularEdgeLabeling(g, fwd))
    assert exc.value.edge == 6 * 5 + 2


@pytest.mark.parametrize("a,b,k", [(3, 3, 1), (4, 3, 2), (5, 4, 1)])
def test_slanted_twisted(a, b, k):
    g = twisted_grid(a, b, k)
    rel = grid_canonical_rel(g)
    D = build_slanted_dual(g, rel)
    assert D.kind == "slanted"
    assert check_toroidal_dual(D, g, rel).ok
    assert D.t_M[0] != 0 or D.t_H[1] != 0  # not a rectangle
    assert sum(rect_area(r) for r in D.rects.values()) == D.area()
    assert extract_rel(D, g).as_dict() == rel.as_dict()


def test_five_patches():
    g = twisted_grid(5, 3, 1)
    rel = grid_canonical_rel(g)
    D = build_slanted_dual(g, rel)
    C1, C2 = D.info["walks"]
    assert len(D.info["patches"]) == 5
    assert region_count(g, (C1, C2)) == 5
    assert crossing_count(g, C1, C2) == abs(algebraic_crossing(C1.homotopy, C2.homotopy)) == 5


def test_straight_grid_slanted_dual():
    g = straight_grid(3, 3)
    rel = grid_canonical_rel(g)
    D = build_toroidal_dual(g, rel)
    assert D.kind == "slanted"
    assert check_toroidal_dual(D, g, rel).ok


def test_trace_returns_to_crossing_face():
    g = twisted_grid(3, 3, 1)
    D = build_slanted_dual(g, grid_canonical_rel(g))
    for curve, lift in (("M", (0, 1)), ("H", (1, 0))):
        tr = trace_curve(g, curve, D.info["coordinates"].face_point)
        assert tr["end_lift"] == lift
        assert tr["faces"][0][0] == tr["faces"][-1][0] == g.face_of[g.crossing_face]


def test_reduce_point():
    assert reduce_point((5, 7), (0, 0), (0, 3), (4, 0)) == (2, 1)
    assert reduce_point((-1, 0), (0, 0), (1, 3), (4, 0)) == (0, -1)
    with pytest.raises(ValueError):
        reduce_point((0, 0), (0, 0), (1, 1), (2, 2))


def test_json_round_trip():
    g = twisted_grid(3, 3, 1)
    D = build_slanted_dual(g, grid_canonical_rel(g))
    E = RectangularDual.from_json(D.to_json())
    assert E == D
    assert check_toroidal_dual(E, g, grid_canonical_rel(g)).ok


@settings(max_examples=25)
@given(
    st.sampled_from([(3, 3, 0), (3, 4, 1), (4, 3, 1), (3, 3, 2)]),
    st.integers(min_value=0, max_value=10**6),
)
def test_random_rels_realize(shape, seed):
    a, b, k = shape
    g = twisted_grid(a, b, k) if k else torus_grid(a, b)
    rel = random_rel(g, seed=seed)
    kind = classify(g, rel).kind
    if kind == "unrealizable":
        with pytest.raises(Unrealizable):
            build_toroidal_dual(g, rel)
        return
    D = build_toroidal_dual(g, rel)
    assert D.kind == kind
    assert check_toroidal_dual(D, g, rel).ok
    assert extract_rel(D, g).as_dict() == rel.as_dict()
    C1, C2 = D.info["walks"]
    if kind == "slanted" and C1.simplicity == C2.simplicity == "simple":
        assert len(D.info["patches"]) == crossing_count(g, C1, C2)
