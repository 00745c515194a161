import itertools

import pytest

from reldual.cylinder import cylindrical_rel
from reldual.errors import ValidationError
from reldual.fixtures import (
    grid_canonical_rel,
    stacked_rings,
    straight_grid,
    three_loop_rel,
    three_loop_torus,
    torus_grid,
    twisted_grid,
)
from reldual.homotopy import HomotopyClass
from reldual.labeling import BLUE, RED, RegularEdgeLabeling
from reldual.rel import (
    classify,
    dart_group,
    is_realizable,
    left_first_cycle,
    right_first_cycle,
    strongly_connected_components,
    validate_cylindrical_rel,
    validate_toroidal_rel,
)
from reldual.verify import brute_force_classification, random_rel


def recolored(g, rel, d, color=None, flip=False):
    fwd = rel.as_dict()
    f = d if rel.is_out[d] else g.twin[d]
    c = fwd.pop(f)
    fwd[g.twin[f] if flip else f] = c if color is None else color
    return RegularEdgeLabeling(g, fwd)


def reaches(g, rel, i, src, dst):
    """Plain DFS over forward darts of color ``i``."""
    seen, todo = {src}, [src]
    while todo:
        v = todo.pop()
        if v == dst:
            return True
        for d in g.darts_at(v):
            if rel.is_out[d] and rel.color[d] == i and g.head(d) not in seen:
                seen.add(g.head(d))
                todo.append(g.head(d))
    return False


# ----------------------------------------------------------------------
# labels


def test_labeling_rejects_duplicates_and_gaps():
    g = torus_grid(3, 3)
    fwd = grid_canonical_rel(g).as_dict()
    d = next(iter(fwd))
    with pytest.raises(ValidationError):
        RegularEdgeLabeling(g, {**fwd, g.twin[d]: "red"})
    fwd.pop(d)
    with pytest.raises(ValidationError):
        RegularEdgeLabeling(g, fwd)
    with pytest.raises(ValidationError):
        RegularEdgeLabeling(g, {**fwd, d: "green"})


def test_canonical_grid_pattern():
    g = torus_grid(4, 3)
    rel = grid_canonical_rel(g)
    assert validate_toroidal_rel(g, rel).ok
    # clockwise from E: out-red E, out-blue N, out-red NE, in-red W, in-blue S, in-red SW
    # starting at N the six slots read out-blue, out-red, in-red, in-blue, in-red, out-red
    for v in g.vertices:
        groups = [dart_group(rel, d) for d in g.darts_at(v)]
        assert sorted(groups) == [0, 1, 1, 2, 3, 3]


def test_recolored_edge_breaks_both_ends():
    g = torus_grid(3, 3)
    rel = grid_canonical_rel(g)
    d = 6 * 4 + 1  # north dart of vertex 4
    bad = recolored(g, rel, d, RED)
    rep = validate_toroidal_rel(g, bad)
    assert {v.where for v in rep.violations} == {g.vertex[d], g.head(d)}


def _slot_oracle(groups):
    n = len(groups)
    for s in range(n):
        rot = groups[s:] + groups[:s]
        if rot == sorted(rot) and set(rot) == {0, 1, 2, 3}:
            return True
    return False


def test_three_loop_patterns():
    g = three_loop_torus()
    assert validate_toroidal_rel(g, three_loop_rel(g)).ok
    edges = g.edges()
    for colors in itertools.product((BLUE, RED), repeat=3):
        for flips in itertools.product((False, True), repeat=3):
            fwd = {(g.twin[e] if f else e): c for e, c, f in zip(edges, colors, flips)}
            rel = RegularEdgeLabeling(g, fwd)
            groups = [dart_group(rel, d) for d in g.darts_at(0)]
            assert validate_toroidal_rel(g, rel).ok == _slot_oracle(groups)


def test_cylindrical_rel_mutations():
    g = stacked_rings(4, 3)
    rel = cylindrical_rel(g)
    assert validate_cylindrical_rel(g, rel).ok
    top = g.face_walks[g.f_t][0]
    assert not validate_cylindrical_rel(g, recolored(g, rel, top, flip=True)).ok
    inner = 4  # ring 1, vertex 0: neither on f_s nor on f_t
    out_red = [d for d in g.darts_at(inner) if rel.is_out[d] and rel.color[d] == RED]
    bad = rel
    for d in out_red:
        bad = recolored(g, bad, d, BLUE)
    assert not validate_cylindrical_rel(g, bad).ok


# ----------------------------------------------------------------------
# first cycles and lonely edges


def test_grid_first_cycles_are_columns():
    g = torus_grid(4, 3)
    rel = grid_canonical_rel(g)
    cl = left_first_cycle(g, rel, BLUE)
    assert cl.homotopy == HomotopyClass(0, 1)
    assert all(d % 6 == 1 for d in cl.darts)
    assert right_first_cycle(g, rel, BLUE).homotopy == HomotopyClass(0, 1)


def test_twisted_first_cycles_differ():
    # the canonical labeling has a single outgoing blue edge per vertex, so
    # its blue first cycles coincide; a sampled labeling separates them
    g = twisted_grid(4, 4, 1)
    rel = random_rel(g, seed=0)
    cl, cr = left_first_cycle(g, rel, BLUE), right_first_cycle(g, rel, BLUE)
    assert cl.homotopy != cr.homotopy
    rel = grid_canonical_rel(twisted_grid(3, 3, 1))
    g = twisted_grid(3, 3, 1)
    assert left_first_cycle(g, rel, RED).homotopy != right_first_cycle(g, rel, RED).homotopy


def test_blue_meridian_loop():
    g = three_loop_torus()
    rel = three_loop_rel(g)
    assert left_first_cycle(g, rel, BLUE).darts == (0,)
    assert right_first_cycle(g, rel, BLUE).darts == (0,)


def test_first_cycles_are_directed_cycles():
    g = torus_grid(5, 4)
    rel = random_rel(g, seed=3)
    for i in (BLUE, RED):
        for w in (left_first_cycle(g, rel, i), right_first_cycle(g, rel, i)):
            assert all(rel.is_out[d] and rel.color[d] == i for d in w.darts)
            assert len(set(w.vertices)) == len(w)


def test_scc_small():
    comp = strongly_connected_components(4, [[1], [0, 2], [3], []])
    assert comp[0] == comp[1] != comp[2] != comp[3]


def test_realizable_grid():
    g = torus_grid(3, 3)
    assert is_realizable(g, grid_canonical_rel(g)) == (True, None)


def test_lonely_edge_witness():
    g = torus_grid(4, 3)
    rel = grid_canonical_rel(g)
    d = 6 * 5 + 2  # north-east diagonal of vertex 5, turned blue
    bad = recolored(g, rel, d, BLUE)
    ok, lonely = is_realizable(g, bad)
    assert not ok and lonely.color == BLUE
    assert not reaches(g, bad, BLUE, g.head(lonely.dart), g.vertex[lonely.dart])
    res = classify(g, bad)
    assert res.kind == "unrealizable" and res.witness == lonely


# ----------------------------------------------------------------------
# classification


def test_grid_is_orbital():
    g = torus_grid(3, 3)
    assert classify(g, grid_canonical_rel(g)).kind == "orbital"


@pytest.mark.parametrize("a,b,k", [(3, 3, 1), (4, 3, 1), (3, 4, 2)])
def test_twisted_is_slanted(a, b, k):
    g = twisted_grid(a, b, k)
    rel = grid_canonical_rel(g)
    assert classify(g, rel).kind == "slanted"
    assert brute_force_classification(g, rel).kind == "slanted"


def test_blue_orbital_red_not():
    # realizable, blue first cycles are meridians, red ones are not parallel
    g = straight_grid(3, 3)
    rel = grid_canonical_rel(g)
    res = classify(g, rel)
    assert res.kind == "slanted"
    assert res.cycles[BLUE] == (HomotopyClass(0, 1), HomotopyClass(0, 1))
    assert res.cycles[RED][0] != res.cycles[RED][1]


def test_classification_json():
    g = torus_grid(3, 3)
    out = classify(g, grid_canonical_rel(g)).to_json()
    assert out["class"] == "orbital"
    assert out["cycles"]["blue"]["left_first"] == [0, 1]


def test_sparse_vertex_ids():
    from reldual.graph import build_torus_graph

    g = twisted_grid(4, 3, 1)
    raw = g.to_raw()
    raw["vertices"] = [3 * v + 7 for v in raw["vertices"]]
    for rec in raw["darts"]:
        rec["vertex"] = 3 * rec["vertex"] + 7
    h = build_torus_graph(raw)
    for seed in range(6):
        rel = random_rel(g, seed=seed)
        rh = RegularEdgeLabeling(h, rel.as_dict())
        a, b = classify(g, rel), classify(h, rh)
        assert (a.kind, a.witness) == (b.kind, b.witness)
        for i in (BLUE, RED):
            # the relabeling is monotone, so both walks start at matching vertices
            assert left_first_cycle(h, rh, i).darts == left_first_cycle(g, rel, i).darts
            assert right_first_cycle(h, rh, i).darts == right_first_cycle(g, rel, i).darts
