"""Mutation helpers for graphs given as raw dictionaries."""

import copy

from reldual.graph import build_cylinder_graph, build_torus_graph


def rebuild(g, raw):
    return build_torus_graph(raw) if g.surface == "torus" else build_cylinder_graph(raw)


def _flip(t):
    return ("-" if t[0] == "+" else "+") + t[1]


def add_edge_in_face(g, f, k1, k2, hook=None):
    """Raw graph with a new edge splitting face ``f`` between walk positions
    ``k1 < k2``; the edge carries the tokens of the walk segment it spans.

    Returns ``(raw, new_dart)``.
    """
    raw = copy.deepcopy(g.to_raw())
    walk = g.face_walks[f]
    n = g.num_darts
    x, y = n, n + 1
    seg = walk[k1:k2]
    tokens = [t for d in seg for t in g.tokens[d]]
    darts = raw["darts"]
    u, w = g.vertex[walk[k1]], g.vertex[walk[k2 % len(walk)]]
    darts.append({"id": x, "vertex": u, "twin": y, "next_cw": walk[k1], "tokens": tokens})
    darts.append({"id": y, "vertex": w, "twin": x, "next_cw": walk[k2 % len(walk)],
                  "tokens": [_flip(t) for t in reversed(tokens)]})
    darts[g.twin[walk[k1 - 1]]]["next_cw"] = x
    darts[g.twin[walk[k2 - 1]]]["next_cw"] = y
    return raw, x


def add_loop_in_sector(g, d):
    """Raw graph with a contractible loop inserted right after dart ``d``."""
    raw = copy.deepcopy(g.to_raw())
    n = g.num_darts
    darts = raw["darts"]
    after = g.next_cw[d]
    darts.append({"id": n, "vertex": g.vertex[d], "twin": n + 1, "next_cw": n + 1, "tokens": []})
    darts.append({"id": n + 1, "vertex": g.vertex[d], "twin": n, "next_cw": after, "tokens": []})
    darts[d]["next_cw"] = n
    return raw


def remove_edge(g, e):
    """Raw graph without the edge of dart ``e``; dart ids are compacted."""
    gone = {e, g.twin[e]}
    keep = [d for d in range(g.num_darts) if d not in gone]
    new = {d: k for k, d in enumerate(keep)}
    out = []
    for d in keep:
        c = g.next_cw[d]
        while c in gone:
            c = g.next_cw[c]
        out.append({"id": new[d], "vertex": g.vertex[d], "twin": new[g.twin[d]], "next_cw": new[c],
                    "tokens": list(g.tokens[d])})
    raw = {"vertices": list(g.vertices), "darts": out, "surface": g.surface}
    if g.surface == "torus":
        cf = g.crossing_face
        raw["crossing_face"] = new.get(cf, 0)
    else:
        raw["outer_faces"] = [new[x] for x in g.outer_faces]
    return raw, new


def orbital_cycle_pairs(sizes=tuple((c, k) for c in range(3, 9) for k in range(1, 6))):
    """Cycle pairs meeting the orbital combination precondition.

    The tori obtained by extending cylindrical labelings have several
    vertices whose left-first and right-first cycles point to opposite
    sides of the orbit curve.  Yields ``(g, rel, i, C_l, C_r)`` once per
    distinct pair of dart sequences.
    """
    from reldual.cycles import frame
    from reldual.cylinder import cylindrical_rel, extend_to_torus
    from reldual.errors import PreconditionViolation
    from reldual.fixtures import stacked_rings
    from reldual.rel import left_first_cycle, right_first_cycle

    for c, k in sizes:
        cyl = stacked_rings(c, k)
        ext = extend_to_torus(cyl, cylindrical_rel(cyl))
        g, rel = ext.graph, ext.rel
        seen = set()
        for i in (1, 2):
            for s in g.vertices:
                try:
                    cl = left_first_cycle(g, rel, i, start=s)
                    cr = right_first_cycle(g, rel, i, start=s)
                except PreconditionViolation:
                    continue
                fl, fr = frame(i, cl.homotopy), frame(i, cr.homotopy)
                if not (fl.m < 0 < fr.m and fl.h > 0 and fr.h > 0):
                    continue
                key = (i, _cyclic_key(cl.darts), _cyclic_key(cr.darts))
                if key in seen:
                    continue
                seen.add(key)
                yield g, rel, i, cl, cr


def _cyclic_key(darts):
    k = min(range(len(darts)), key=lambda j: darts[j])
    return tuple(darts[k:] + darts[:k])
