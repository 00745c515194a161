"""
File formats, fixture generation, SVG rendering and the ``reldual`` command.

JSON formats
------------
graph
    ``{"surface": "torus" | "cylinder", "vertices": [...], "darts": [{"id",
    "twin", "vertex", "next_cw", "tokens"}], "crossing_face": d}`` on the
    torus, ``"outer_faces": [s, t]`` instead of ``crossing_face`` on the
    cylinder.
rel
    ``{"edges": [{"dart": forward dart, "color": "blue" | "red"}]}``.
dual
    ``{"kind", "Q": [p1, p2, p3, p4], "t_M", "t_H", "rects": {vertex:
    [xl, xr, yb, yt]}}``.

Every command prints one JSON document on standard output and exits with
status 0 on success and 1 otherwise; errors are reported as
``{"error": <type>, "message": ..., "location": ...}``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from importlib import resources
from typing import IO, Iterable, List, Optional, Sequence, Tuple, Union

from .cylinder import build_cylindrical_dual
from .errors import GraphValidationError, ParseError, ReldualError, ValidationError
from .fixtures import grid_canonical_rel, stacked_rings, torus_grid, twisted_grid
from .graph import EmbeddedCylinderGraph, EmbeddedTorusGraph, build_cylinder_graph, build_torus_graph, is_ptc, is_ptt
from .labeling import BLUE, RED, RegularEdgeLabeling
from .rel import classify, validate_cylindrical_rel, validate_toroidal_rel
from .torus_dual import RectangularDual, build_toroidal_dual
from .verify import (
    brute_force_classification,
    check_cylindrical_dual,
    check_toroidal_dual,
    contact_matching,
    random_rel,
    same_classification,
    _Lattice,
    _window_lifts,
)

__all__ = [
    "load_json",
    "parse_graph",
    "parse_rel",
    "parse_dual",
    "graph_to_json",
    "rel_to_json",
    "dual_to_json",
    "fixture_path",
    "render_svg",
    "SvgOptions",
    "main",
]

Source = Union[str, os.PathLike, IO[str], dict]


# ----------------------------------------------------------------------
# parsing


def load_json(src: Source) -> Tuple[object, str]:
    """Read JSON from a path, an open file or an already decoded object.

    Returns the decoded value and a name for error locations.

    Raises
    ------
    ParseError
        If the file cannot be read or is not valid JSON.
    """
    if isinstance(src, dict):
        return src, "<object>"
    if hasattr(src, "read"):
        name = getattr(src, "name", "<stream>")
        text = src.read()
    else:
        name = os.fspath(src)
        try:
            with open(name, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise ParseError(exc.strerror or str(exc), location=name) from exc
    try:
        return json.loads(text), str(name)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, location=f"{name}:{exc.lineno}:{exc.colno}") from exc


def _require(cond: bool, message: str, location: str) -> None:
    if not cond:
        raise ParseError(message, location=location)


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def _check_graph_shape(raw, name: str) -> str:
    _require(isinstance(raw, dict), "graph must be a JSON object", name)
    surface = raw.get("surface", "torus" if "crossing_face" in raw else "cylinder")
    _require(surface in ("torus", "cylinder"), f"unknown surface {surface!r}", f"{name}: surface")
    verts = raw.get("vertices")
    _require(isinstance(verts, list) and all(_is_int(v) for v in verts), "vertices must be a list of integers", f"{name}: vertices")
    darts = raw.get("darts")
    _require(isinstance(darts, list) and darts, "darts must be a non-empty list", f"{name}: darts")
    ids = set()
    for k, rec in enumerate(darts):
        loc = f"{name}: darts[{k}]"
        _require(isinstance(rec, dict), "dart must be an object", loc)
        for key in ("id", "twin", "vertex", "next_cw"):
            _require(_is_int(rec.get(key)), f"missing or non-integer {key!r}", loc)
        loc = f"{name}: dart {rec['id']}"
        _require(rec["id"] not in ids, "duplicate dart id", loc)
        ids.add(rec["id"])
        tokens = rec.get("tokens", [])
        _require(isinstance(tokens, list), "tokens must be a list", loc)
        for t in tokens:
            _require(t in ("+M", "-M", "+H", "-H"), f"unknown token {t!r}", loc)
    _require(ids == set(range(len(darts))), f"dart ids must be 0..{len(darts) - 1}", f"{name}: darts")
    vset = set(verts)
    for rec in darts:
        loc = f"{name}: dart {rec['id']}"
        _require(rec["twin"] in ids, f"dangling twin {rec['twin']}", loc)
        _require(rec["next_cw"] in ids, f"dangling next_cw {rec['next_cw']}", loc)
        _require(rec["vertex"] in vset, f"unknown vertex {rec['vertex']}", loc)
    if surface == "torus":
        _require(_is_int(raw.get("crossing_face")), "crossing_face must be a dart id", f"{name}: crossing_face")
    else:
        of = raw.get("outer_faces")
        _require(isinstance(of, list) and len(of) == 2 and all(_is_int(x) for x in of), "outer_faces must be two dart ids", f"{name}: outer_faces")
    return surface


def parse_graph(src: Source) -> Union[EmbeddedTorusGraph, EmbeddedCylinderGraph]:
    """Read and validate a graph file.

    Raises
    ------
    ParseError
        Malformed JSON or records (bad types, dangling dart references).
    ValidationError
        Well-formed records that violate an embedding invariant; the
        violations are attached as ``report``.
    """
    raw, name = load_json(src)
    surface = _check_graph_shape(raw, name)
    try:
        return build_torus_graph(raw) if surface == "torus" else build_cylinder_graph(raw)
    except GraphValidationError as exc:
        from .errors import Report

        rep = Report("graph", list(exc.violations))
        first = exc.violations[0]
        loc = f"{name}: {first.code}" if first.where is None else f"{name}: {first.code} at {first.where}"
        raise ValidationError(first.message, location=loc, report=rep) from exc


def parse_rel(src: Source, g) -> RegularEdgeLabeling:
    """Read a REL file for graph ``g``.

    Raises
    ------
    ParseError
        Malformed JSON or records.
    ValidationError
        Unknown or repeated edges, missing edges, unknown colors.
    """
    raw, name = load_json(src)
    _require(isinstance(raw, dict) and isinstance(raw.get("edges"), list), "REL must be an object with an 'edges' list", name)
    fwd = {}
    for k, rec in enumerate(raw["edges"]):
        loc = f"{name}: edges[{k}]"
        _require(isinstance(rec, dict) and _is_int(rec.get("dart")), "edge needs an integer 'dart'", loc)
        d = rec["dart"]
        if not 0 <= d < g.num_darts:
            raise ValidationError(f"unknown edge: dart {d} is not in the graph", location=loc)
        if d in fwd or g.twin[d] in fwd:
            raise ValidationError(f"edge of dart {d} listed twice", location=loc)
        if rec.get("color") not in ("blue", "red"):
            raise ValidationError(f"unknown color {rec.get('color')!r}", location=loc)
        fwd[d] = rec["color"]
    try:
        return RegularEdgeLabeling(g, fwd)
    except ValidationError as exc:
        raise ValidationError(str(exc), location=name) from exc


def parse_dual(src: Source) -> RectangularDual:
    """Read a dual file.

    Raises
    ------
    ParseError
    """
    raw, name = load_json(src)
    _require(isinstance(raw, dict), "dual must be a JSON object", name)
    for key in ("Q", "t_M", "rects"):
        _require(key in raw, f"missing {key!r}", name)
    q = raw["Q"]
    _require(isinstance(q, list) and len(q) == 4 and all(_point(p) for p in q), "Q must be four integer points", f"{name}: Q")
    _require(_point(raw["t_M"]), "t_M must be an integer point", f"{name}: t_M")
    _require(raw.get("t_H") is None or _point(raw["t_H"]), "t_H must be an integer point or null", f"{name}: t_H")
    rects = raw["rects"]
    _require(isinstance(rects, dict), "rects must be an object", f"{name}: rects")
    for v, r in rects.items():
        loc = f"{name}: rects[{v}]"
        _require(str(v).lstrip("-").isdigit(), "rectangle keys must be vertex ids", loc)
        _require(isinstance(r, list) and len(r) == 4 and all(_is_int(x) for x in r), "rectangle must be [xl, xr, yb, yt]", loc)
    return RectangularDual.from_json(raw)


def _point(p) -> bool:
    return isinstance(p, (list, tuple)) and len(p) == 2 and all(_is_int(x) for x in p)


def graph_to_json(g) -> dict:
    return g.to_raw()


def rel_to_json(rel: RegularEdgeLabeling) -> dict:
    return rel.to_raw()


def dual_to_json(dual: RectangularDual) -> dict:
    return dual.to_json()


def fixture_path(name: str) -> str:
    """Path of a fixture file shipped with the package, e.g. ``"grid_3x3.json"``."""
    return str(resources.files("reldual") / "data" / name)


# ----------------------------------------------------------------------
# SVG


class SvgOptions:
    """Rendering options for :func:`render_svg`.

    Parameters
    ----------
    scale : int
        Pixels per unit.
    margin : int
        Border in pixels around the fundamental domain.
    labels : bool
        Write vertex ids at rectangle centres.
    contacts : bool
        Overlay the contact edges (needs the graph): blue solid, red dashed.
    """

    def __init__(self, scale: int = 20, margin: int = 10, labels: bool = True, contacts: bool = True):
        self.scale = scale
        self.margin = margin
        self.labels = labels
        self.contacts = contacts


def _fmt(x) -> str:
    if float(x).is_integer():
        return str(int(x))
    return f"{float(x):.2f}"


def render_svg(dual: RectangularDual, g=None, rel: Optional[RegularEdgeLabeling] = None, options: Optional[SvgOptions] = None) -> str:
    """Draw a dual as an SVG document.

    The fundamental domain ``Q`` is outlined and used as clip path; every
    lift of every rectangle meeting ``Q`` is drawn, so rectangles wrapping
    around the torus or cylinder appear as several clipped pieces.  The
    y-axis is flipped only here; model coordinates point up.
    """
    opt = options or SvgOptions()
    lat = _Lattice(dual.t_M, dual.t_H)
    xs = [p[0] for p in dual.Q]
    ys = [p[1] for p in dual.Q]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    s, m = opt.scale, opt.margin
    width = (x1 - x0) * s + 2 * m
    height = (y1 - y0) * s + 2 * m

    def X(x):
        return _fmt((x - x0) * s + m)

    def Y(y):
        return _fmt((y1 - y) * s + m)

    poly = " ".join(f"{X(p[0])},{Y(p[1])}" for p in dual.Q)
    out: List[str] = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">',
        f'<defs><clipPath id="Q"><polygon points="{poly}"/></clipPath></defs>',
        '<g clip-path="url(#Q)">',
    ]
    box = (x0, x1, y0, y1)
    lifts = _window_lifts(dual.rects, lat, box, closed=False)
    for v, t, r in lifts:
        out.append(
            f'<rect x="{X(r[0])}" y="{Y(r[3])}" width="{_fmt((r[1] - r[0]) * s)}" height="{_fmt((r[3] - r[2]) * s)}" '
            f'fill="#f2f2f2" stroke="black" stroke-width="1" data-vertex="{v}"/>'
        )
    if opt.contacts and g is not None:
        match = contact_matching(dual, g)
        color_of = None if rel is None else rel.color
        centre = {v: ((r[0] + r[1]) / 2, (r[2] + r[3]) / 2) for v, r in dual.rects.items()}
        for v, t, r in lifts:
            for d in g.darts_at(v):
                if rel is not None and not rel.is_out[d]:
                    continue
                side, tw = match[d]
                if rel is None and d > g.twin[d]:
                    continue
                c = (centre[v][0] + t[0], centre[v][1] + t[1])
                w = g.head(d)
                e = (centre[w][0] + tw[0] + t[0], centre[w][1] + tw[1] + t[1])
                horizontal = side in (0, 2)
                red = color_of[d] == RED if color_of is not None else not horizontal
                style = 'stroke="#c0392b" stroke-dasharray="4,3"' if red else 'stroke="#2e6fd9"'
                out.append(f'<line x1="{X(c[0])}" y1="{Y(c[1])}" x2="{X(e[0])}" y2="{Y(e[1])}" {style} stroke-width="1.5"/>')
    if opt.labels:
        for v, t, r in lifts:
            cx, cy = (r[0] + r[1]) / 2, (r[2] + r[3]) / 2
            out.append(
                f'<text x="{X(cx)}" y="{Y(cy)}" font-size="{max(8, s // 2)}" text-anchor="middle" '
                f'dominant-baseline="central">{v}</text>'
            )
    out.append("</g>")
    out.append(f'<polygon points="{poly}" fill="none" stroke="black" stroke-width="2"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


# ----------------------------------------------------------------------
# commands


class CommandFailed(Exception):
    """Command finished but did not succeed; carries the JSON payload."""

    def __init__(self, payload: dict):
        self.payload = payload
        super().__init__(payload)


def _emit(payload, stream=None) -> None:
    stream = stream or sys.stdout
    stream.write(json.dumps(payload, sort_keys=True) + "\n")


def _write_json(path: Optional[str], payload) -> None:
    if path is None or path == "-":
        _emit(payload)
        return
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=1, sort_keys=True)
        fh.write("\n")


def _check(dual, g, rel):
    if isinstance(g, EmbeddedCylinderGraph):
        return check_cylindrical_dual(dual, g, rel)
    return check_toroidal_dual(dual, g, rel)


def cmd_validate(args) -> dict:
    g = parse_graph(args.graph)
    rep = is_ptt(g) if isinstance(g, EmbeddedTorusGraph) else is_ptc(g)
    out = {"surface": g.surface, "graph": rep.to_json()}
    ok = rep.ok
    if args.rel:
        rel = parse_rel(args.rel, g)
        rrep = validate_toroidal_rel(g, rel) if isinstance(g, EmbeddedTorusGraph) else validate_cylindrical_rel(g, rel)
        out["rel"] = rrep.to_json()
        ok = ok and rrep.ok
    out["ok"] = ok
    if not ok:
        raise CommandFailed(out)
    return out


def cmd_classify(args) -> dict:
    g = parse_graph(args.graph)
    if not isinstance(g, EmbeddedTorusGraph):
        raise ValidationError("classify needs a torus graph", location=str(args.graph))
    rel = parse_rel(args.rel, g)
    rep = validate_toroidal_rel(g, rel)
    if not rep.ok:
        raise ValidationError(rep.violations[0].message, location=str(args.rel), report=rep)
    res = classify(g, rel)
    out = res.to_json()
    if args.oracle:
        oracle = brute_force_classification(g, rel, max_vertices=args.max_oracle_vertices)
        out["oracle"] = oracle.to_json()
        if not same_classification(res, oracle):
            out["error"] = "OracleDisagreement"
            raise CommandFailed(out)
    return out


def _svg(args, dual, g, rel) -> None:
    if args.svg:
        with open(args.svg, "w", encoding="utf-8") as fh:
            fh.write(render_svg(dual, g, rel))


def cmd_dual(args) -> dict:
    g = parse_graph(args.graph)
    if not isinstance(g, EmbeddedTorusGraph):
        raise ValidationError("dual needs a torus graph; use cylinder-dual", location=str(args.graph))
    rel = parse_rel(args.rel, g)
    rep = validate_toroidal_rel(g, rel)
    if not rep.ok:
        raise ValidationError(rep.violations[0].message, location=str(args.rel), report=rep)
    dual = build_toroidal_dual(g, rel)
    check = check_toroidal_dual(dual, g, rel)
    if not check.ok:
        raise CommandFailed({"error": "SelfCheckFailed", "report": check.to_json()})
    _write_json(args.output, dual.to_json())
    _svg(args, dual, g, rel)
    return {"ok": True, "kind": dual.kind, "output": args.output, "svg": args.svg} if args.output else None


def cmd_cylinder_dual(args) -> dict:
    g = parse_graph(args.graph)
    if not isinstance(g, EmbeddedCylinderGraph):
        raise ValidationError("cylinder-dual needs a cylinder graph", location=str(args.graph))
    dual = build_cylindrical_dual(g)
    rel = dual.info["rel"]
    check = check_cylindrical_dual(dual, g, rel)
    if not check.ok:
        raise CommandFailed({"error": "SelfCheckFailed", "report": check.to_json()})
    if args.rel_out:
        _write_json(args.rel_out, rel.to_raw())
    _write_json(args.output, dual.to_json())
    _svg(args, dual, g, rel)
    return {"ok": True, "kind": dual.kind, "output": args.output, "svg": args.svg} if args.output else None


def cmd_gen_fixture(args) -> dict:
    p = args.params
    need = {"grid": 2, "twisted": 3, "rings": 2}[args.family]
    if len(p) != need:
        raise ParseError(f"{args.family} takes {need} size parameters, got {len(p)}", location="gen-fixture")
    if args.family == "grid":
        g = torus_grid(*p)
    elif args.family == "twisted":
        g = twisted_grid(*p)
    else:
        g = stacked_rings(*p)
    _write_json(args.output, g.to_raw())
    if args.rel_out:
        if args.family == "rings":
            raise ParseError("ring fixtures have no toroidal REL; use cylinder-dual", location="--rel-out")
        rel = grid_canonical_rel(g) if args.seed is None else random_rel(g, seed=args.seed)
        _write_json(args.rel_out, rel.to_raw())
    return {"ok": True, "output": args.output, "rel": args.rel_out} if args.output else None


def cmd_verify(args) -> dict:
    g = parse_graph(args.graph)
    rel = parse_rel(args.rel, g)
    dual = parse_dual(args.dual)
    rep = _check(dual, g, rel)
    out = rep.to_json()
    if not rep.ok:
        raise CommandFailed(out)
    return out


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="reldual", description="Regular edge labelings and rectangular duals on the flat torus and cylinder.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a graph (and optionally a REL)")
    p.add_argument("graph")
    p.add_argument("rel", nargs="?")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("classify", help="classify a toroidal REL")
    p.add_argument("graph")
    p.add_argument("rel")
    p.add_argument("--oracle", action="store_true", help="cross-check with the brute-force oracle")
    p.add_argument("--max-oracle-vertices", type=int, default=12, metavar="N")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("dual", help="rectangular dual realizing a toroidal REL")
    p.add_argument("graph")
    p.add_argument("rel")
    p.add_argument("-o", "--output", help="dual JSON file (default: stdout)")
    p.add_argument("--svg", metavar="PATH")
    p.set_defaults(func=cmd_dual)

    p = sub.add_parser("cylinder-dual", help="cylindrical REL and rectangular dual of a PTC graph")
    p.add_argument("graph")
    p.add_argument("-o", "--output", help="dual JSON file (default: stdout)")
    p.add_argument("--rel-out", metavar="PATH", help="write the computed REL")
    p.add_argument("--svg", metavar="PATH")
    p.set_defaults(func=cmd_cylinder_dual)

    p = sub.add_parser("gen-fixture", help="write a fixture graph")
    p.add_argument("family", choices=["grid", "twisted", "rings"])
    p.add_argument("params", type=int, nargs="+", help="grid A B | twisted A B K | rings C K")
    p.add_argument("-o", "--output", help="graph JSON file (default: stdout)")
    p.add_argument("--rel-out", metavar="PATH", help="also write a REL (canonical, or random with --seed)")
    p.add_argument("--seed", type=int, help="draw a random REL with this seed")
    p.set_defaults(func=cmd_gen_fixture)

    p = sub.add_parser("verify", help="verify a dual against a graph and REL")
    p.add_argument("graph")
    p.add_argument("rel")
    p.add_argument("dual")
    p.set_defaults(func=cmd_verify)
    return ap


def _error_payload(exc: BaseException) -> dict:
    out = {"error": type(exc).__name__, "message": str(exc)}
    loc = getattr(exc, "location", None)
    if loc is not None:
        out["location"] = loc
    rep = getattr(exc, "report", None)
    if rep is not None and hasattr(rep, "to_json"):
        out["report"] = rep.to_json()
    witness = getattr(exc, "edge", None)
    if witness is not None:
        out["witness"] = {"dart": witness, "color": {BLUE: "blue", RED: "red"}.get(getattr(exc, "color", None))}
    return out


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Entry point of the ``reldual`` command; returns the exit status."""
    args = build_parser().parse_args(argv)
    try:
        out = args.func(args)
    except CommandFailed as exc:
        _emit(exc.payload)
        return 1
    except (ReldualError, ValueError) as exc:
        _emit(_error_payload(exc))
        return 1
    if out is not None:
        _emit(out)
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
