"""
Regular edge labelings and rectangular duals on the flat torus and cylinder.

Graphs are combinatorial maps (darts with twin, rotation and orbit tokens
recording crossings with the meridian ``M`` and horizon ``H``).  The main
entry points are

* :func:`classify`: unrealizable, orbital or slanted for a toroidal REL;
* :func:`build_toroidal_dual`: a rectangular dual realizing a realizable
  toroidal REL, on a rectangular or a slanted flat torus;
* :func:`build_cylindrical_dual`: REL and rectangular dual of a properly
  triangulated cylindrical graph;
* :func:`check_toroidal_dual` / :func:`check_cylindrical_dual`: exact
  geometric verification.
"""

from .homotopy import HORIZON, MERIDIAN, HomotopyClass, algebraic_crossing
from .errors import ReldualError, Report, Violation
from .graph import (
    EmbeddedCylinderGraph,
    EmbeddedTorusGraph,
    build_cylinder_graph,
    build_torus_graph,
    is_ptc,
    is_ptt,
    walk_homotopy,
)
from .labeling import BLUE, RED, RegularEdgeLabeling
from .walks import ClosedWalk
from .rel import (
    Classification,
    classify,
    is_realizable,
    left_first_cycle,
    right_first_cycle,
    validate_cylindrical_rel,
    validate_toroidal_rel,
)
from .cycles import combine_cycles, feedback_closed_walk, split_along
from .torus_dual import RectangularDual, build_orbital_dual, build_slanted_dual, build_toroidal_dual
from .cylinder import build_cylindrical_dual, cylindrical_rel, extend_to_torus, find_removable_set
from .verify import (
    brute_force_classification,
    check_cylindrical_dual,
    check_toroidal_dual,
    extract_rel,
)

__version__ = "0.1.0"

__all__ = [
    "HomotopyClass", "MERIDIAN", "HORIZON", "algebraic_crossing",
    "ReldualError", "Report", "Violation",
    "EmbeddedTorusGraph", "EmbeddedCylinderGraph", "build_torus_graph", "build_cylinder_graph",
    "is_ptt", "is_ptc", "walk_homotopy",
    "RegularEdgeLabeling", "BLUE", "RED", "ClosedWalk",
    "Classification", "classify", "is_realizable", "left_first_cycle", "right_first_cycle",
    "validate_toroidal_rel", "validate_cylindrical_rel",
    "combine_cycles", "feedback_closed_walk", "split_along",
    "RectangularDual", "build_orbital_dual", "build_slanted_dual", "build_toroidal_dual",
    "cylindrical_rel", "extend_to_torus", "find_removable_set", "build_cylindrical_dual",
    "check_toroidal_dual", "check_cylindrical_dual", "extract_rel", "brute_force_classification",
]
