"""The regular edge labeling data type."""

from __future__ import annotations

from typing import Dict, Iterable, List, Mapping, Tuple

from .errors import ValidationError

BLUE = 1
RED = 2
COLOR_NAMES = {BLUE: "blue", RED: "red"}
COLOR_IDS = {"blue": BLUE, "red": RED, 1: BLUE, 2: RED}


class RegularEdgeLabeling:
    """Color and orientation of every edge of a host graph.

    The labeling is stored per dart: ``color[d]`` is the color of the edge of
    ``d`` and ``is_out[d]`` is true iff ``d`` is the forward dart of its edge.

    Parameters
    ----------
    g : EmbeddedGraph
    forward : mapping of int to color
        Forward dart of each edge and its color (``1``/``"blue"`` or
        ``2``/``"red"``).  Every edge must appear exactly once.

    Raises
    ------
    ValidationError
        If an edge is missing, listed twice, or a color is unknown.
    """

    def __init__(self, g, forward: Mapping[int, object]):
        n = g.num_darts
        color = [0] * n
        out = [False] * n
        for d, c in forward.items():
            if not isinstance(d, int) or not 0 <= d < n:
                raise ValidationError(f"unknown dart {d!r}", location=f"edge {d!r}")
            col = COLOR_IDS.get(c)
            if col is None:
                raise ValidationError(f"unknown color {c!r}", location=f"edge {d}")
            t = g.twin[d]
            if color[d] or color[t]:
                raise ValidationError(f"edge of dart {d} labeled twice", location=f"edge {d}")
            color[d] = color[t] = col
            out[d] = True
        missing = [d for d in range(n) if d < g.twin[d] and not color[d]]
        if missing:
            raise ValidationError(f"{len(missing)} edge(s) without label, e.g. dart {missing[0]}", location=f"edge {missing[0]}")
        self.color: List[int] = color
        self.is_out: List[bool] = out
        self.num_darts = n

    @classmethod
    def from_arrays(cls, g, color: Iterable[int], is_out: Iterable[bool]) -> "RegularEdgeLabeling":
        color = list(color)
        is_out = list(is_out)
        fwd = {d: color[d] for d in range(g.num_darts) if is_out[d]}
        return cls(g, fwd)

    def forward_darts(self, color=None) -> List[int]:
        """Forward darts, optionally of one color, in increasing order."""
        if color is None:
            return [d for d in range(self.num_darts) if self.is_out[d]]
        c = COLOR_IDS[color]
        return [d for d in range(self.num_darts) if self.is_out[d] and self.color[d] == c]

    def forward_of(self, d: int, twin: List[int]) -> int:
        return d if self.is_out[d] else twin[d]

    def as_dict(self) -> Dict[int, int]:
        return {d: self.color[d] for d in range(self.num_darts) if self.is_out[d]}

    def to_raw(self) -> dict:
        return {
            "edges": [
                {"dart": d, "color": COLOR_NAMES[c]} for d, c in sorted(self.as_dict().items())
            ]
        }

    def relabel(self, g, dart_map: Mapping[int, int]) -> "RegularEdgeLabeling":
        """Transport to another graph through an old-to-new dart map."""
        fwd = {}
        for d, c in self.as_dict().items():
            if d in dart_map:
                fwd[dart_map[d]] = c
        return RegularEdgeLabeling(g, fwd)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RegularEdgeLabeling):
            return NotImplemented
        return self.color == other.color and self.is_out == other.is_out

    def differences(self, other: "RegularEdgeLabeling") -> List[Tuple[int, str]]:
        """Edges (forward dart of ``self``) where the two labelings differ."""
        diffs = []
        for d in range(self.num_darts):
            if not self.is_out[d]:
                continue
            if self.color[d] != other.color[d] or not other.is_out[d]:
                diffs.append((d, f"{COLOR_NAMES[self.color[d]]}/{COLOR_NAMES.get(other.color[d], '?')}"))
        return diffs

    def __repr__(self) -> str:
        nb = sum(1 for d in range(self.num_darts) if self.is_out[d] and self.color[d] == BLUE)
        nr = self.num_darts // 2 - nb
        return f"<RegularEdgeLabeling blue={nb} red={nr}>"
