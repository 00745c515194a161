"""Exception hierarchy and validation reports shared by all modules."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, List, Optional


@dataclass(frozen=True)
class Violation:
    """One violated invariant.

    Attributes
    ----------
    code : str
        Short machine-readable tag, for example ``"TokenMismatch"``.
    message : str
        Human-readable description.
    where : object, optional
        The vertex, dart, edge or face the violation refers to.
    """

    code: str
    message: str
    where: Any = None

    def to_json(self) -> dict:
        return {"code": self.code, "message": self.message, "where": _jsonable(self.where)}


def _jsonable(x):
    if isinstance(x, (list, tuple)):
        return [_jsonable(y) for y in x]
    if isinstance(x, (int, str, float, bool)) or x is None:
        return x
    return str(x)


@dataclass
class Report:
    """Outcome of a structural or geometric check.

    A report is truthy iff no violation was recorded.
    """

    name: str
    violations: List[Violation] = field(default_factory=list)
    checks: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def add(self, code: str, message: str, where: Any = None) -> None:
        self.violations.append(Violation(code, message, where))

    def codes(self) -> set:
        return {v.code for v in self.violations}

    def mark(self, check: str, passed: bool) -> None:
        self.checks[check] = bool(passed) and self.checks.get(check, True)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "ok": self.ok,
            "checks": dict(self.checks),
            "violations": [v.to_json() for v in self.violations],
        }

    def __repr__(self) -> str:
        state = "ok" if self.ok else f"{len(self.violations)} violation(s)"
        return f"<Report {self.name}: {state}>"


class ReldualError(Exception):
    """Base class of all library errors."""


class GraphValidationError(ReldualError):
    """A raw graph description violates one or more invariants.

    The subclass raised matches the code of the first violation; the full
    list is always available as :attr:`violations`.
    """

    def __init__(self, violations: List[Violation]):
        self.violations = list(violations)
        lines = [f"{v.code}: {v.message}" for v in self.violations[:20]]
        more = len(self.violations) - 20
        if more > 0:
            lines.append(f"... and {more} more")
        super().__init__("; ".join(lines))

    @property
    def codes(self) -> set:
        return {v.code for v in self.violations}


class NonInvolutiveTwin(GraphValidationError):
    pass


class EulerMismatch(GraphValidationError):
    pass


class TokenMismatch(GraphValidationError):
    pass


class DisconnectedGraph(GraphValidationError):
    pass


class InvalidRotation(GraphValidationError):
    pass


_VALIDATION_CLASSES = {
    "NonInvolutiveTwin": NonInvolutiveTwin,
    "EulerMismatch": EulerMismatch,
    "TokenMismatch": TokenMismatch,
    "DisconnectedGraph": DisconnectedGraph,
    "InvalidRotation": InvalidRotation,
}


def raise_validation(violations: List[Violation]) -> None:
    if not violations:
        return
    cls = _VALIDATION_CLASSES.get(violations[0].code, GraphValidationError)
    raise cls(violations)


class NotClosed(ReldualError):
    """A dart sequence is not a closed walk."""


class NoEdgesOfColor(ReldualError):
    """The requested color class of a REL is empty."""


class PreconditionViolation(ReldualError):
    """Inputs do not meet the documented preconditions."""


class NotRealizable(ReldualError):
    """The REL has a lonely edge, so no feedback walk exists."""

    def __init__(self, message: str, edge: Optional[int] = None):
        super().__init__(message)
        self.edge = edge


class Unrealizable(ReldualError):
    """No rectangular dual realizes the REL; carries the lonely edge."""

    def __init__(self, edge: int, color: int):
        super().__init__(f"REL is unrealizable: dart {edge} (color {color}) lies on no cycle")
        self.edge = edge
        self.color = color


class NotFeedback(ReldualError):
    """A closed walk does not break every directed cycle of the dual."""


class NotOrbital(ReldualError):
    pass


class NotSlanted(ReldualError):
    pass


class TraceFailure(ReldualError):
    """Tracing an orbit curve through the constructed dual went wrong."""


class NoProgress(ReldualError):
    """No removable set was found in a PTC graph."""


class NotPTC(ReldualError):
    def __init__(self, report: Report):
        self.report = report
        super().__init__("graph is not PTC: " + "; ".join(v.message for v in report.violations[:10]))


class AmbiguousContact(ReldualError):
    """Two rectangles touch in a single point only."""


class TooLarge(ReldualError):
    """Input exceeds the size bound of a brute-force oracle."""


class ParseError(ReldualError):
    def __init__(self, message: str, location: Optional[str] = None):
        self.location = location
        super().__init__(f"{location}: {message}" if location else message)


class ValidationError(ReldualError):
    def __init__(self, message: str, location: Optional[str] = None, report: Optional[Report] = None):
        self.location = location
        self.report = report
        super().__init__(f"{location}: {message}" if location else message)
