"""
Homotopy classes of closed curves on the flat torus.

A closed curve on the unit flat torus is described, up to homotopy, by how
often it crosses the two orbit curves: the meridian ``M`` (the vertical
side of the unit square) and the horizon ``H`` (the horizontal side).
Crossing ``M`` from left to right counts +1 towards ``m``; crossing ``H``
from bottom to top counts +1 towards ``h``.  The meridian itself has class
``(0, 1)`` and the horizon has class ``(1, 0)``.

Everything here is plain integer arithmetic.  Python integers never wrap,
so large walk classes stay exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Tuple

__all__ = [
    "HomotopyClass",
    "ZERO",
    "MERIDIAN",
    "HORIZON",
    "algebraic_crossing",
    "is_parallel",
    "is_reverse_parallel",
    "is_orbital",
    "class_of_tokens",
]


@dataclass(frozen=True, order=True)
class HomotopyClass:
    """Integer pair ``(m, h)`` of signed crossings with ``M`` and ``H``.

    Parameters
    ----------
    m : int
        Signed crossings of the meridian, left-to-right positive.
    h : int
        Signed crossings of the horizon, bottom-to-top positive.

    Notes
    -----
    Any integer pair is allowed.  Simple non-contractible curves always give
    a primitive pair, but closed walks built by concatenation need not.
    """

    m: int
    h: int

    def __post_init__(self):
        if not isinstance(self.m, int) or not isinstance(self.h, int):
            raise TypeError("homotopy class entries must be integers")

    def __add__(self, other: "HomotopyClass") -> "HomotopyClass":
        return HomotopyClass(self.m + other.m, self.h + other.h)

    def __sub__(self, other: "HomotopyClass") -> "HomotopyClass":
        return HomotopyClass(self.m - other.m, self.h - other.h)

    def __neg__(self) -> "HomotopyClass":
        return HomotopyClass(-self.m, -self.h)

    def __mul__(self, k: int) -> "HomotopyClass":
        return HomotopyClass(k * self.m, k * self.h)

    __rmul__ = __mul__

    def __iter__(self):
        yield self.m
        yield self.h

    @property
    def is_contractible(self) -> bool:
        return self.m == 0 and self.h == 0

    def is_primitive(self) -> bool:
        """True if ``gcd(|m|, |h|) == 1``."""
        return gcd(self.m, self.h) == 1

    def rotated(self) -> "HomotopyClass":
        """Quarter turn ``(m, h) -> (-h, m)``.

        It maps the horizon class ``(1, 0)`` to the meridian class ``(0, 1)``
        and preserves crossing numbers, so statements about color 2 can be
        reduced to the matching statements about color 1.
        """
        return HomotopyClass(-self.h, self.m)

    def as_tuple(self) -> Tuple[int, int]:
        return (self.m, self.h)

    def __repr__(self) -> str:
        return f"HomotopyClass({self.m}, {self.h})"


ZERO = HomotopyClass(0, 0)
MERIDIAN = HomotopyClass(0, 1)
HORIZON = HomotopyClass(1, 0)


def _coerce(a) -> HomotopyClass:
    if isinstance(a, HomotopyClass):
        return a
    m, h = a
    return HomotopyClass(int(m), int(h))


def algebraic_crossing(a, b) -> int:
    """Algebraic crossing number of two classes.

    Parameters
    ----------
    a, b : HomotopyClass or pair of int

    Returns
    -------
    int
        ``a.m * b.h - a.h * b.m``.  Positive values mean that curves of
        class ``a`` cross curves of class ``b`` more often from left to
        right than from right to left.

    Examples
    --------
    >>> algebraic_crossing((2, 1), (-1, 3))
    7
    >>> algebraic_crossing((0, 1), (1, 0))
    -1
    """
    a = _coerce(a)
    b = _coerce(b)
    return a.m * b.h - a.h * b.m


def is_parallel(a, b) -> bool:
    return _coerce(a) == _coerce(b)


def is_reverse_parallel(a, b) -> bool:
    return _coerce(a) == -_coerce(b)


def is_orbital(a, i: int) -> bool:
    """True if ``a`` is the class of the ``i``-th orbit.

    ``i = 1`` refers to the meridian ``(0, 1)``, ``i = 2`` to the horizon
    ``(1, 0)``.
    """
    if i == 1:
        return _coerce(a) == MERIDIAN
    if i == 2:
        return _coerce(a) == HORIZON
    raise ValueError(f"axis must be 1 or 2, got {i!r}")


_TOKEN_VALUE = {"+M": (1, 0), "-M": (-1, 0), "+H": (0, 1), "-H": (0, -1)}


def class_of_tokens(tokens: Iterable[str]) -> HomotopyClass:
    """Sum a sequence of signed orbit tokens into a class."""
    m = h = 0
    for t in tokens:
        try:
            dm, dh = _TOKEN_VALUE[t]
        except KeyError:
            raise ValueError(f"unknown orbit token {t!r}") from None
        m += dm
        h += dh
    return HomotopyClass(m, h)
