"""Orientation strings for pointed digraph cycles.

A cycle ``c_0 c_1 ... c_{m-1} c_0`` is written as a word ``x_1 ... x_m`` over
``{'+', '-', '*'}``; the 1-based symbol ``x_i`` describes the edge
``c_{i-1} c_i`` ('+' forward, '-' backward, '*' both directions).  The same
type doubles as a plain word when strings are concatenated or matched.

Positions are 1-based in docstrings (to line up with the usual notation) and
0-based in code.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Iterator, Union

FORWARD = "+"
BACKWARD = "-"
SYMMETRIC = "*"
ALPHABET = frozenset((FORWARD, BACKWARD, SYMMETRIC))

_FLIP = str.maketrans("+-", "-+")


class OrientationSymbol(str, enum.Enum):
    FORWARD = FORWARD
    BACKWARD = BACKWARD
    SYMMETRIC = SYMMETRIC

    def __str__(self) -> str:
        return self.value


class InvalidSymbol(ValueError):
    """Raised when a string contains a character outside ``+ - *``.

    ``position`` is 1-based.
    """

    def __init__(self, position: int, char: str):
        self.position = position
        self.char = char
        super().__init__(f"invalid orientation symbol {char!r} at position {position}")


@dataclass(frozen=True)
class OrientationString:
    """Immutable orientation string; ``str(s)`` renders it as ``+ - *`` text."""

    text: str

    def __post_init__(self):
        if not self.text:
            raise ValueError("orientation string must be non-empty")
        for pos, ch in enumerate(self.text, 1):
            if ch not in ALPHABET:
                raise InvalidSymbol(pos, ch)

    def __len__(self) -> int:
        return len(self.text)

    def __iter__(self) -> Iterator[str]:
        return iter(self.text)

    def __getitem__(self, index):
        return self.text[index]

    def __str__(self) -> str:
        return self.text

    def symbols(self) -> tuple[OrientationSymbol, ...]:
        return tuple(OrientationSymbol(ch) for ch in self.text)

    def is_directed(self) -> bool:
        return self.text in (FORWARD * len(self), BACKWARD * len(self))

    def is_symmetric(self) -> bool:
        return self.text == SYMMETRIC * len(self)


StringLike = Union[OrientationString, str]


def as_orientation(s: StringLike) -> OrientationString:
    if isinstance(s, OrientationString):
        return s
    return parse_orientation_string(s)


def _text(s: StringLike) -> str:
    if isinstance(s, OrientationString):
        return s.text
    if isinstance(s, str) and s and not s.strip(FORWARD + BACKWARD + SYMMETRIC):
        return s  # already valid; skip building a wrapper
    return as_orientation(s).text


@dataclass(frozen=True)
class RootFactorization:
    root: OrientationString
    multiplicity: int

    @property
    def r(self) -> int:
        return self.multiplicity

    @property
    def s(self) -> int:
        return len(self.root)


class TargetClass(enum.Enum):
    CONTRACTIBLE = "Contractible"
    NON_CONTRACTIBLE_DIRECTED_3_CYCLE = "NonContractibleDirected3Cycle"
    NON_CONTRACTIBLE_LONG = "NonContractibleLong"

    @property
    def contractible(self) -> bool:
        return self is TargetClass.CONTRACTIBLE


def parse_orientation_string(text: str) -> OrientationString:
    """Parse ``text`` into an :class:`OrientationString`.

    Raises ``ValueError`` for empty input and :class:`InvalidSymbol` for any
    character other than ``+``, ``-`` or ``*``.
    """
    return OrientationString(str(text))


def shift(s: StringLike, i: int) -> OrientationString:
    """The i-th shift: move the base point forward by ``i`` (left rotation)."""
    t = _text(s)
    i %= len(t)
    return OrientationString(t[i:] + t[:i])


def flip(symbol: str) -> str:
    return symbol.translate(_FLIP)


def reverse(s: StringLike) -> OrientationString:
    """The same cycle traversed the other way, base point unchanged.

    Symbol ``j`` of the result is ``x_{m+1-j}`` with ``+``/``-`` swapped.
    """
    return OrientationString(_text(s)[::-1].translate(_FLIP))


def concat_power(s: StringLike, k: int, suffix: StringLike | None = None) -> OrientationString:
    if k < 1:
        raise ValueError("power must be >= 1")
    t = _text(s) * k
    if suffix is not None:
        t += _text(suffix)
    return OrientationString(t)


def primitive_root(s: StringLike) -> RootFactorization:
    """Shortest root ``q`` with ``q ** r == s``.

    Only divisors ``i`` of ``len(s)`` are tried as periods, each with a single
    O(n) rotation comparison.
    """
    t = _text(s)
    n = len(t)
    for i in _divisors(n):
        if t[i:] + t[:i] == t:
            return RootFactorization(OrientationString(t[:i]), n // i)
    raise AssertionError("unreachable: n is always a period")


def _divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def classify_target(d: StringLike) -> TargetClass:
    t = _text(d)
    if len(t) < 3:
        raise ValueError(f"a cycle needs length >= 3, got {len(t)}")
    if len(t) >= 4:
        return TargetClass.NON_CONTRACTIBLE_LONG
    if t in ("+++", "---"):
        return TargetClass.NON_CONTRACTIBLE_DIRECTED_3_CYCLE
    return TargetClass.CONTRACTIBLE


def all_strings(length: int) -> Iterator[str]:
    """Every orientation word of the given length, in lexicographic ``+ - *`` order."""
    for combo in itertools.product("+-*", repeat=length):
        yield "".join(combo)
