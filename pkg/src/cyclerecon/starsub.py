"""The ``<=*`` relation and streaming root-power matching.

``P <=* C`` when the symbols of ``P`` can be found, in order, at strictly
increasing positions of ``C``, where a ``*`` in ``P`` matches anything and a
``+``/``-`` in ``P`` only matches itself.  A ``*`` in the text ``C`` is *not* a
wildcard.

The streaming routines keep a pointer into a fixed root and a match counter,
and read the text exactly once, so ``C`` may be any iterable of symbols.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .orientation import SYMMETRIC, StringLike, _text


def symbol_matches(y: str, x: str) -> bool:
    """Whether pattern symbol ``y`` may be placed on text symbol ``x``."""
    return y == SYMMETRIC or y == x


@dataclass(frozen=True)
class SelectionFunction:
    """Strictly increasing 1-based positions ``alpha(1) < ... < alpha(p)``."""

    indices: tuple[int, ...]

    def __post_init__(self):
        idx = tuple(int(i) for i in self.indices)
        object.__setattr__(self, "indices", idx)
        if any(i < 1 for i in idx):
            raise ValueError("selection indices are 1-based")
        if any(a >= b for a, b in zip(idx, idx[1:])):
            raise ValueError(f"selection function must be strictly increasing: {idx}")

    def __len__(self) -> int:
        return len(self.indices)

    def __iter__(self):
        return iter(self.indices)

    def __str__(self) -> str:
        return ",".join(map(str, self.indices))

    def witnesses(self, pattern: StringLike, text: StringLike) -> bool:
        p, t = _text(pattern), _text(text)
        if len(self.indices) != len(p) or (self.indices and self.indices[-1] > len(t)):
            return False
        return all(symbol_matches(y, t[a - 1]) for y, a in zip(p, self.indices))


@dataclass(frozen=True)
class StreamCount:
    """Result of one greedy pass of a repeated root over a text."""

    matched: int
    period: int

    @property
    def power(self) -> int:
        """Number of complete root copies embedded."""
        return self.matched // self.period

    @property
    def power_ceil(self) -> int:
        # the ceil(c/p) reading; kept only for comparison/debug output
        return -(-self.matched // self.period)


def leftmost_embedding(pattern: StringLike, text: StringLike) -> Optional[SelectionFunction]:
    """Greedy leftmost selection function of ``pattern`` in ``text``, or ``None``."""
    p, t = _text(pattern), _text(text)
    picked = []
    k = 0
    for pos, x in enumerate(t, 1):
        if k == len(p):
            break
        if symbol_matches(p[k], x):
            picked.append(pos)
            k += 1
    if k < len(p):
        return None
    return SelectionFunction(tuple(picked))


def is_star_substring(pattern: StringLike, text: StringLike) -> bool:
    return leftmost_embedding(pattern, text) is not None


def _count(y: str, text: Iterable[str]) -> int:
    # y: pattern root, d: pointer into it, c: symbols matched so far
    p = len(y)
    d = 0
    c = 0
    for x in text:
        yd = y[d]
        if yd == "*" or yd == x:
            c += 1
            d += 1
            if d == p:
                d = 0
    return c


def greedy_stream_count(root: StringLike, text: Iterable[str]) -> StreamCount:
    """Greedily match ``root`` repeated forever against ``text`` in one pass.

    The working state is the root, a pointer into it, and a counter.
    """
    y = _text(root)
    return StreamCount(_count(y, text), len(y))


def _stream(text) -> Iterable[str]:
    return text.text if hasattr(text, "text") else text


def max_power(root: StringLike, text: StringLike) -> int:
    """Largest ``R`` with ``root**R <=* text`` (0 if no full copy fits)."""
    y = _text(root)
    return _count(y, _stream(text)) // len(y)


def max_power_over_shifts(root: StringLike, text: StringLike) -> tuple[int, int]:
    """Largest ``R`` with ``shift(root, i)**R <=* text`` for some ``i``.

    Returns ``(R, i)`` with the smallest witnessing shift ``i``.
    """
    y = _text(root)
    best, witness = -1, 0
    for i in range(len(y)):
        r = _count(y[i:] + y[:i], _stream(text)) // len(y)
        if r > best:
            best, witness = r, i
    return best, witness


def gamma_set(root: StringLike, text: StringLike, k: int) -> frozenset[int]:
    """Shifts ``i`` in ``[0, s)`` with ``shift(root, i)**k`` plus one more
    root symbol (the first of the shifted root) still ``<=* text``.

    Membership is the threshold ``count >= k*s + 1`` on a greedy pass.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    y = _text(root)
    s = len(y)
    need = k * s + 1
    return frozenset(
        i for i in range(s) if _count(y[i:] + y[:i], _stream(text)) >= need
    )


def occupied_shifts(root: StringLike, text: StringLike, k: int) -> frozenset[int]:
    """Shifts ``i`` in ``[0, s)`` with ``shift(root, i)**k <=* text``."""
    y = _text(root)
    s = len(y)
    need = k * s
    return frozenset(
        i for i in range(s) if _count(y[i:] + y[:i], _stream(text)) >= need
    )
