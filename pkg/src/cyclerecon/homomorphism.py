"""Homomorphisms between reflexive digraph cycles.

A map ``C -> D`` is stored as the tuple of target vertices ``images[j]`` of
``c_j`` (0-based, elements of Z_n).  Edge ``j`` (1-based) of ``C`` joins
``c_{j-1}`` and ``c_j``; under a map it is increasing, stationary or
decreasing according to whether the image steps by +1, 0 or -1 around ``D``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Sequence

from .orientation import (
    OrientationString,
    StringLike,
    as_orientation,
    concat_power,
    flip,
    reverse,
    shift,
)
from .starsub import SelectionFunction, symbol_matches


class HomomorphismError(ValueError):
    pass


class EdgeViolation(HomomorphismError):
    """Edge ``edge`` (1-based) of the source is not mapped onto an arc pattern of the target."""

    def __init__(self, edge: int, detail: str = ""):
        self.edge = edge
        msg = f"edge {edge} is not preserved"
        super().__init__(f"{msg}: {detail}" if detail else msg)


class Monotonicity(enum.Enum):
    INCREASING = "Increasing"
    DECREASING = "Decreasing"
    CONSTANT = "Constant"
    NON_MONOTONE = "NonMonotone"


class MotionClass(enum.Enum):
    UP = "Up"
    DOWN = "Down"
    MIXED = "Mixed"
    STATIONARY = "Stationary"


class Arcs(enum.Enum):
    FORWARD = "forward"
    BACKWARD = "backward"
    BOTH = "both"
    NONE = "none"


def cycle_arc(s: str, u: int, v: int) -> bool:
    """``u -> v`` in the reflexive cycle with orientation string ``s``."""
    n = len(s)
    diff = (v - u) % n
    if diff == 0:
        return True
    if diff == 1:
        return s[(v - 1) % n] in "+*"
    if diff == n - 1:
        return s[(u - 1) % n] in "-*"
    return False


def cycle_arcs(s: str) -> list[tuple[int, int]]:
    """All arcs of the reflexive cycle ``s`` (loops first, then edge arcs)."""
    m = len(s)
    arcs = [(u, u) for u in range(m)]
    for j, x in enumerate(s, 1):
        a, b = j - 1, j % m
        if x in "+*":
            arcs.append((a, b))
        if x in "-*":
            arcs.append((b, a))
    return arcs


def edge_allowed(x: str, d: str, a: int, b: int) -> bool:
    """Whether a source edge with symbol ``x`` may map from ``a`` to ``b`` in ``d``."""
    n = len(d)
    diff = (b - a) % n
    if diff == 0:
        return True
    if diff == 1:
        return symbol_matches(d[(b - 1) % n], x)
    if diff == n - 1:
        return symbol_matches(d[(a - 1) % n], flip(x))
    return False


@dataclass(frozen=True)
class CycleHom:
    source: OrientationString
    target: OrientationString
    images: tuple[int, ...]

    @property
    def m(self) -> int:
        return len(self.source)

    @property
    def n(self) -> int:
        return len(self.target)

    def steps(self) -> list[int]:
        """Per-edge step in {-1, 0, 1}; entry ``j-1`` belongs to edge ``j``."""
        n, im = self.n, self.images
        m = len(im)
        return [((im[(j + 1) % m] - im[j] + 1) % n) - 1 for j in range(m)]

    def lifted(self) -> list[int]:
        """Integer lift ``f`` with ``f[0] = images[0]`` and ``f[j+1] - f[j] = step``."""
        f = [self.images[0]]
        for st in self.steps()[:-1]:
            f.append(f[-1] + st)
        return f

    def __str__(self) -> str:
        return format_images(self.images)


@dataclass(frozen=True)
class Cutback:
    """Subpath ``c_start ... c_end`` of ``length`` edges (may wrap past ``c_0``)."""

    start: int
    end: int
    length: int


def format_images(images: Iterable[int]) -> str:
    return ",".join(str(int(i)) for i in images)


def parse_images(text: str) -> tuple[int, ...]:
    parts = [p.strip() for p in text.replace(" ", ",").split(",") if p.strip()]
    if not parts:
        raise ValueError("empty image sequence")
    return tuple(int(p) for p in parts)


def _check_cycles(c: OrientationString, d: OrientationString):
    if len(c) < 3 or len(d) < 3:
        raise HomomorphismError("source and target cycles need length >= 3")


def validate_hom(C: StringLike, D: StringLike, images: Sequence[int] | str) -> CycleHom:
    """Build a :class:`CycleHom`, checking every edge of ``C``.

    Raises :class:`EdgeViolation` naming the first bad edge (1-based).
    """
    c, d = as_orientation(C), as_orientation(D)
    _check_cycles(c, d)
    if isinstance(images, str):
        images = parse_images(images)
    m, n = len(c), len(d)
    if len(images) != m:
        raise HomomorphismError(f"expected {m} images, got {len(images)}")
    im = tuple(int(v) % n for v in images)
    ct, dt = c.text, d.text
    for j in range(1, m + 1):
        a, b = im[j - 1], im[j % m]
        if not edge_allowed(ct[j - 1], dt, a, b):
            raise EdgeViolation(j, f"{ct[j - 1]!r} edge mapped {a} -> {b}")
    return CycleHom(c, d, im)


def is_hom(C: StringLike, D: StringLike, images: Sequence[int]) -> bool:
    try:
        validate_hom(C, D, images)
    except HomomorphismError:
        return False
    return True


def increase(h: CycleHom) -> int:
    return sum(h.steps())


def wind(h: CycleHom) -> int:
    inc = increase(h)
    assert inc % h.n == 0, "increase of a closed walk must be a multiple of n"
    return inc // h.n


def monotonicity(h: CycleHom) -> Monotonicity:
    steps = h.steps()
    has_up = 1 in steps
    has_down = -1 in steps
    if has_up and has_down:
        return Monotonicity.NON_MONOTONE
    if has_up:
        return Monotonicity.INCREASING
    if has_down:
        return Monotonicity.DECREASING
    return Monotonicity.CONSTANT


def _all_cutbacks(h: CycleHom) -> list[Cutback]:
    steps = h.steps()
    m = len(steps)
    found = []
    for a in range(m):
        if steps[a] != -1:
            continue
        level = 0
        for k in range(1, m + 1):
            level += steps[(a + k - 1) % m]
            if level == 0:
                found.append(Cutback(a, (a + k) % m, k))
                break
    return found


def find_cutbacks(h: CycleHom) -> list[Cutback]:
    """Maximal cutbacks, ordered by start vertex.

    A cutback is a subpath with zero increase whose proper prefixes all have
    negative increase, i.e. a valley whose two ends sit at the same height.
    """
    every = _all_cutbacks(h)
    m = h.m
    maximal = []
    for cb in every:
        inside = False
        for other in every:
            if other is cb:
                continue
            off = (cb.start - other.start) % m
            if off + cb.length <= other.length and other.length > cb.length:
                inside = True
                break
        if not inside:
            maximal.append(cb)
    return maximal


def _valleys(images: list[int], n: int) -> list[tuple[int, int]]:
    """Maximal stationary runs whose two neighbours are exactly one step higher.

    Returned as ``(first_vertex, run_length)`` in base-point scan order.
    """
    m = len(images)
    steps = [((images[(j + 1) % m] - images[j] + 1) % n) - 1 for j in range(m)]
    if all(st == 0 for st in steps):
        return []
    # start scanning just after a non-stationary edge so that runs never wrap
    first = next(j for j in range(m) if steps[j] != 0)
    out = []
    j = first
    for _ in range(m):
        v = (j + 1) % m
        if steps[j] == -1:
            length = 1
            while steps[(v + length - 1) % m] == 0:
                length += 1
            if steps[(v + length - 1) % m] == 1:
                out.append((v, length))
        j = (j + 1) % m
    return sorted(out)


def pushup_path(h: CycleHom, order: str = "first") -> list[CycleHom]:
    """Sequence of maps from ``h`` to its monotone push-up.

    Each step lifts one depth-one valley (a stationary run sitting one below
    both neighbours) by +1, which is a one-step up edge.  ``order`` picks the
    valley lifted at each step: ``"first"`` or ``"last"`` in scan order.
    """
    if order not in ("first", "last"):
        raise ValueError(f"unknown order {order!r}")
    n = h.n
    cur = list(h.images)
    path = [h]
    m = len(cur)
    while True:
        valleys = _valleys(cur, n)
        if not valleys:
            break
        start, length = valleys[0] if order == "first" else valleys[-1]
        for k in range(length):
            v = (start + k) % m
            cur[v] = (cur[v] + 1) % n
        path.append(CycleHom(h.source, h.target, tuple(cur)))
    return path


def monotone_pushup(h: CycleHom, order: str = "first") -> tuple[CycleHom, int]:
    """Monotone push-up of ``h`` and its class index (the push-up's image of ``c_0``)."""
    top = pushup_path(h, order)[-1]
    return top, top.images[0]


def pushup_closed_form(h: CycleHom) -> tuple[int, ...]:
    """Push-up computed directly as a running maximum of the lift.

    Positive wind: ``g(j) = max_{k <= j} f(k)``; negative wind:
    ``g(j) = max_{k >= j} f(k)``; wind zero: the global maximum.
    """
    f = h.lifted()
    n, m = h.n, h.m
    period = wind(h) * n
    if period == 0:
        top = max(f)
        return tuple(top % n for _ in f)
    g = []
    if period > 0:
        suffix = [0] * (m + 1)
        suffix[m] = None
        for j in range(m - 1, -1, -1):
            suffix[j] = f[j] if suffix[j + 1] is None else max(f[j], suffix[j + 1])
        run = None
        for j in range(m):
            run = f[j] if run is None else max(run, f[j])
            tail = suffix[j + 1]
            g.append(run if tail is None else max(run, tail - period))
    else:
        prefix = []
        run = None
        for j in range(m):
            prefix.append(run)
            run = f[j] if run is None else max(run, f[j])
        tail = None
        out = [0] * m
        for j in range(m - 1, -1, -1):
            tail = f[j] if tail is None else max(tail, f[j])
            out[j] = tail if prefix[j] is None else max(tail, prefix[j] + period)
        g = out
    return tuple(v % n for v in g)


def pushup_class(images: Sequence[int], n: int) -> int:
    """Class index of the push-up from a single pass over the lift.

    Needs only the running lift value, its maximum and the increase.
    """
    m = len(images)
    level = 0
    inc = 0
    best_all = 0
    best_tail = None
    prev = images[0]
    for j in range(1, m + 1):
        cur = images[j % m]
        st = ((cur - prev + 1) % n) - 1
        prev = cur
        inc += st
        if j < m:
            level += st
            best_all = max(best_all, level)
            best_tail = level if best_tail is None else max(best_tail, level)
    period = inc
    if period > 0:
        top = 0 if best_tail is None else max(0, best_tail - period)
    else:
        top = best_all
    return (images[0] + top) % n


def displacement(a: int, b: int, n: int) -> int:
    return ((b - a + 1) % n) - 1


def _motion(h: CycleHom, h2: CycleHom) -> MotionClass:
    n = h.n
    disp = []
    for a, b in zip(h.images, h2.images):
        d = (b - a) % n
        if d == 0:
            disp.append(0)
        elif d == 1:
            disp.append(1)
        elif d == n - 1:
            disp.append(-1)
        else:
            return MotionClass.MIXED
    up = 1 in disp
    down = -1 in disp
    if up and down:
        return MotionClass.MIXED
    if up:
        return MotionClass.UP
    if down:
        return MotionClass.DOWN
    return MotionClass.STATIONARY


def hom_arc(h: CycleHom, h2: CycleHom) -> bool:
    """``h -> h2`` in the Hom-graph: every arc ``u -> v`` of C (loops included)
    has ``h(u) -> h2(v)`` in D."""
    d = h.target.text
    a, b = h.images, h2.images
    return all(cycle_arc(d, a[u], b[v]) for u, v in cycle_arcs(h.source.text))


def adjacency(h: CycleHom, h2: CycleHom) -> tuple[Arcs, MotionClass]:
    """Arc directions between two maps and the motion from ``h`` to ``h2``."""
    if h.source != h2.source or h.target != h2.target:
        raise HomomorphismError("maps have different source or target")
    fwd = hom_arc(h, h2)
    bwd = hom_arc(h2, h)
    if fwd and bwd:
        arcs = Arcs.BOTH
    elif fwd:
        arcs = Arcs.FORWARD
    elif bwd:
        arcs = Arcs.BACKWARD
    else:
        arcs = Arcs.NONE
    return arcs, _motion(h, h2)


def selection_to_hom(
    C: StringLike, D: StringLike, base: int, w: int, alpha: SelectionFunction | Sequence[int]
) -> CycleHom:
    """Increasing wind-``w`` map with ``c_0 -> base`` whose increasing edges are ``alpha``."""
    c, d = as_orientation(C), as_orientation(D)
    if not isinstance(alpha, SelectionFunction):
        alpha = SelectionFunction(tuple(alpha))
    if w < 1:
        raise HomomorphismError("wind must be >= 1")
    pattern = shift(concat_power(d, w), base)
    if not alpha.witnesses(pattern, c):
        raise HomomorphismError(f"{alpha} does not embed {pattern} in {c}")
    n, m = len(d), len(c)
    chosen = set(alpha.indices)
    images = [base % n]
    for j in range(1, m):
        images.append((images[-1] + (1 if j in chosen else 0)) % n)
    return validate_hom(c, d, images)


def hom_to_selection(h: CycleHom) -> tuple[int, int, SelectionFunction]:
    """``(base, wind, alpha)`` for an increasing map."""
    if monotonicity(h) is not Monotonicity.INCREASING:
        raise HomomorphismError("only increasing maps have a selection function")
    alpha = tuple(j for j, st in enumerate(h.steps(), 1) if st == 1)
    return h.images[0], wind(h), SelectionFunction(alpha)


def reverse_hom(h: CycleHom) -> CycleHom:
    """The same map read on the reversed source (``c'_j = c_{-j}``)."""
    m = h.m
    im = tuple(h.images[(-j) % m] for j in range(m))
    return CycleHom(reverse(h.source), h.target, im)
