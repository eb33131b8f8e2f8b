"""Brute-force ground truth on small instances.

Everything here is exhaustive: enumerate every homomorphism ``C -> D``, test
every ordered pair for a Hom-graph arc, and read components and cyclicity off
the resulting digraph.  It is only meant for desk-scale ``m`` and ``n``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .homomorphism import (
    CycleHom,
    HomomorphismError,
    Monotonicity,
    cycle_arc,
    cycle_arcs,
    edge_allowed,
    format_images,
    monotonicity,
    wind,
)
from .orientation import StringLike, as_orientation

DEFAULT_CAP = 5_000_000


class EnumerationCapExceeded(RuntimeError):
    pass


def enumerate_images(C: StringLike, D: StringLike, cap: int = DEFAULT_CAP) -> np.ndarray:
    """All homomorphisms as an ``(H, m)`` int array, rows in lexicographic order.

    Backtracking over ``c_0, c_1, ...``; ``cap`` bounds the number of partial
    assignments visited.
    """
    c, d = as_orientation(C).text, as_orientation(D).text
    m, n = len(c), len(d)
    if m < 3 or n < 3:
        raise HomomorphismError("source and target cycles need length >= 3")
    # nxt[j][a]: allowed images of c_{j+1} given c_j -> a, via edge j+1
    nxt = [
        [sorted(b % n for b in {a - 1, a, a + 1} if edge_allowed(c[j], d, a, b % n)) for a in range(n)]
        for j in range(m)
    ]
    out = []
    visited = 0
    cur = [0] * m
    stack = [(0, a) for a in range(n - 1, -1, -1)]
    while stack:
        depth, val = stack.pop()
        visited += 1
        if visited > cap:
            raise EnumerationCapExceeded(f"more than {cap} partial assignments for C={c}, D={d}")
        cur[depth] = val
        if depth == m - 1:
            if cur[0] in nxt[m - 1][val]:
                out.append(tuple(cur))
            continue
        for b in reversed(nxt[depth][val]):
            stack.append((depth + 1, b))
    if not out:
        return np.zeros((0, m), dtype=np.int64)
    return np.array(out, dtype=np.int64)


def enumerate_homs(C: StringLike, D: StringLike, cap: int = DEFAULT_CAP) -> list[CycleHom]:
    c, d = as_orientation(C), as_orientation(D)
    return [CycleHom(c, d, tuple(int(v) for v in row)) for row in enumerate_images(c, d, cap)]


def _target_arc_table(d: str) -> np.ndarray:
    n = len(d)
    return np.array([[cycle_arc(d, u, v) for v in range(n)] for u in range(n)], dtype=bool)


def _winds(images: np.ndarray, n: int) -> np.ndarray:
    if len(images) == 0:
        return np.zeros(0, dtype=np.int64)
    steps = ((np.roll(images, -1, axis=1) - images + 1) % n) - 1
    inc = steps.sum(axis=1)
    assert np.all(inc % n == 0)
    return inc // n


@dataclass
class ComponentInfo:
    index: int
    wind: int
    size: int
    cyclic: bool
    members: list[int] = field(repr=False)


class HomGraph:
    """Explicit Hom-graph on a list of maps sharing source and target.

    ``arc[i, j]`` is ``homs[i] -> homs[j]``; ``up[i, j]`` marks an edge
    (either arc direction) along which every moving vertex moves up.
    """

    def __init__(self, source: StringLike, target: StringLike, images: np.ndarray):
        self.source = as_orientation(source)
        self.target = as_orientation(target)
        self.images = np.asarray(images, dtype=np.int64).reshape(-1, len(self.source))
        n = len(self.target)
        H = len(self.images)
        table = _target_arc_table(self.target.text)
        into: dict[int, list[int]] = {}
        for u, v in cycle_arcs(self.source.text):
            into.setdefault(v, []).append(u)
        arc = np.ones((H, H), dtype=bool)
        for v, tails in into.items():
            # allowed[i, b]: every tail u of v under map i reaches target vertex b
            allowed = np.logical_and.reduce([table[self.images[:, u]] for u in tails])
            arc &= allowed.take(self.images[:, v], axis=1)
        self.arc = arc
        self.winds = _winds(self.images, n)

    @classmethod
    def from_homs(cls, homs: Sequence[CycleHom]) -> "HomGraph":
        if not homs:
            raise ValueError("need at least one map; use HomGraph(C, D, images) for empty graphs")
        src, tgt = homs[0].source, homs[0].target
        if any(h.source != src or h.target != tgt for h in homs):
            raise HomomorphismError("maps have different source or target")
        return cls(src, tgt, np.array([h.images for h in homs], dtype=np.int64))

    def __len__(self) -> int:
        return len(self.images)

    @cached_property
    def up(self) -> np.ndarray:
        n = len(self.target)
        step = (np.arange(n)[None, :] - np.arange(n)[:, None]) % n
        one, at_most_one = step == 1, step <= 1
        moves_up = np.zeros_like(self.arc)
        only_up = self.arc | self.arc.T
        # one source vertex at a time keeps memory at O(H^2)
        for v in range(self.images.shape[1]):
            col = self.images[:, v]
            moves_up |= one[col].take(col, axis=1)
            only_up &= at_most_one[col].take(col, axis=1)
        return only_up & moves_up

    @cached_property
    def homs(self) -> list[CycleHom]:
        return [CycleHom(self.source, self.target, tuple(int(v) for v in row)) for row in self.images]

    @cached_property
    def component_labels(self) -> np.ndarray:
        if len(self) == 0:
            return np.zeros(0, dtype=np.int64)
        _, labels = connected_components(csr_matrix(self.arc | self.arc.T), directed=False)
        return _canonical_labels(labels)

    @cached_property
    def strong_up_labels(self) -> np.ndarray:
        if len(self) == 0:
            return np.zeros(0, dtype=np.int64)
        _, labels = connected_components(csr_matrix(self.up), directed=True, connection="strong")
        return labels

    def connected(self, i: int, j: int) -> bool:
        return bool(self.component_labels[i] == self.component_labels[j])

    def index_of(self, images: Sequence[int]) -> int:
        hits = np.flatnonzero((self.images == np.asarray(images)).all(axis=1))
        if len(hits) == 0:
            raise KeyError(format_images(images))
        return int(hits[0])

    def subgraph(self, mask: np.ndarray) -> "HomGraph":
        return HomGraph(self.source, self.target, self.images[np.asarray(mask, dtype=bool)])


def _canonical_labels(labels: np.ndarray) -> np.ndarray:
    # relabel by first occurrence so that output does not depend on scipy internals
    order = {}
    out = np.empty_like(labels)
    for i, lab in enumerate(labels):
        out[i] = order.setdefault(int(lab), len(order))
    return out


def build_hom_graph(homs: Sequence[CycleHom]) -> HomGraph:
    return HomGraph.from_homs(homs)


def hom_graph(C: StringLike, D: StringLike, cap: int = DEFAULT_CAP, wind: Optional[int] = None) -> HomGraph:
    """Hom-graph of all maps, or only those of wind ``wind``.

    For a non-contractible ``D`` arcs never join maps of different wind, so
    the restricted graph has the same components as the full one.
    """
    images = enumerate_images(C, D, cap)
    if wind is not None:
        images = images[_winds(images, len(as_orientation(D))) == wind]
    return HomGraph(C, D, images)


def component_analysis(g: HomGraph) -> list[ComponentInfo]:
    """Per component: wind, size and whether it is cyclic.

    Cyclic means the up-edge digraph inside the component is strongly
    connected and has at least one up edge; single maps never qualify.
    """
    labels = g.component_labels
    strong = g.strong_up_labels
    out = []
    for comp in range(int(labels.max()) + 1 if len(labels) else 0):
        members = np.flatnonzero(labels == comp)
        winds = set(int(w) for w in g.winds[members])
        has_up = bool(g.up[np.ix_(members, members)].any())
        cyclic = has_up and len(set(int(s) for s in strong[members])) == 1
        out.append(
            ComponentInfo(
                index=comp,
                wind=winds.pop() if len(winds) == 1 else None,
                size=len(members),
                cyclic=cyclic,
                members=[int(i) for i in members],
            )
        )
    return out


def components_by_wind(g: HomGraph) -> dict[int, list[ComponentInfo]]:
    out: dict[int, list[ComponentInfo]] = {}
    for info in component_analysis(g):
        out.setdefault(info.wind, []).append(info)
    return dict(sorted(out.items(), key=lambda kv: (kv[0] is None, kv[0] or 0)))


def summary_dict(g: HomGraph) -> dict:
    comps = component_analysis(g)
    return {
        "source": g.source.text,
        "target": g.target.text,
        "maps": len(g),
        "components": [
            {
                "index": c.index,
                "wind": c.wind,
                "size": c.size,
                "cyclic": c.cyclic,
                "representative": format_images(g.images[c.members[0]]),
            }
            for c in comps
        ],
    }


def summary_json(g: HomGraph) -> str:
    return json.dumps(summary_dict(g), indent=2)


# --- refinement ----------------------------------------------------------


def moved_vertices(h: CycleHom, h2: CycleHom) -> list[int]:
    return [v for v, (a, b) in enumerate(zip(h.images, h2.images)) if a != b]


def auxiliary_digraph(h: CycleHom, h2: CycleHom) -> dict[int, set[int]]:
    """Dependency digraph of the arc ``h -> h2`` on the moved vertices.

    ``u => v`` when ``u -> v`` in C but ``h2(u) -> h(v)`` fails in D: if ``u``
    is moved alone then ``v`` has to move as well.  A subset of moved vertices
    can be moved on its own (giving a map between ``h`` and ``h2``) exactly
    when it is closed under ``=>``.
    """
    if not _arc(h, h2):
        raise HomomorphismError("h -> h2 is not an arc of the Hom-graph")
    d = h.target.text
    neq = set(moved_vertices(h, h2))
    deps: dict[int, set[int]] = {v: set() for v in sorted(neq)}
    for u, v in cycle_arcs(h.source.text):
        if u in neq and v in neq and u != v and not cycle_arc(d, h2.images[u], h.images[v]):
            deps[u].add(v)
    return deps


def _arc(h: CycleHom, h2: CycleHom) -> bool:
    d = h.target.text
    a, b = h.images, h2.images
    return all(cycle_arc(d, a[u], b[v]) for u, v in cycle_arcs(h.source.text))


def _reach(deps: dict[int, set[int]], start: int) -> set[int]:
    seen = {start}
    todo = [start]
    while todo:
        u = todo.pop()
        for v in deps[u]:
            if v not in seen:
                seen.add(v)
                todo.append(v)
    return seen


def terminal_component(deps: dict[int, set[int]]) -> set[int]:
    """A strong component with no arcs leaving it (smallest vertex first)."""
    reach = {v: _reach(deps, v) for v in deps}
    for v in sorted(deps):
        if all(v in reach[u] for u in reach[v]):
            return reach[v]
    raise AssertionError("a finite digraph always has a terminal strong component")


def is_refinable(h: CycleHom, h2: CycleHom) -> bool:
    deps = auxiliary_digraph(h, h2)
    if len(deps) <= 1:
        return False
    return len(terminal_component(deps)) < len(deps)


def _refine_forward(h: CycleHom, h2: CycleHom) -> list[CycleHom]:
    deps = auxiliary_digraph(h, h2)
    if len(deps) <= 1:
        return [h] if len(deps) == 0 else [h, h2]
    t = terminal_component(deps)
    if len(t) == len(deps):
        return [h, h2]
    mid = CycleHom(h.source, h.target, tuple(h2.images[v] if v in t else h.images[v] for v in range(h.m)))
    return _refine_forward(h, mid)[:-1] + _refine_forward(mid, h2)


def refine_edge(h: CycleHom, h2: CycleHom) -> list[CycleHom]:
    """Split a Hom-graph edge into a path of non-refinable edges from ``h`` to ``h2``."""
    if h.source != h2.source or h.target != h2.target:
        raise HomomorphismError("maps have different source or target")
    if h.images == h2.images:
        return [h]
    if _arc(h, h2):
        return _refine_forward(h, h2)
    if _arc(h2, h):
        return _refine_forward(h2, h)[::-1]
    raise HomomorphismError("maps are not adjacent")


def non_refinable_mask(g: HomGraph) -> np.ndarray:
    """``out[i, j]`` is True when ``i -> j`` is a non-refinable arc (``i != j``).

    Vectorized form of :func:`is_refinable`.  Dependencies only join
    neighbours on C, so the dependency digraph on the moved set is strongly
    connected iff a single vertex moves, or the moved vertices form one run
    whose neighbouring pairs depend on each other both ways, or everything
    moves and the dependencies go all the way round (in one direction, or
    both ways with at most one gap).
    """
    H = len(g)
    out = np.zeros((H, H), dtype=bool)
    if H == 0:
        return out
    m = len(g.source)
    c = g.source.text
    table = _target_arc_table(g.target.text)
    I, J = np.nonzero(g.arc & ~np.eye(H, dtype=bool))
    A, B = g.images[I], g.images[J]
    An, Bn = np.roll(A, -1, axis=1), np.roll(B, -1, axis=1)
    mv = A != B
    pair = mv & np.roll(mv, -1, axis=1)
    fwd = np.array([x in "+*" for x in c])
    bwd = np.array([x in "-*" for x in c])
    f = pair & fwd & ~table[B, An]
    b = pair & bwd & ~table[Bn, A]
    k = mv.sum(axis=1)
    runs = (mv & ~np.roll(mv, -1, axis=1)).sum(axis=1)
    both = f & b
    single_run = (runs == 1) & (~pair | both).all(axis=1)
    gap = ~(f | b)
    full = f.all(axis=1) | b.all(axis=1) | ((gap.sum(axis=1) <= 1) & (both | gap).all(axis=1))
    ok = (k == 1) | ((k == m) & full) | ((k < m) & single_run)
    out[I, J] = ok
    return out


# --- DOT export ----------------------------------------------------------


def export_dot(g: HomGraph, name: str = "hom", clusters: bool = True, mark: Optional[set[int]] = None) -> str:
    """Graphviz text for ``g``; loops are implicit and omitted.

    Mutual arcs are drawn once with ``dir=both``; up edges are bold blue
    with a tooltip naming the lower endpoint.  Components become clusters.
    """
    if len(g) == 0:
        return f"digraph {name} {{}}\n"
    lines = [f"digraph {name} {{", "  node [shape=box, fontname=monospace];"]
    comps = component_analysis(g)
    for comp in comps:
        indent = "  "
        if clusters:
            lines.append(f"  subgraph cluster_{comp.index} {{")
            lines.append(f'    label="wind {comp.wind}{" cyclic" if comp.cyclic else ""}";')
            indent = "    "
        for i in comp.members:
            style = ', style=filled, fillcolor="#ffe08a"' if mark and i in mark else ""
            lines.append(f'{indent}h{i} [label="{format_images(g.images[i])}"{style}];')
        if clusters:
            lines.append("  }")
    H = len(g)
    for i in range(H):
        for j in range(i + 1, H):
            f, b = bool(g.arc[i, j]), bool(g.arc[j, i])
            if not (f or b):
                continue
            attrs = []
            if f and b:
                src, dst = i, j
                attrs.append("dir=both")
            elif f:
                src, dst = i, j
            else:
                src, dst = j, i
            if g.up[i, j] or g.up[j, i]:
                attrs.append('color="#1f5fbf", penwidth=2')
                lower = i if g.up[i, j] else j
                attrs.append(f'tooltip="up from h{lower}"')
            attr = f" [{', '.join(attrs)}]" if attrs else ""
            lines.append(f"  h{src} -> h{dst}{attr};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def monotone_mask(g: HomGraph, wind_value: Optional[int] = None) -> np.ndarray:
    mask = np.array(
        [monotonicity(h) in (Monotonicity.INCREASING, Monotonicity.DECREASING) for h in g.homs], dtype=bool
    )
    if wind_value is not None:
        mask &= g.winds == wind_value
    return mask


__all__ = [
    "ComponentInfo",
    "EnumerationCapExceeded",
    "HomGraph",
    "auxiliary_digraph",
    "build_hom_graph",
    "component_analysis",
    "components_by_wind",
    "enumerate_homs",
    "enumerate_images",
    "export_dot",
    "hom_graph",
    "is_refinable",
    "non_refinable_mask",
    "moved_vertices",
    "refine_edge",
    "summary_dict",
    "summary_json",
    "terminal_component",
]
