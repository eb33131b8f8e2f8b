"""Fast reconfiguration decisions for cycle instances.

For a non-contractible target ``D = q**r`` (``q`` its primitive root, of
length ``s``) the wind-``w`` part of ``Hom(C, D)`` is described by

* ``R``: the largest power of a shift of ``q`` that is ``<=* C``;
* ``Gamma``: the shifts ``i`` of ``q`` for which ``shift(q, i)**(w*r)``
  followed by one further root symbol is still ``<=* C``.

Wind classes are indexed by the push-up image of ``c_0`` in Z_n.  Class
``j`` has an up edge into class ``j+1`` iff ``j mod s`` is in ``Gamma``; a
position ``j`` with ``j mod s`` outside ``Gamma`` is a barrier.  Two maps of
the same wind are connected iff one of the two circular arcs between their
classes is barrier free.  Negative winds are handled on the reversed source.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional, Sequence

import numpy as np

from .homomorphism import (
    CycleHom,
    HomomorphismError,
    pushup_class,
    validate_hom,
    wind,
)
from .orientation import (
    OrientationString,
    StringLike,
    TargetClass,
    as_orientation,
    classify_target,
    primitive_root,
    reverse,
)
from .starsub import gamma_set, max_power_over_shifts, occupied_shifts

CLASS_MODES = ("pushup", "base")


class Status(enum.Enum):
    EMPTY = "Empty"
    SINGLE_CYCLIC = "SingleCyclic"
    BLOCKS = "Blocks"


class Reason(enum.Enum):
    CONTRACTIBLE_TARGET = "ContractibleTarget"
    WIND_MISMATCH = "WindMismatch"
    WIND_ZERO = "WindZero"
    FULL_GAMMA = "FullGamma"
    SAME_BLOCK = "SameBlock"
    DIFFERENT_BLOCK = "DifferentBlock"
    EXCEPTIONAL = "Exceptional"


@dataclass(frozen=True)
class Decision:
    connected: bool
    reason: Reason
    wind: Optional[int] = None
    classes: Optional[tuple[int, int]] = None

    def to_dict(self) -> dict:
        return {
            "connected": self.connected,
            "reason": self.reason.value,
            "wind": self.wind,
            "classes": list(self.classes) if self.classes is not None else None,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


@dataclass
class WindReport:
    wind: int
    status: Status
    theorem_case: str
    gamma: list[int] = field(default_factory=list)
    literal_c: Optional[int] = None
    block_count: Optional[int] = None
    occupied_blocks: Optional[int] = None
    components: int = 0

    def to_dict(self) -> dict:
        return {
            "wind": self.wind,
            "status": self.status.value,
            "theorem_case": self.theorem_case,
            "gamma": list(self.gamma),
            "literal_c": self.literal_c,
            "block_count": self.block_count,
            "occupied_blocks": self.occupied_blocks,
            "components": self.components,
        }


@dataclass
class ComponentReport:
    """Component structure of ``Hom(C, D)`` wind by wind.

    For ``Blocks`` winds three counts are given: ``literal_c`` (bad residues
    in ``[0, s)``), ``block_count`` (barriers on Z_n, ``literal_c * n / s``)
    and ``occupied_blocks`` (barriers whose class actually contains maps).
    ``components`` is the predicted number of components and equals
    ``occupied_blocks`` for ``Blocks`` winds.
    """

    source: str
    target: str
    target_class: TargetClass
    contractible: bool
    root: str
    r: int
    s: int
    R: int
    R_reverse: int
    exceptional: bool
    winds: list[WindReport]

    def by_wind(self) -> dict[int, WindReport]:
        return {w.wind: w for w in self.winds}

    def to_dict(self) -> dict:
        return {
            "source": self.source,
            "target": self.target,
            "target_class": self.target_class.value,
            "contractible": self.contractible,
            "root": self.root,
            "r": self.r,
            "s": self.s,
            "R": self.R,
            "R_reverse": self.R_reverse,
            "exceptional": self.exceptional,
            "winds": [w.to_dict() for w in self.winds],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


class ReconEngine:
    """Decision procedure for a fixed target ``D``.

    ``class_mode`` selects the block coordinate of a map: ``"pushup"`` (image
    of ``c_0`` under the monotone push-up) or ``"base"`` (raw image of
    ``c_0``).
    """

    def __init__(self, D: StringLike, class_mode: str = "pushup"):
        if class_mode not in CLASS_MODES:
            raise ValueError(f"class_mode must be one of {CLASS_MODES}")
        self.target = as_orientation(D)
        self.n = len(self.target)
        self.target_class = classify_target(self.target)
        fac = primitive_root(self.target)
        self.root = fac.root.text
        self.r = fac.multiplicity
        self.s = len(self.root)
        self.class_mode = class_mode
        self._gamma = lru_cache(maxsize=4096)(self._gamma_uncached)
        self._occupied = lru_cache(maxsize=4096)(self._occupied_uncached)
        self._R = lru_cache(maxsize=4096)(self._R_uncached)

    @property
    def contractible(self) -> bool:
        return self.target_class.contractible

    def _gamma_uncached(self, c: str, w: int) -> frozenset[int]:
        return gamma_set(self.root, c, w * self.r)

    def _occupied_uncached(self, c: str, w: int) -> frozenset[int]:
        return occupied_shifts(self.root, c, w * self.r)

    def _R_uncached(self, c: str) -> int:
        return max_power_over_shifts(self.root, c)[0]

    def is_exceptional(self, C: StringLike) -> bool:
        return self.target.is_symmetric() and as_orientation(C).is_directed()

    def _oriented(self, c: str, w: int) -> tuple[str, int]:
        """Source string and positive wind after reversing for negative winds."""
        if w < 0:
            return reverse(c).text, -w
        return c, w

    def class_index(self, h: CycleHom) -> int:
        if self.class_mode == "base":
            return h.images[0]
        return pushup_class(h.images, self.n)

    # --- characterization -------------------------------------------------

    def characterize(self, C: StringLike) -> ComponentReport:
        c = as_orientation(C)
        if len(c) < 3:
            raise HomomorphismError("source cycle needs length >= 3")
        ct = c.text
        exceptional = self.is_exceptional(c)
        if self.contractible:
            return ComponentReport(
                ct, self.target.text, self.target_class, True, self.root, self.r, self.s,
                R=self._R(ct), R_reverse=self._R(reverse(ct).text), exceptional=False,
                winds=[WindReport(0, Status.SINGLE_CYCLIC, "Contractible", components=1)],
            )
        R_fwd = self._R(ct)
        R_rev = self._R(reverse(ct).text)
        winds = []
        # one Empty wind past each end marks where the maps run out
        for w in range(-(R_rev // self.r) - 1, R_fwd // self.r + 2):
            winds.append(self._wind_report(ct, w, exceptional))
        return ComponentReport(
            ct, self.target.text, self.target_class, False, self.root, self.r, self.s,
            R=R_fwd, R_reverse=R_rev, exceptional=exceptional, winds=winds,
        )

    def _wind_report(self, ct: str, w: int, exceptional: bool) -> WindReport:
        if w == 0:
            return WindReport(0, Status.SINGLE_CYCLIC, "1", components=1)
        src, k = self._oriented(ct, w)
        R = self._R(src)
        if k * self.r > R:
            return WindReport(w, Status.EMPTY, "empty", components=0)
        gamma = self._gamma(src, k)
        full = len(gamma) == self.s
        if exceptional:
            return WindReport(w, Status.SINGLE_CYCLIC, "Exceptional", sorted(gamma), components=1)
        if full:
            return WindReport(w, Status.SINGLE_CYCLIC, "2", sorted(gamma), components=1)
        bad = [i for i in range(self.s) if i not in gamma]
        occupied = self._occupied(src, k)
        literal = len(bad)
        per_residue = self.n // self.s
        occ = sum(per_residue for i in bad if i in occupied)
        return WindReport(
            w, Status.BLOCKS, "3", sorted(gamma),
            literal_c=literal, block_count=literal * per_residue, occupied_blocks=occ, components=occ,
        )

    # --- decisions ----------------------------------------------------------

    def barriers(self, C: StringLike, w: int) -> list[int]:
        """Barrier positions on Z_n for wind ``w`` (empty when fully connected)."""
        src, k = self._oriented(as_orientation(C).text, w)
        gamma = self._gamma(src, k)
        return [j for j in range(self.n) if j % self.s not in gamma]

    def _arc_clear(self, gamma: frozenset[int], a: int, b: int) -> bool:
        j = a
        while j != b:
            if j % self.s not in gamma:
                return False
            j = (j + 1) % self.n
        return True

    def key(self, h: CycleHom) -> tuple[int, int]:
        """``(wind, class index)`` of a map.

        Valley filling does not depend on the traversal direction, so the
        class of a negative-wind map is the same on the reversed source.
        """
        return wind(h), self.class_index(h)

    def keys(self, images: np.ndarray) -> list[tuple[int, int]]:
        """:meth:`key` for every row of an ``(H, m)`` image array at once."""
        images = np.asarray(images, dtype=np.int64)
        n = self.n
        steps = ((np.roll(images, -1, axis=1) - images + 1) % n) - 1
        inc = steps.sum(axis=1)
        winds = inc // n
        if self.class_mode == "base":
            cls = images[:, 0] % n
        else:
            levels = np.cumsum(steps[:, :-1], axis=1)
            best = levels.max(axis=1)
            top = np.where(inc > 0, np.maximum(0, best - inc), np.maximum(0, best))
            cls = (images[:, 0] + top) % n
        return list(zip(winds.tolist(), cls.tolist()))

    def decide_keys(self, c: str, k1: tuple[int, int], k2: tuple[int, int]) -> Decision:
        w1, a = k1
        w2, b = k2
        if self.contractible:
            return Decision(True, Reason.CONTRACTIBLE_TARGET)
        if w1 != w2:
            return Decision(False, Reason.WIND_MISMATCH)
        w = w1
        if w == 0:
            return Decision(True, Reason.WIND_ZERO, 0)
        src, k = self._oriented(c, w)
        if self.is_exceptional(src):
            return Decision(True, Reason.EXCEPTIONAL, w, (a, b))
        gamma = self._gamma(src, k)
        if len(gamma) == self.s:
            return Decision(True, Reason.FULL_GAMMA, w, (a, b))
        if self._arc_clear(gamma, a, b) or self._arc_clear(gamma, b, a):
            return Decision(True, Reason.SAME_BLOCK, w, (a, b))
        return Decision(False, Reason.DIFFERENT_BLOCK, w, (a, b))

    def decide(self, C: StringLike, phi: CycleHom | Sequence[int], psi: CycleHom | Sequence[int]) -> Decision:
        c = as_orientation(C)
        phi = self._as_hom(c, phi)
        psi = self._as_hom(c, psi)
        if self.contractible:
            return Decision(True, Reason.CONTRACTIBLE_TARGET)
        return self.decide_keys(c.text, self.key(phi), self.key(psi))

    def _as_hom(self, c: OrientationString, h) -> CycleHom:
        if isinstance(h, CycleHom):
            if h.source != c or h.target != self.target:
                raise HomomorphismError("map does not go from the given source to the engine's target")
            return h
        return validate_hom(c, self.target, h)

    def decision_matrix(self, C: StringLike, images: np.ndarray) -> np.ndarray:
        """``out[i, j]`` = decide(C, images[i], images[j]).connected for every ordered pair.

        Decisions depend on the maps only through :meth:`key`, so each pair of
        distinct keys is decided once and broadcast.
        """
        c = as_orientation(C)
        H = len(images)
        if H == 0:
            return np.zeros((0, 0), dtype=bool)
        if self.contractible:
            return np.ones((H, H), dtype=bool)
        keys = self.keys(images)
        uniq = sorted(set(keys))
        pos = {k: i for i, k in enumerate(uniq)}
        small = np.array([[self.decide_keys(c.text, k1, k2).connected for k2 in uniq] for k1 in uniq], dtype=bool)
        idx = np.array([pos[k] for k in keys])
        return small[np.ix_(idx, idx)]


def characterize(C: StringLike, D: StringLike) -> ComponentReport:
    return ReconEngine(D).characterize(C)


def decide(C: StringLike, D: StringLike, phi, psi, class_mode: str = "pushup") -> Decision:
    return ReconEngine(D, class_mode).decide(C, phi, psi)


# --- cross-validation against the oracle ------------------------------------


@dataclass
class WindAudit:
    """Oracle versus characterization for one wind of one instance."""

    wind: int
    status: str
    oracle_components: int
    oracle_cyclic: list[bool]
    predicted_components: int
    literal_c: Optional[int] = None
    block_count: Optional[int] = None
    occupied_blocks: Optional[int] = None
    agrees_with: Optional[str] = None  # which count the oracle matched when literal and block differ

    def to_dict(self) -> dict:
        return {
            "wind": self.wind,
            "status": self.status,
            "oracle_components": self.oracle_components,
            "oracle_cyclic": self.oracle_cyclic,
            "predicted_components": self.predicted_components,
            "literal_c": self.literal_c,
            "block_count": self.block_count,
            "occupied_blocks": self.occupied_blocks,
            "agrees_with": self.agrees_with,
        }


@dataclass
class VerificationReport:
    source: str
    target: str
    class_mode: str
    maps: int
    pairs: int
    pair_mismatches: list[tuple[str, str, bool, bool]] = field(default_factory=list)
    mismatch_count: int = 0
    characterization_issues: list[str] = field(default_factory=list)
    audits: list[WindAudit] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.mismatch_count == 0 and not self.characterization_issues

    def to_dict(self) -> dict:
        return {
            "source": self.source,
            "target": self.target,
            "class_mode": self.class_mode,
            "maps": self.maps,
            "pairs": self.pairs,
            "mismatch_count": self.mismatch_count,
            "pair_mismatches": [list(p) for p in self.pair_mismatches],
            "characterization_issues": self.characterization_issues,
            "audits": [a.to_dict() for a in self.audits],
        }


def _which_count(oracle: int, literal: Optional[int], block: Optional[int]) -> Optional[str]:
    if literal is None or literal == block:
        return None
    hits = [name for name, v in (("literal", literal), ("block", block)) if v == oracle]
    return hits[0] if len(hits) == 1 else "neither"


def verify_instance(
    C: StringLike, D: StringLike, class_mode: str = "pushup", cap: Optional[int] = None, keep: int = 10
) -> VerificationReport:
    """Compare :meth:`ReconEngine.decide` and :meth:`characterize` with the oracle.

    Every ordered pair of maps is checked; at most ``keep`` mismatching pairs
    are listed (all are counted).
    """
    from .oracle import DEFAULT_CAP, component_analysis, hom_graph

    from .homomorphism import format_images

    engine = ReconEngine(D, class_mode)
    c = as_orientation(C)
    g = hom_graph(c, engine.target, cap or DEFAULT_CAP)
    H = len(g)
    rep = VerificationReport(c.text, engine.target.text, class_mode, H, H * H)
    if H:
        labels = g.component_labels
        truth = labels[:, None] == labels[None, :]
        got = engine.decision_matrix(c, g.images)
        bad = np.argwhere(truth != got)
        rep.mismatch_count = len(bad)
        for i, j in bad[:keep]:
            rep.pair_mismatches.append(
                (format_images(g.images[i]), format_images(g.images[j]), bool(truth[i, j]), bool(got[i, j]))
            )

    report = engine.characterize(c)
    comps = component_analysis(g) if H else []
    if report.contractible:
        if len(comps) > 1:
            rep.characterization_issues.append(f"contractible target but {len(comps)} components")
        return rep

    by_wind: dict[int, list] = {}
    for comp in comps:
        by_wind.setdefault(comp.wind, []).append(comp)
    reported = report.by_wind()
    for w in sorted(set(by_wind) - set(reported)):
        rep.characterization_issues.append(f"wind {w}: maps exist outside the reported range")
    for w, wr in reported.items():
        found = by_wind.get(w, [])
        cyc = [x.cyclic for x in found]
        audit = WindAudit(
            w, wr.status.value, len(found), cyc, wr.components, wr.literal_c, wr.block_count, wr.occupied_blocks,
            _which_count(len(found), wr.literal_c, wr.block_count),
        )
        rep.audits.append(audit)
        if wr.status is Status.EMPTY:
            if found:
                rep.characterization_issues.append(f"wind {w}: reported Empty, oracle has {len(found)} components")
        elif wr.status is Status.SINGLE_CYCLIC:
            if cyc != [True]:
                rep.characterization_issues.append(f"wind {w}: reported SingleCyclic, oracle cyclic flags {cyc}")
        else:
            if len(found) != wr.components or any(cyc):
                rep.characterization_issues.append(
                    f"wind {w}: reported {wr.components} non-cyclic blocks, oracle {len(found)} with cyclic {cyc}"
                )
    return rep


# --- batch sweeps -------------------------------------------------------------

SWEEP_TARGETS = ("+++", "---")


def sweep_instances(max_m: int = 6, target_lengths: Sequence[int] = (4,), extra_targets=SWEEP_TARGETS):
    """Deterministic list of ``(C, D)`` pairs for the engine/oracle sweep."""
    from .orientation import all_strings

    targets = list(extra_targets) + [d for n in target_lengths for d in all_strings(n)]
    return [(C, D) for D in targets for m in range(3, max_m + 1) for C in all_strings(m)]


def _verify_task(args) -> VerificationReport:
    C, D, mode = args
    return verify_instance(C, D, mode)


@dataclass
class SweepSummary:
    instances: int = 0
    pairs: int = 0
    mismatches: int = 0
    failing: list[VerificationReport] = field(default_factory=list)
    audit_counts: dict[str, int] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.mismatches == 0 and not self.failing

    def add(self, rep: VerificationReport) -> None:
        self.instances += 1
        self.pairs += rep.pairs
        self.mismatches += rep.mismatch_count
        if not rep.ok:
            self.failing.append(rep)
        for a in rep.audits:
            if a.agrees_with is not None:
                self.audit_counts[a.agrees_with] = self.audit_counts.get(a.agrees_with, 0) + 1


def sweep(
    instances: Sequence[tuple[str, str]],
    class_mode: str = "pushup",
    jobs: int = 1,
    shard: tuple[int, int] = (0, 1),
    on_report=None,
) -> SweepSummary:
    """Verify every instance in shard ``shard[0]`` of ``shard[1]`` (round robin).

    Reports are consumed in instance order whatever ``jobs`` is, so the
    summary does not depend on parallelism.
    """
    k, total = shard
    tasks = [(C, D, class_mode) for idx, (C, D) in enumerate(instances) if idx % total == k]
    summary = SweepSummary()
    if jobs > 1:
        from multiprocessing import Pool

        with Pool(jobs) as pool:
            results = pool.imap(_verify_task, tasks, chunksize=16)
            for rep in results:
                summary.add(rep)
                if on_report:
                    on_report(rep)
    else:
        for task in tasks:
            rep = _verify_task(task)
            summary.add(rep)
            if on_report:
                on_report(rep)
    return summary
