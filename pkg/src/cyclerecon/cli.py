"""Command line front end.

Vertex images in instance files and on the command line are 0-based
elements of Z_n; selection functions are 1-based string positions.
Orientation strings that start with ``-`` can be passed as ordinary
arguments (``root -+-+``); only the bare string ``--`` needs ``-D=--``.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
import time
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .engine import CLASS_MODES, ReconEngine, sweep, sweep_instances
from .homomorphism import (
    HomomorphismError,
    Monotonicity,
    format_images,
    hom_to_selection,
    monotonicity,
    parse_images,
    validate_hom,
    wind,
)
from .oracle import EnumerationCapExceeded, export_dot, hom_graph, summary_json
from .orientation import OrientationString, parse_orientation_string, primitive_root
from .starsub import greedy_stream_count, leftmost_embedding

EXIT_CONNECTED = 0
EXIT_DISCONNECTED = 1
EXIT_ERROR = 2

_DASHED = re.compile(r"^-[+\-*]+$")


class InstanceError(ValueError):
    """Malformed instance file; ``line`` and ``column`` are 1-based."""

    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


@dataclass
class Instance:
    target: OrientationString
    source: OrientationString
    phi: tuple[int, ...]
    psi: tuple[int, ...]


def parse_instance(text: str) -> Instance:
    """Parse ``D``/``C``/``phi``/``psi`` lines; ``#`` starts a comment."""
    fields: dict[str, tuple[str, int, int]] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        key, _, value = line.strip().partition(" ")
        col = raw.index(key) + 1
        if key not in ("D", "C", "phi", "psi"):
            raise InstanceError(f"unknown key {key!r}", lineno, col)
        if key in fields:
            raise InstanceError(f"duplicate key {key!r}", lineno, col)
        value = value.strip()
        if not value:
            raise InstanceError(f"missing value for {key!r}", lineno, col + len(key))
        fields[key] = (value, lineno, raw.index(value, col - 1 + len(key)) + 1)
    for key in ("D", "C", "phi", "psi"):
        if key not in fields:
            raise InstanceError(f"missing {key!r} line", len(text.splitlines()) + 1)

    def orient(key):
        value, lineno, col = fields[key]
        try:
            return parse_orientation_string(value)
        except ValueError as exc:
            offset = getattr(exc, "position", 1) - 1
            raise InstanceError(str(exc), lineno, col + offset) from None

    def images(key, m):
        value, lineno, col = fields[key]
        try:
            imgs = parse_images(value)
        except ValueError as exc:
            raise InstanceError(str(exc), lineno, col) from None
        if len(imgs) != m:
            raise InstanceError(f"{key} has {len(imgs)} images, C has length {m}", lineno, col)
        return imgs

    D, C = orient("D"), orient("C")
    return Instance(D, C, images("phi", len(C)), images("psi", len(C)))


def _orientation(value: str) -> OrientationString:
    try:
        return parse_orientation_string(value.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _escape_dashed(argv: Sequence[str]) -> list[str]:
    # argparse reads "-+-+" as an option; a leading space keeps it a value
    return [" " + a if _DASHED.match(a) and a != "--" else a for a in argv]


# --- subcommands ----------------------------------------------------------


def cmd_decide(args) -> int:
    try:
        with open(args.file, encoding="utf-8") as fh:
            inst = parse_instance(fh.read())
        engine = ReconEngine(inst.target, args.class_mode)
        decision = engine.decide(inst.source, inst.phi, inst.psi)
    except (OSError, ValueError, HomomorphismError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    print(decision.to_json())
    return EXIT_CONNECTED if decision.connected else EXIT_DISCONNECTED


def cmd_characterize(args) -> int:
    print(ReconEngine(args.target).characterize(args.source).to_json())
    return 0


def cmd_root(args) -> int:
    fac = primitive_root(args.string)
    print(f"{fac.root} {fac.r}")
    return 0


def cmd_match(args) -> int:
    sel = leftmost_embedding(args.pattern, args.source)
    print("none" if sel is None else ",".join(map(str, sel.indices)))
    return 0


def _map_line(h) -> str:
    mono = monotonicity(h)
    parts = [format_images(h.images), f"wind={wind(h)}", mono.value]
    if mono is Monotonicity.INCREASING:
        base, _, alpha = hom_to_selection(h)
        parts.append(f"{base}:({','.join(map(str, alpha.indices))})")
    return "\t".join(parts)


def cmd_enumerate(args) -> int:
    g = hom_graph(args.source, args.target, args.cap, args.wind)
    for h in g.homs:
        if args.monotone and monotonicity(h) not in (Monotonicity.INCREASING, Monotonicity.DECREASING):
            continue
        print(_map_line(h))
    return 0


def cmd_oracle(args) -> int:
    g = hom_graph(args.source, args.target, args.cap, args.wind)
    print(summary_json(g))
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(export_dot(g))
    return 0


def cmd_verify(args) -> int:
    k, total = args.shard
    instances = sweep_instances(args.max_m, tuple(range(4, args.max_n + 1)))
    started = time.perf_counter()
    summary = sweep(instances, args.class_mode, jobs=args.jobs, shard=(k, total))
    for rep in summary.failing:
        print(json.dumps(rep.to_dict()))
    print(
        f"instances {summary.instances}  pairs {summary.pairs}  mismatches {summary.mismatches}  "
        f"failing instances {len(summary.failing)}"
    )
    audit = ", ".join(f"{k} {v}" for k, v in sorted(summary.audit_counts.items())) or "none"
    print(f"component-count audit (winds where literal c and block count differ): {audit}")
    print(f"elapsed {time.perf_counter() - started:.1f}s", file=sys.stderr)
    return 0 if summary.ok else 1


def bench_table(root: str, length: int, doublings: int, trials: int, seed: int):
    """Rows ``(m, min seconds, median seconds, matched)`` for the greedy pass."""
    rng = np.random.default_rng(seed)
    alphabet = np.array(list("+-*"))
    lengths = [length << k for k in range(doublings + 1)]
    texts = {m: "".join(alphabet[rng.integers(0, 3, m)]) for m in lengths}
    runs = [(m, t) for m in lengths for t in range(trials)]
    order = rng.permutation(len(runs))
    times: dict[int, list[float]] = {m: [] for m in lengths}
    matched = {}
    for idx in order:
        m, _ = runs[idx]
        t0 = time.perf_counter()
        sc = greedy_stream_count(root, texts[m])
        times[m].append(time.perf_counter() - t0)
        matched[m] = sc.matched
    return [(m, min(times[m]), float(np.median(times[m])), matched[m]) for m in lengths]


def doubling_factor(rows) -> float:
    """Time growth per doubling of m, from a least-squares fit of log time on log m.

    One noisy length moves a single step ratio a lot but the fit very little.
    """
    m = np.log2([r[0] for r in rows])
    t = np.log2([r[1] for r in rows])
    slope = np.polyfit(m, t, 1)[0]
    return float(2.0 ** slope)


def cmd_bench(args) -> int:
    root = primitive_root(args.target).root.text
    rows = bench_table(root, args.length, args.doublings, args.trials, args.seed)
    print(f"root {root}  trials {args.trials}  seed {args.seed}")
    print(f"{'m':>10} {'min s':>10} {'median s':>10} {'ns/symbol':>10} {'ratio':>7} {'matched':>10}")
    prev = None
    for m, best, med, c in rows:
        ratio = f"{best / prev:7.2f}" if prev else f"{'':>7}"
        print(f"{m:>10} {best:10.4f} {med:10.4f} {1e9 * best / m:10.1f} {ratio} {c:>10}")
        prev = best
    if len(rows) > 1:
        print(f"fitted growth per doubling {doubling_factor(rows):.2f}")
    return 0


# --- parser -----------------------------------------------------------------


def _shard(value: str) -> tuple[int, int]:
    k, _, total = value.partition("/")
    try:
        k, total = int(k), int(total)
    except ValueError:
        raise argparse.ArgumentTypeError("shard must look like K/N") from None
    if not 0 <= k < total:
        raise argparse.ArgumentTypeError("shard K/N needs 0 <= K < N")
    return k, total


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cyclerecon", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("decide", help="decide whether phi and psi of an instance file are connected")
    s.add_argument("file")
    s.add_argument("--class-mode", choices=CLASS_MODES, default="pushup")
    s.set_defaults(func=cmd_decide)

    s = sub.add_parser("characterize", help="component structure of Hom(C, D), wind by wind")
    s.add_argument("-D", "--target", type=_orientation, required=True)
    s.add_argument("-C", "--source", type=_orientation, required=True)
    s.set_defaults(func=cmd_characterize)

    s = sub.add_parser("root", help="primitive root and multiplicity")
    s.add_argument("string", type=_orientation)
    s.set_defaults(func=cmd_root)

    s = sub.add_parser("match", help="leftmost selection function of P in C")
    s.add_argument("-P", "--pattern", type=_orientation, required=True)
    s.add_argument("-C", "--source", type=_orientation, required=True)
    s.set_defaults(func=cmd_match)

    for name, func, text in (
        ("enumerate", cmd_enumerate, "list every homomorphism C -> D"),
        ("oracle", cmd_oracle, "exhaustive Hom-graph components as JSON"),
    ):
        s = sub.add_parser(name, help=text)
        s.add_argument("-D", "--target", type=_orientation, required=True)
        s.add_argument("-C", "--source", type=_orientation, required=True)
        s.add_argument("--cap", type=int, default=5_000_000)
        s.add_argument("--wind", type=int, help="only maps of this wind")
        s.set_defaults(func=func)
        if name == "enumerate":
            s.add_argument("--monotone", action="store_true")
        else:
            s.add_argument("--dot", metavar="PATH")

    s = sub.add_parser("verify", help="engine versus oracle over all small instances")
    s.add_argument("--max-m", type=int, default=6)
    s.add_argument("--max-n", type=int, default=5)
    s.add_argument("--class-mode", choices=CLASS_MODES, default="pushup")
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--shard", type=_shard, default=(0, 1), metavar="K/N")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("bench", help="timing table for the streaming greedy count")
    s.add_argument("-D", "--target", type=_orientation, required=True)
    s.add_argument("--length", type=int, default=100_000)
    s.add_argument("--doublings", type=int, default=4)
    s.add_argument("--trials", type=int, default=3)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_bench)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(_escape_dashed(argv))
    try:
        return args.func(args)
    except (ValueError, HomomorphismError, EnumerationCapExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
