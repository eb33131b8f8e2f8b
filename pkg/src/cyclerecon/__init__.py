"""Reconfiguration of homomorphisms between reflexive digraph cycles.

Cycles are written as orientation strings over ``+``, ``-`` and ``*``.
The fast decision procedure lives in :mod:`cyclerecon.engine`; the
exhaustive Hom-graph used to check it lives in :mod:`cyclerecon.oracle`.
"""

from .engine import (
    ComponentReport,
    Decision,
    Reason,
    ReconEngine,
    Status,
    VerificationReport,
    characterize,
    decide,
    sweep,
    sweep_instances,
    verify_instance,
)
from .homomorphism import (
    CycleHom,
    EdgeViolation,
    HomomorphismError,
    Monotonicity,
    MotionClass,
    adjacency,
    hom_to_selection,
    monotone_pushup,
    monotonicity,
    selection_to_hom,
    validate_hom,
    wind,
)
from .oracle import HomGraph, component_analysis, enumerate_homs, export_dot, hom_graph, refine_edge
from .orientation import (
    InvalidSymbol,
    OrientationString,
    RootFactorization,
    TargetClass,
    classify_target,
    concat_power,
    parse_orientation_string,
    primitive_root,
    reverse,
    shift,
)
from .starsub import (
    SelectionFunction,
    gamma_set,
    greedy_stream_count,
    leftmost_embedding,
    max_power,
    max_power_over_shifts,
    symbol_matches,
)

__version__ = "0.1.0"
