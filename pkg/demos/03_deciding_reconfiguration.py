"""
Deciding whether two maps can be reconfigured
=============================================

The engine answers "is psi reachable from phi?" without building the
Hom-graph.  Here it is run on the opening example and then checked against
the exhaustive graph on the eight-cycle of symmetric edges.
"""

from cyclerecon.engine import ReconEngine, characterize, decide, verify_instance
from cyclerecon.oracle import component_analysis, hom_graph

# the opening example: two wind-2 maps from a 15-cycle onto "+-+-"
C, D = "+-+-+--++--++--", "+-+-"
phi = (0, 1, 2, 1, 2, 3, 3, 0, 1, 1, 1, 2, 3, 3, 0)
psi = (3, 3, 0, 1, 2, 3, 3, 0, 1, 1, 2, 2, 3, 3, 3)
report = characterize(C, D)
print(f"root power r={report.r}, root length s={report.s}, copies of the root in C: R={report.R}")
for w in report.winds:
    print(f"  wind {w.wind:+d}: {w.status.value} ({w.theorem_case})")
print(decide(C, D, phi, psi).to_json())

# rotations of the symmetric 4-cycle cannot move: wind-2 maps are isolated
g = hom_graph("*" * 8, "****")
for comp in component_analysis(g):
    if abs(comp.wind) == 2:
        print("wind", comp.wind, "component of size", comp.size)
eng = ReconEngine("****")
print(eng.decide("*" * 8, (0, 1, 2, 3, 0, 1, 2, 3), (1, 2, 3, 0, 1, 2, 3, 0)).to_json())

# the verification harness compares every pair of maps with the oracle
rep = verify_instance("****", "****")
print("pairs", rep.pairs, "mismatches", rep.mismatch_count)
for a in rep.audits:
    print(" ", a.to_dict())
