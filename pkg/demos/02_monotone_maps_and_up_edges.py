"""
Monotone maps, selection functions and up edges
===============================================

An increasing map of wind 1 from C to D is pinned down by where it sends
vertex 0 and by which edges of C it advances on.  Those edges form a
selection function picking a copy of (a shift of) D out of C.  Moving one
map to a neighbour in the Hom-graph can push vertices "up" along D.
"""

from cyclerecon.homomorphism import HomomorphismError, hom_to_selection, monotone_pushup, pushup_path
from cyclerecon.oracle import component_analysis, enumerate_homs, hom_graph

C, D = "-++--+-", "-++--"

# every monotone wind-1 map, listed with its base and selection function
g = hom_graph(C, D, wind=1)
for h in g.homs:
    try:
        base, w, alpha = hom_to_selection(h)
    except HomomorphismError:
        continue
    print(h, " base", base, " alpha", alpha)

# the four increasing maps sit on one path of up edges
maps = [(0, 1, 2, 3, 3, 4, 4), (0, 1, 2, 3, 4, 4, 4), (0, 1, 2, 3, 4, 0, 0), (1, 1, 2, 3, 4, 0, 0)]
idx = [g.index_of(m) for m in maps]
for a, b in zip(idx, idx[1:]):
    # the arc points from the later map back to the earlier one, and the move forward goes up
    print(g.homs[a], "<-", g.homs[b], " arc:", bool(g.arc[b, a]), " up:", bool(g.up[a, b]))

# a non-monotone map is pushed up, one valley at a time
h = next(h for h in g.homs if len(pushup_path(h)) > 1)
for step in pushup_path(h):
    print("  ", step)
top, cls = monotone_pushup(h)
print("push-up class", cls)

# components of the wind-1 part of the Hom-graph
print([(c.size, c.cyclic) for c in component_analysis(g)])
print("all maps:", len(enumerate_homs(C, D)))
