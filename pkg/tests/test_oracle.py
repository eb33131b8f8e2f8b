import itertools
import json

import numpy as np
import pytest

from cyclerecon.homomorphism import (
    Arcs,
    Monotonicity,
    MotionClass,
    adjacency,
    hom_to_selection,
    monotonicity,
    validate_hom,
    wind,
)
from cyclerecon.oracle import (
    EnumerationCapExceeded,
    HomGraph,
    auxiliary_digraph,
    build_hom_graph,
    component_analysis,
    components_by_wind,
    enumerate_homs,
    export_dot,
    hom_graph,
    is_refinable,
    monotone_mask,
    non_refinable_mask,
    refine_edge,
    summary_json,
)
from cyclerecon.orientation import all_strings


def brute_refinable(h, h2):
    """Refinable iff some non-empty proper subset of moved vertices gives a middle map."""
    moved = [v for v in range(h.m) if h.images[v] != h2.images[v]]
    from cyclerecon.oracle import _arc

    for k in range(1, len(moved)):
        for T in itertools.combinations(moved, k):
            imgs = tuple(h2.images[v] if v in T else h.images[v] for v in range(h.m))
            try:
                mid = validate_hom(h.source, h.target, imgs)
            except Exception:
                continue
            if _arc(h, mid) and _arc(mid, h2):
                return True
    return False


def test_enumerate_fig2_four_increasing_wind_one(fig2):
    C, D, maps = fig2
    homs = enumerate_homs(C, D)
    inc = [h for h in homs if monotonicity(h) is Monotonicity.INCREASING and wind(h) == 1]
    assert sorted(h.images for h in inc) == sorted(maps.values())


def test_enumerate_constants_into_symmetric_square():
    homs = enumerate_homs("***", "****")
    assert [h.images for h in homs if monotonicity(h) is Monotonicity.CONSTANT] == [(i,) * 3 for i in range(4)]


def test_enumerate_directed_into_alternating_has_only_wind_zero():
    g = hom_graph("++++", "+-+-")
    assert len(g) > 0
    assert set(g.winds.tolist()) == {0}


def test_enumerate_is_lexicographic_and_complete():
    for C in ("+-*", "*+-+", "++-"):
        for D in ("+-+-", "****", "+++"):
            homs = enumerate_homs(C, D)
            imgs = [h.images for h in homs]
            assert imgs == sorted(set(imgs))
            brute = []
            for cand in itertools.product(range(len(D)), repeat=len(C)):
                try:
                    validate_hom(C, D, cand)
                    brute.append(cand)
                except Exception:
                    pass
            assert imgs == brute


def test_enumeration_cap():
    with pytest.raises(EnumerationCapExceeded):
        enumerate_homs("*" * 8, "****", cap=100)


def test_arcs_agree_with_pairwise_adjacency():
    for C, D in (("+-*", "+-+-"), ("*+-+", "****"), ("-++", "+++")):
        g = hom_graph(C, D)
        for i, a in enumerate(g.homs):
            for j, b in enumerate(g.homs):
                arcs, motion = adjacency(a, b)
                assert g.arc[i, j] == (arcs in (Arcs.FORWARD, Arcs.BOTH))
                assert g.up[i, j] == (arcs is not Arcs.NONE and motion is MotionClass.UP)


def test_wind_zero_monotone_maps_form_target_copy():
    # the constants induce a copy of D
    for C in ("***", "+-+", "++-*"):
        for D in ("****", "+-+-", "+*-*"):
            g = hom_graph(C, D)
            const = np.array([monotonicity(h) is Monotonicity.CONSTANT for h in g.homs])
            sub = g.subgraph(const)
            n = len(D)
            order = [sub.index_of((i,) * len(C)) for i in range(n)]
            for i in range(n):
                for j in range(n):
                    from cyclerecon.homomorphism import cycle_arc

                    assert sub.arc[order[i], order[j]] == cycle_arc(D, i, j)


def test_fact_isolated_rotations():
    g = hom_graph("****", "****")
    comps = components_by_wind(g)
    assert [c.size for c in comps[1]] == [1, 1, 1, 1]
    assert not any(c.cyclic for c in comps[1])
    assert [c.size for c in comps[-1]] == [1, 1, 1, 1]


def test_singleton_graph():
    h = validate_hom("***", "****", (0, 0, 0))
    g = build_hom_graph([h])
    assert g.arc.tolist() == [[True]]
    assert [(c.size, c.cyclic) for c in component_analysis(g)] == [(1, False)]


def test_wind_zero_component_cyclic():
    comps = components_by_wind(hom_graph("***", "****"))
    assert [(c.size > 1, c.cyclic) for c in comps[0]] == [(True, True)]


def test_fig1_wind_two_single_cyclic_component(fig1):
    C, D, _ = fig1
    comps = components_by_wind(hom_graph(C, D, wind=2))
    assert list(comps) == [2]
    assert len(comps[2]) == 1 and comps[2][0].cyclic


def test_summary_json_is_stable():
    g = hom_graph("+-*", "+-+-")
    assert summary_json(g) == summary_json(hom_graph("+-*", "+-+-"))
    data = json.loads(summary_json(g))
    assert list(data) == ["source", "target", "maps", "components"]


@pytest.mark.parametrize("D", ["+-+-", "****", "-++--", "+++", "*+-*"])
def test_wind_constant_on_components(D):
    for m in range(3, 5):
        for C in all_strings(m):
            g = hom_graph(C, D)
            for c in component_analysis(g):
                assert c.wind is not None


# --- refinement ----------------------------------------------------------


def _edges(C, D):
    g = hom_graph(C, D)
    homs = g.homs
    for i, j in zip(*np.nonzero(g.arc)):
        if i != j:
            yield homs[i], homs[j]


def test_refinability_matches_subset_search():
    for C, D in (("+-*", "+-+-"), ("****", "****"), ("*+-+", "*-+*"), ("***", "****"), ("++-+", "+++")):
        for h, h2 in _edges(C, D):
            assert is_refinable(h, h2) == brute_refinable(h, h2), (C, D, h.images, h2.images)


def test_refine_constants_into_single_vertex_moves():
    a = validate_hom("***", "****", (0, 0, 0))
    b = validate_hom("***", "****", (1, 1, 1))
    path = refine_edge(a, b)
    assert path[0] == a and path[-1] == b
    for x, y in zip(path, path[1:]):
        assert sum(p != q for p, q in zip(x.images, y.images)) == 1
        assert not is_refinable(x, y)


def test_rotation_step_on_directed_source_moves_everything():
    a = validate_hom("++++", "****", (0, 1, 2, 3))
    b = validate_hom("++++", "****", (1, 2, 3, 0))
    # the arc runs from b to a; refining from a walks it backwards
    assert refine_edge(a, b) == [a, b]
    deps = auxiliary_digraph(b, a)
    assert set(deps) == {0, 1, 2, 3}
    assert not is_refinable(b, a)


def test_refine_trivial_and_non_adjacent():
    a = validate_hom("***", "****", (0, 0, 0))
    assert refine_edge(a, a) == [a]
    far = validate_hom("***", "****", (2, 2, 2))
    from cyclerecon.homomorphism import HomomorphismError

    with pytest.raises(HomomorphismError):
        refine_edge(a, far)


def test_refine_edge_backward_direction():
    for h, h2 in _edges("+-*", "+-+-"):
        path = refine_edge(h2, h)
        assert path[0] == h2 and path[-1] == h


def test_refined_paths_are_non_refinable_edges():
    for C, D in (("*+*-", "****"), ("+-*-", "+-+-"), ("*****", "****")):
        for h, h2 in _edges(C, D):
            path = refine_edge(h, h2)
            assert path[0] == h and path[-1] == h2
            for x, y in zip(path, path[1:]):
                assert adjacency(x, y)[0] in (Arcs.FORWARD, Arcs.BOTH)
                assert not is_refinable(x, y)


def test_non_refinable_edges_are_up_or_down():
    for C, D in (("*+*-", "****"), ("+-*-", "+-+-"), ("+++", "+++"), ("*-+*", "*+-*")):
        for h, h2 in _edges(C, D):
            if not is_refinable(h, h2):
                assert adjacency(h, h2)[1] in (MotionClass.UP, MotionClass.DOWN)


def _monotone_up_arcs(C, D):
    """Non-refinable arcs that are up edges at a non-constant monotone map."""
    g = hom_graph(C, D)
    nr = non_refinable_mask(g)
    mono = monotone_mask(g)
    up = g.up
    for i, j in zip(*np.nonzero(nr)):
        for h in (i, j):
            if mono[h] and (up[i, j] or up[j, i]):
                yield g.homs[i], g.homs[j]
                break


def test_non_refinable_mask_matches_refinement():
    for C, D in (("*+*-", "****"), ("+-*-", "+-+-"), ("++++", "****"), ("*-+*", "*+-*"), ("+*+-*", "-++--")):
        g = hom_graph(C, D)
        nr = non_refinable_mask(g)
        for i, j in zip(*np.nonzero(g.arc)):
            if i != j:
                assert nr[i, j] == (not is_refinable(g.homs[i], g.homs[j]))


def test_equal_lengths_non_refinable_up_edge_needs_directed_into_symmetric():
    seen = 0
    for D in all_strings(4):
        for C in all_strings(4):
            for h, h2 in _monotone_up_arcs(C, D):
                seen += 1
                assert set(D) == {"*"} and set(C) in ({"+"}, {"-"})
                assert all(a != b for a, b in zip(h.images, h2.images))
    assert seen > 0


def test_long_source_non_refinable_up_edge_moves_one_vertex():
    for C in all_strings(5):
        for D in ("****", "+-+-", "+*-*", "*+++"):
            for h, h2 in _monotone_up_arcs(C, D):
                assert sum(a != b for a, b in zip(h.images, h2.images)) == 1


# --- DOT -----------------------------------------------------------------


def test_dot_empty():
    g = HomGraph("+-+", "+-+-", np.zeros((0, 3), dtype=np.int64))
    assert export_dot(g) == "digraph hom {}\n"


def test_dot_isolated_vertices():
    g = hom_graph("****", "****")
    sub = g.subgraph(g.winds == 1)
    text = export_dot(sub)
    assert text.count("[label=") == 4
    assert "->" not in text


def test_dot_fig2_monotone_path(fig2):
    C, D, maps = fig2
    g = hom_graph(C, D)
    sub = g.subgraph(monotone_mask(g, 1))
    text = export_dot(sub)
    assert text == export_dot(sub)
    idx = {k: sub.index_of(v) for k, v in maps.items()}
    for lo, hi in (("phi1", "phi2"), ("phi2", "phi3"), ("phi3", "phi4")):
        assert f"h{idx[hi]} -> h{idx[lo]}" in text


def test_fig2_selection_functions(fig2):
    C, D, _ = fig2
    g = hom_graph(C, D)
    sub = g.subgraph(monotone_mask(g, 1))
    got = sorted((b, a.indices) for b, _, a in map(hom_to_selection, sub.homs))
    assert got == [(0, (1, 2, 3, 4, 5)), (0, (1, 2, 3, 4, 7)), (0, (1, 2, 3, 5, 7)), (1, (2, 3, 4, 5, 7))]


# --- wind-1 monotone classes -----------------------------------------------------


def _mon1_classes(C, D):
    g = hom_graph(C, D, wind=1)
    inc = np.flatnonzero(monotone_mask(g, 1))
    homs = g.homs
    for i in range(len(D)):
        cls = [k for k in inc if homs[k].images[0] == i]
        nxt = [k for k in inc if homs[k].images[0] == (i + 1) % len(D)]
        yield g, i, cls, nxt


@pytest.mark.parametrize("D", ["+-+-", "-++--", "+*-*", "+++", "-+--"])
def test_mon1_classes_connected_and_boundary_rule(D):
    from scipy.sparse.csgraph import connected_components

    from cyclerecon.orientation import shift
    from cyclerecon.starsub import leftmost_embedding

    for m in range(3, 7):
        for C in all_strings(m):
            for g, i, cls, nxt in _mon1_classes(C, D):
                if not cls:
                    continue
                sub = g.arc[np.ix_(cls, cls)]
                assert connected_components(sub | sub.T, directed=False)[0] == 1
                # the top of the class is the map with the leftmost selection
                top = min(cls, key=lambda k: hom_to_selection(g.homs[k])[2].indices)
                has_step = bool(nxt) and bool(g.up[top, nxt].any())
                s = shift(D, i).text
                # appended symbol is the first symbol of the shifted target
                assert has_step == (leftmost_embedding(s + s[0], C) is not None), (C, D, i)


def test_boundary_rule_with_preceding_symbol_fails():
    # appending y_i instead of y_{i+1} mispredicts this class
    from cyclerecon.orientation import shift
    from cyclerecon.starsub import leftmost_embedding

    C, D = "+-+-+", "+-+-"
    wrong = []
    for g, i, cls, nxt in _mon1_classes(C, D):
        if cls:
            top = min(cls, key=lambda k: hom_to_selection(g.homs[k])[2].indices)
            has_step = bool(nxt) and bool(g.up[top, nxt].any())
            s = shift(D, i).text
            wrong.append(has_step != (leftmost_embedding(s + D[i - 1], C) is not None))
    assert any(wrong)
