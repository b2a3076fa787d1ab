import pytest

from ctwkit.atomizer import exact_treewidth
from ctwkit.errors import SizeLimitError
from ctwkit.graph import Graph, complete_graph, cycle_graph, grid_graph, path_graph
from ctwkit.pipeline import (
    ctw_upper_bound,
    exact_ctw_small,
    theorem_width_bound,
)
from ctwkit.treedec import TreeDecomposition, validate
from conftest import random_connected_graph, sun_graph, two_triangles_graph


def test_bound_formula():
    assert theorem_width_bound(2, 6) == 35
    assert theorem_width_bound(1, 1) == 1
    assert theorem_width_bound(0, 1) == 0


def test_pipeline_tree():
    g = path_graph(7)
    res = ctw_upper_bound(g)
    assert res.width == 1
    assert res.k == 1
    assert res.theorem_bound == 1
    assert res.bound_satisfied
    report = validate(g, res.ctd)
    assert report.valid and report.connected_parts


def test_pipeline_c6():
    g = cycle_graph(6)
    res = ctw_upper_bound(g)
    assert res.tw == 2 and res.k == 6
    assert res.theorem_bound == 35
    assert res.bound_satisfied
    assert exact_ctw_small(g) <= res.width <= res.theorem_bound
    # deterministic regression value for this build
    assert res.width == 5


def test_pipeline_two_triangles():
    g = two_triangles_graph()
    res = ctw_upper_bound(g)
    assert res.width == 2
    assert res.tw == 2
    assert len(res.ctd.bags) == 2
    report = validate(g, res.ctd)
    assert report.valid and report.connected_parts


def test_pipeline_single_vertex_and_edge():
    res = ctw_upper_bound(Graph.from_edges(1, []))
    assert res.width == 0 and res.theorem_bound == 0 and res.bound_satisfied
    res = ctw_upper_bound(Graph.from_edges(2, [(0, 1)]))
    assert res.width == 1 and res.bound_satisfied


def test_pipeline_disconnected():
    g = Graph.from_edges(8, [(0, 1), (1, 2), (0, 2), (3, 4), (5, 6), (6, 7), (5, 7)])
    res = ctw_upper_bound(g)
    report = validate(g, res.ctd)
    assert report.valid and report.connected_parts
    assert res.width == 2


def test_pipeline_with_supplied_seed():
    g = cycle_graph(6)
    seed = TreeDecomposition.from_lists([set(range(6))])
    res = ctw_upper_bound(g, seed=seed)
    assert not res.tw_certified
    assert res.bound_satisfied
    report = validate(g, res.ctd)
    assert report.valid and report.connected_parts


def test_pipeline_rejects_bad_seed():
    g = cycle_graph(6)
    bad = TreeDecomposition.from_lists([{0, 1, 2}])
    with pytest.raises(ValueError, match="seed"):
        ctw_upper_bound(g, seed=bad)


def test_pipeline_seed_restricted_across_blocks():
    g = two_triangles_graph()
    seed = TreeDecomposition.from_lists([set(range(5))])
    res = ctw_upper_bound(g, seed=seed)
    report = validate(g, res.ctd)
    assert report.valid and report.connected_parts
    # the whole-graph bag restricts to each triangle, which then atomizes
    assert res.width == 2
    for seed_nr in range(4):
        h = random_connected_graph(10, 0.2, 470 + seed_nr)
        whole = TreeDecomposition.from_lists([set(range(10))])
        out = ctw_upper_bound(h, seed=whole)
        rep = validate(h, out.ctd)
        assert rep.valid and rep.connected_parts
        assert out.bound_satisfied


def test_pipeline_navi_dump_paths():
    g = two_triangles_graph()
    res = ctw_upper_bound(g)
    # per-block path systems merged in whole-graph labels
    assert (1, 2) in res.navi_paths
    assert (3, 4) in res.navi_paths
    for (a, b), path in res.navi_paths.items():
        assert path[0] == a and path[-1] == b


# --- exact connected width -------------------------------------------------

def test_exact_ctw_cycles():
    for n in range(3, 9):
        assert exact_ctw_small(cycle_graph(n)) == (n + 1) // 2


def test_exact_ctw_trees_and_cliques():
    assert exact_ctw_small(path_graph(6)) == 1
    assert exact_ctw_small(Graph.from_edges(1, [])) == 0
    assert exact_ctw_small(complete_graph(4)) == 3


def test_exact_ctw_disconnected():
    g = Graph.from_edges(7, [(0, 1), (2, 3), (3, 4), (2, 4), (5, 6)])
    assert exact_ctw_small(g) == 2


def test_exact_ctw_grid_with_raised_limit():
    assert exact_ctw_small(grid_graph(3, 3), max_n=9) == 3


def test_exact_ctw_size_limit():
    with pytest.raises(SizeLimitError):
        exact_ctw_small(cycle_graph(9))


def test_exact_ctw_env_override(monkeypatch):
    monkeypatch.setenv("CTWKIT_MAX_N", "9")
    assert exact_ctw_small(cycle_graph(9)) == 5


def test_pipeline_width_sandwiched_by_oracles():
    instances = [
        random_connected_graph(7, 0.15 + 0.07 * (seed % 5), 400 + seed)
        for seed in range(10)
    ]
    instances += [cycle_graph(8), complete_graph(6), two_triangles_graph(), sun_graph()]
    for g in instances:
        res = ctw_upper_bound(g)
        lower = exact_ctw_small(g)
        assert res.tw <= lower <= res.width <= res.theorem_bound
        assert exact_treewidth(g)[0] == res.tw


def test_exact_ctw_matches_independent_brute_force():
    # second route: antichain family enumeration plus junction-tree
    # arrangement by maximum-weight spanning tree, sharing nothing with the
    # solver's insertion-order search
    from oracles import brute_force_ctw

    cases = [cycle_graph(n) for n in (3, 4, 5, 6)]
    cases += [complete_graph(4), path_graph(5), sun_graph()]
    cases += [
        random_connected_graph(5, 0.3 + 0.05 * (seed % 5), 8200 + seed)
        for seed in range(12)
    ]
    cases += [random_connected_graph(6, 0.25, 8300 + seed) for seed in (0, 1, 5, 6)]
    for g in cases:
        assert exact_ctw_small(g) == brute_force_ctw(g)


def test_exact_ctw_sun_needs_hub_bag():
    # width-2 decompositions of the sun must use the inner triangle as a
    # bag even though each of its items also appears in some spike bag
    g = sun_graph()
    assert exact_treewidth(g)[0] == 2
    assert exact_ctw_small(g) == 2
