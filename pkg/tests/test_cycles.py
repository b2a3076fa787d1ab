import pytest

from ctwkit.cycles import (
    Cycle,
    EdgeVector,
    cycle_closure,
    closure_distance_bound,
    decompose,
    edge_vector,
    enumerate_geodesic_cycles,
    find_closure_path,
    geodesic_cycle_basis,
    is_geodesic_cycle,
    longest_geodesic_cycle,
)
from ctwkit.graph import Graph, cycle_graph, grid_graph, path_graph
from conftest import petersen_graph, random_connected_graph, theta_graph
from oracles import brute_force_geodesic_cycles


def triangle():
    return Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)])


def chained_triangles():
    """Three triangles in a row, consecutive ones sharing one vertex."""
    return Graph.from_edges(
        7,
        [(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4), (4, 5), (4, 6), (5, 6)],
    )


# --- cycle type ---------------------------------------------------------------

def test_cycle_canonical_form():
    g = cycle_graph(5)
    c = Cycle.from_vertices(g, [3, 2, 1, 0, 4])
    assert c.vertices == (0, 1, 2, 3, 4)
    c2 = Cycle.from_vertices(g, [2, 1, 0, 4, 3])
    assert c2 == c


def test_cycle_rejects_bad_sequences():
    g = cycle_graph(5)
    with pytest.raises(ValueError, match="at least 3"):
        Cycle.from_vertices(g, [0, 1])
    with pytest.raises(ValueError, match="repeats"):
        Cycle.from_vertices(g, [0, 1, 2, 1])
    with pytest.raises(ValueError, match="not an edge"):
        Cycle.from_vertices(g, [0, 1, 3])


# --- geodesic predicate ---------------------------------------------------------

def test_triangle_is_geodesic():
    g = triangle()
    assert is_geodesic_cycle(g, Cycle.from_vertices(g, [0, 1, 2]))


def test_grid_boundary_is_not_geodesic():
    g = grid_graph(3, 3)
    boundary = Cycle.from_vertices(g, [0, 1, 2, 5, 8, 7, 6, 3])
    assert not is_geodesic_cycle(g, boundary)


def test_grid_rectangle_six_cycle_is_not_geodesic():
    # the 1x2 rectangle boundary keeps the shared cell edge as a chord, so
    # its endpoints sit at cycle distance 3 but graph distance 1
    g = grid_graph(3, 3)
    rect = Cycle.from_vertices(g, [0, 1, 2, 5, 4, 3])
    assert g.has_edge(1, 4)
    assert not is_geodesic_cycle(g, rect)


# --- enumeration ---------------------------------------------------------------

def test_enumerate_cycle_graph():
    for n in (3, 5, 8):
        g = cycle_graph(n)
        cycles = enumerate_geodesic_cycles(g)
        assert [c.vertices for c in cycles] == [tuple(range(n))]


def test_enumerate_forest_empty():
    assert enumerate_geodesic_cycles(path_graph(6)) == []


def test_enumerate_grid():
    g = grid_graph(3, 3)
    cycles = enumerate_geodesic_cycles(g)
    assert [c.vertices for c in cycles] == [
        (0, 1, 4, 3),
        (1, 2, 5, 4),
        (3, 4, 7, 6),
        (4, 5, 8, 7),
    ]


def test_enumerate_matches_brute_force():
    for seed in range(8):
        g = random_connected_graph(9, 0.3, 610 + seed)
        got = [c.vertices for c in enumerate_geodesic_cycles(g)]
        assert got == brute_force_geodesic_cycles(g)
    assert [
        c.vertices for c in enumerate_geodesic_cycles(petersen_graph())
    ] == brute_force_geodesic_cycles(petersen_graph())


def test_enumerated_cycles_pass_predicate_and_diameter_bound(corpus):
    for art in corpus.artifacts[:60]:
        cap = 2 * art.graph.diameter + 1
        for c in art.geodesic_cycles:
            assert is_geodesic_cycle(art.graph, c)
            assert c.length <= cap


def test_longest_examples():
    assert longest_geodesic_cycle(cycle_graph(9)) == 9
    assert longest_geodesic_cycle(path_graph(5)) == 1
    assert longest_geodesic_cycle(petersen_graph()) == 5


# --- closure ---------------------------------------------------------------

def test_closure_triangle():
    g = triangle()
    cycles = enumerate_geodesic_cycles(g)
    closure = cycle_closure(cycles, frozenset({0}))
    assert closure.vertices == frozenset({0, 1, 2})
    assert len(closure.edges) == 3


def test_closure_misses_off_cycle_vertex():
    g = Graph.from_edges(4, [(0, 1), (1, 2), (0, 2), (2, 3)])
    cycles = enumerate_geodesic_cycles(g)
    closure = cycle_closure(cycles, frozenset({3}))
    assert 3 not in closure.vertices
    assert closure.vertices == frozenset()


def test_closure_monotone():
    g = chained_triangles()
    cycles = enumerate_geodesic_cycles(g)
    small = cycle_closure(cycles, frozenset({0}))
    big = cycle_closure(cycles, frozenset({0, 5}))
    assert small.vertices <= big.vertices
    assert small.edges <= big.edges


def test_closure_not_idempotent():
    # regression example: closing the closure reaches a further triangle
    g = chained_triangles()
    cycles = enumerate_geodesic_cycles(g)
    first = cycle_closure(cycles, frozenset({0}))
    assert first.vertices == frozenset({0, 1, 2})
    second = cycle_closure(cycles, first.vertices)
    assert not second.vertices <= first.vertices
    assert second.vertices == frozenset({0, 1, 2, 3, 4})


# --- distance bound ---------------------------------------------------------------

def test_closure_bound_singleton():
    g = triangle()
    cycles = enumerate_geodesic_cycles(g)
    report = closure_distance_bound(g, cycles, frozenset({0}))
    assert report.preconditions_ok and report.bound == 0 and report.max_distance == 0


def test_closure_bound_c6():
    g = cycle_graph(6)
    cycles = enumerate_geodesic_cycles(g)
    report = closure_distance_bound(g, cycles, frozenset({0, 3}))
    assert report.preconditions_ok
    assert report.max_distance == 3
    assert report.bound == 6
    assert report.within_bound


def test_closure_bound_grid_corners():
    g = grid_graph(3, 3)
    cycles = enumerate_geodesic_cycles(g)
    report = closure_distance_bound(g, cycles, frozenset({0, 8}))
    assert report.preconditions_ok
    assert report.max_distance == 4
    assert report.bound == 4 * 1
    assert report.within_bound


def test_closure_bound_reports_failed_preconditions():
    g = Graph.from_edges(4, [(0, 1), (1, 2), (0, 2), (2, 3)])
    cycles = enumerate_geodesic_cycles(g)
    report = closure_distance_bound(g, cycles, frozenset({3}))
    assert not report.preconditions_ok
    assert "seed set not contained" in report.failures[0]


# --- cycle space ---------------------------------------------------------------

def test_basis_examples():
    assert len(geodesic_cycle_basis(cycle_graph(7))) == 1
    assert geodesic_cycle_basis(path_graph(5)) == []
    basis = geodesic_cycle_basis(grid_graph(3, 3))
    assert len(basis) == 4
    assert all(c.length == 4 for c in basis)


def test_basis_rank_on_corpus_sample(corpus):
    for art in corpus.artifacts[:40]:
        g = art.graph
        basis = geodesic_cycle_basis(g)
        assert len(basis) == g.m - g.n + 1  # corpus graphs are connected


def test_decompose_unit_and_empty():
    g = grid_graph(3, 3)
    basis = geodesic_cycle_basis(g)
    coeffs = decompose(EdgeVector.from_cycle(basis[2]), basis)
    assert coeffs == [0, 0, 1, 0]
    assert decompose(EdgeVector(frozenset()), basis) == [0, 0, 0, 0]


def test_decompose_grid_boundary():
    g = grid_graph(3, 3)
    basis = geodesic_cycle_basis(g)
    boundary = Cycle.from_vertices(g, [0, 1, 2, 5, 8, 7, 6, 3])
    coeffs = decompose(EdgeVector.from_cycle(boundary), basis)
    assert coeffs == [1, 1, 1, 1]
    acc = EdgeVector(frozenset())
    for c, take in zip(basis, coeffs):
        if take:
            acc = acc ^ EdgeVector.from_cycle(c)
    assert acc.edges == boundary.edge_pairs


def test_decompose_rejects_outside_span():
    g = grid_graph(3, 3)
    basis = geodesic_cycle_basis(g)
    with pytest.raises(ValueError, match="span"):
        decompose(edge_vector(g, [(0, 1)]), basis)


def test_edge_vector_validation():
    g = path_graph(3)
    with pytest.raises(ValueError, match="not an edge"):
        edge_vector(g, [(0, 2)])


# --- closure path ---------------------------------------------------------------

def test_find_closure_path_theta():
    g = theta_graph()
    cycles = enumerate_geodesic_cycles(g)
    outer = Cycle.from_vertices(g, [0, 2, 1, 4])
    path = find_closure_path(
        g,
        frozenset({0, 1}),
        frozenset({0, 1, 2}),
        frozenset({0, 1, 3, 4}),
        outer,
        0,
        1,
        cycles,
    )
    assert path[0] == 0 and path[-1] == 1
    closure = cycle_closure(cycles, frozenset({0, 1}))
    assert set(path) <= closure.vertices


def test_find_closure_path_single_edge_case():
    g = triangle()
    cycles = enumerate_geodesic_cycles(g)
    c = cycles[0]
    path = find_closure_path(
        g,
        frozenset({0, 1}),
        frozenset({0, 1}),
        frozenset({0, 1, 2}),
        c,
        0,
        1,
        cycles,
    )
    assert path == (0, 1)


def test_find_closure_path_uses_far_side_correction():
    # far side contains a triangle whose sum with the big cycle is the input
    # cycle, so the far arc must be rerouted through vertex 6
    g = Graph.from_edges(
        7,
        [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (1, 6), (6, 2)],
    )
    big = Cycle.from_vertices(g, [0, 1, 6, 2, 3, 4, 5])
    tri = Cycle.from_vertices(g, [1, 2, 6])
    c = Cycle.from_vertices(g, [0, 1, 2, 3, 4, 5])
    path = find_closure_path(
        g,
        frozenset({0, 3}),
        frozenset({0, 1, 2, 3, 6}),
        frozenset({0, 3, 4, 5}),
        c,
        0,
        3,
        [big, tri],
    )
    assert path == (0, 1, 6, 2, 3)
    closure = cycle_closure([big, tri], frozenset({0, 3}))
    assert set(path) <= closure.vertices


def test_find_closure_path_rejects_bad_separation():
    g = theta_graph()
    cycles = enumerate_geodesic_cycles(g)
    outer = Cycle.from_vertices(g, [0, 2, 1, 4])
    with pytest.raises(ValueError, match="cover"):
        find_closure_path(
            g,
            frozenset({0, 1}),
            frozenset({0, 1, 2}),
            frozenset({0, 1, 3}),
            outer,
            0,
            1,
            cycles,
        )
    with pytest.raises(ValueError, match="crosses"):
        find_closure_path(
            g,
            frozenset({0}),
            frozenset({0, 2}),
            frozenset({0, 1, 3, 4}),
            outer,
            0,
            1,
            cycles,
        )


def test_find_closure_path_rejects_outside_span():
    g = theta_graph()
    outer = Cycle.from_vertices(g, [0, 2, 1, 4])
    other = [Cycle.from_vertices(g, [0, 2, 1, 3])]
    with pytest.raises(ValueError, match="span"):
        find_closure_path(
            g,
            frozenset({0, 1}),
            frozenset({0, 1, 2}),
            frozenset({0, 1, 3, 4}),
            outer,
            0,
            1,
            other,
        )
