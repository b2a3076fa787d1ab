"""Shared corpus and per-graph artifacts for the test suite.

The corpus is fully deterministic (seeded); the artifacts fixture runs the
whole pipeline once per graph and caches everything the heavier tests need.
"""

from __future__ import annotations

import random
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from ctwkit.atomizer import Move, atomize_with_trace, exact_treewidth
from ctwkit.cycles import Cycle, enumerate_geodesic_cycles
from ctwkit.graph import Graph, cycle_graph, complete_graph, grid_graph, path_graph, star_graph
from ctwkit.pipeline import PipelineResult, ctw_upper_bound
from ctwkit.treedec import TreeDecomposition

RANDOM_CORPUS_SIZE = 204
DENSITIES = (0.0, 0.1, 0.2, 0.35, 0.55, 0.75)


def random_connected_graph(n: int, density: float, seed: int) -> Graph:
    """Random spanning tree plus density-p extra edges."""
    rng = random.Random(seed)
    edges = set()
    verts = list(range(n))
    rng.shuffle(verts)
    for i in range(1, n):
        a, b = verts[i], verts[rng.randrange(i)]
        edges.add((min(a, b), max(a, b)))
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < density:
                edges.add((u, v))
    return Graph.from_edges(n, sorted(edges))


def petersen_graph() -> Graph:
    edges = [
        (0, 1), (1, 2), (2, 3), (3, 4), (4, 0),
        (5, 7), (7, 9), (9, 6), (6, 8), (8, 5),
        (0, 5), (1, 6), (2, 7), (3, 8), (4, 9),
    ]
    return Graph.from_edges(10, edges)


def theta_graph() -> Graph:
    """Vertices 0 and 1 joined by three internally disjoint 2-edge paths."""
    return Graph.from_edges(5, [(0, 2), (2, 1), (0, 3), (3, 1), (0, 4), (4, 1)])


def two_triangles_graph() -> Graph:
    """Two triangles sharing vertex 0."""
    return Graph.from_edges(5, [(0, 1), (1, 2), (0, 2), (0, 3), (3, 4), (0, 4)])


def sun_graph() -> Graph:
    """Triangle 0,1,2 with a spike vertex on each edge (the 3-sun)."""
    return Graph.from_edges(
        6,
        [(0, 1), (1, 2), (0, 2), (0, 3), (1, 3), (1, 4), (2, 4), (2, 5), (0, 5)],
    )


def random_corpus() -> list[Graph]:
    graphs = []
    i = 0
    while len(graphs) < RANDOM_CORPUS_SIZE:
        n = 6 + (i % 9)  # 6..14
        graphs.append(random_connected_graph(n, DENSITIES[i % len(DENSITIES)], seed=1000 + i))
        i += 1
    return graphs


def structured_corpus() -> list[Graph]:
    graphs = [cycle_graph(n) for n in range(6, 15)]
    graphs += [path_graph(n) for n in (6, 9, 12)]
    graphs += [complete_graph(n) for n in (5, 6, 7)]
    graphs += [grid_graph(3, 3), grid_graph(3, 4), star_graph(8)]
    graphs += [petersen_graph(), theta_graph(), two_triangles_graph(), sun_graph()]
    return graphs


@dataclass
class GraphArtifacts:
    graph: Graph
    tw: int
    seed_td: TreeDecomposition
    atomized: TreeDecomposition
    moves: list[Move]
    geodesic_cycles: list[Cycle]
    pipeline: PipelineResult


@dataclass
class Corpus:
    random_graphs: list[Graph]
    structured_graphs: list[Graph]
    artifacts: list[GraphArtifacts] = field(default_factory=list)
    build_seconds: float = 0.0

    @property
    def graphs(self) -> list[Graph]:
        return self.random_graphs + self.structured_graphs


@pytest.fixture(scope="session")
def corpus() -> Corpus:
    c = Corpus(random_graphs=random_corpus(), structured_graphs=structured_corpus())
    start = time.time()
    for g in c.graphs:
        tw, seed = exact_treewidth(g)
        atom, moves = atomize_with_trace(g, seed)
        c.artifacts.append(
            GraphArtifacts(
                graph=g,
                tw=tw,
                seed_td=seed,
                atomized=atom,
                moves=moves,
                geodesic_cycles=enumerate_geodesic_cycles(g),
                pipeline=ctw_upper_bound(g),
            )
        )
    c.build_seconds = time.time() - start
    return c
