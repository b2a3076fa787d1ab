"""Navigational path systems (navis) and bag connectification.

A sub-navi stores one path per key (an unordered vertex pair or a
singleton), closed under taking subpaths: any two vertices on a stored path
form a key whose stored path is exactly that segment. A geodesic sub-navi
stores only shortest paths. Given a decomposition whose in-bag pairs are all
keys, replacing each bag by the union of its pairs' paths yields a
decomposition with connected bags whose width overshoot is controlled by the
longest stored path.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .errors import InternalCheckError
from .graph import INFINITY, Graph
from .treedec import TreeDecomposition, validate

PathKey = tuple[int, int]


def _key(x: int, y: int) -> PathKey:
    return (x, y) if x <= y else (y, x)


@dataclass(frozen=True)
class SubNavi:
    """Stored paths keyed by (min, max) vertex pairs; the path for a key runs
    from the smaller to the larger endpoint, and a singleton key (x, x) holds
    the trivial path (x,)."""

    paths: dict[PathKey, tuple[int, ...]]
    geodesic: bool = False

    @property
    def keys(self) -> list[PathKey]:
        return sorted(self.paths)

    @property
    def length(self) -> int:
        """Edge count of the longest stored path."""
        return max((len(p) - 1 for p in self.paths.values()), default=0)

    def has_key(self, x: int, y: int) -> bool:
        return _key(x, y) in self.paths

    def path_between(self, x: int, y: int) -> tuple[int, ...]:
        """The stored path oriented from x to y."""
        p = self.paths[_key(x, y)]
        return p if p[0] == x else p[::-1]


@dataclass(frozen=True)
class NaviViolation:
    kind: str  # "malformed" | "consistency" | "geodesic"
    witness: tuple


@dataclass(frozen=True)
class NaviReport:
    ok: bool
    violation: NaviViolation | None = None


def _segment(path: tuple[int, ...], i: int, j: int) -> tuple[int, ...]:
    seg = path[i : j + 1]
    return seg if seg[0] <= seg[-1] else seg[::-1]


def check_subnavi(g: Graph, navi: SubNavi) -> NaviReport:
    """Verify the stored paths are paths, the subpath-closure property, and
    (when flagged) that every path is shortest. Reports the first violation
    with its witness."""
    for key in sorted(navi.paths):
        a, b = key
        path = navi.paths[key]
        bad = (
            a > b
            or not path
            or path[0] != a
            or path[-1] != b
            or len(set(path)) != len(path)
            or any(not (0 <= w < g.n) for w in path)
            or any(not g.has_edge(p, q) for p, q in zip(path, path[1:]))
        )
        if bad:
            return NaviReport(False, NaviViolation("malformed", (a, b)))
    for key in sorted(navi.paths):
        x, y = key
        path = navi.paths[key]
        for i in range(len(path)):
            for j in range(i, len(path)):
                sub_key = _key(path[i], path[j])
                stored = navi.paths.get(sub_key)
                if stored is None or stored != _segment(path, i, j):
                    return NaviReport(
                        False,
                        NaviViolation("consistency", (x, y, path[i], path[j])),
                    )
    if navi.geodesic:
        for key in sorted(navi.paths):
            a, b = key
            if len(navi.paths[key]) - 1 != g.distances[a][b]:
                return NaviReport(False, NaviViolation("geodesic", (a, b)))
    return NaviReport(True)


def _geodesic_survives(g: Graph, x: int, y: int, allowed: frozenset[int], target) -> bool:
    dist = g.bfs_distances(x, allowed=allowed)
    return dist[y] == target


def _lex_minimal_geodesic(g: Graph, x: int, y: int) -> tuple[int, ...]:
    """The shortest x..y path whose vertex-set characteristic vector is
    lexicographically least in the fixed vertex order (0 before 1, so early
    vertices are avoided whenever some shortest path can do without them).

    One pass over the vertices in order: drop each one that still leaves a
    shortest path; what remains is exactly the vertex set of one shortest
    path, recovered by distance layers.
    """
    target = g.distances[x][y]
    if target == INFINITY:
        raise ValueError(f"{x} and {y} are in different components")
    target = int(target)
    allowed = set(range(g.n))
    for w in range(g.n):
        if w == x or w == y:
            continue
        trial = allowed - {w}
        if _geodesic_survives(g, x, y, frozenset(trial), target):
            allowed = trial
    if len(allowed) != target + 1:
        raise InternalCheckError(
            f"kept {len(allowed)} vertices for a distance-{target} pair"
        )
    dist = g.bfs_distances(x, allowed=frozenset(allowed))
    by_level: dict[int, list[int]] = {}
    for w in allowed:
        by_level.setdefault(dist[w], []).append(w)
    path = []
    for level in range(target + 1):
        layer = by_level.get(level, [])
        if len(layer) != 1:
            raise InternalCheckError(
                f"distance layer {level} holds {len(layer)} vertices, expected 1"
            )
        path.append(layer[0])
    if path[-1] != y or any(
        not g.has_edge(a, b) for a, b in zip(path, path[1:])
    ):
        raise InternalCheckError("layer recovery did not produce an x..y path")
    return tuple(path)


def build_geodesic_navi(g: Graph) -> SubNavi:
    """Geodesic navi over all vertex pairs, one lexicographically minimal
    shortest path each."""
    if not g.is_connected():
        raise ValueError("graph must be connected")
    paths: dict[PathKey, tuple[int, ...]] = {}
    for x in range(g.n):
        paths[(x, x)] = (x,)
    for x in range(g.n):
        for y in range(x + 1, g.n):
            paths[(x, y)] = _lex_minimal_geodesic(g, x, y)
    return SubNavi(paths, geodesic=True)


def extract_decomposition_navi(navi: SubNavi, d: TreeDecomposition) -> SubNavi:
    """Restrict a navi to the keys a decomposition needs: every pair inside a
    bag, closed under pairs of vertices on the collected paths."""
    collected: dict[PathKey, tuple[int, ...]] = {}
    for t in d.nodes:
        bag = sorted(d.bags[t])
        for i, x in enumerate(bag):
            for y in bag[i:]:
                path = navi.paths.get((x, y))
                if path is None:
                    raise ValueError(f"navi has no path for in-bag pair ({x}, {y})")
                for a in range(len(path)):
                    for b in range(a, len(path)):
                        sub_key = _key(path[a], path[b])
                        if sub_key not in collected:
                            collected[sub_key] = _segment(path, a, b)
    return SubNavi(dict(sorted(collected.items())), geodesic=navi.geodesic)


def connectify(g: Graph, d: TreeDecomposition, dnavi: SubNavi) -> TreeDecomposition:
    """Replace every bag by the union of the stored paths over its vertex
    pairs. The result is a decomposition with connected bags on the same
    tree; its width stays within w + C(w+1, 2) * (length - 1)."""
    if not g.is_connected():
        raise ValueError("graph must be connected")
    if not validate(g, d).valid:
        raise ValueError("decomposition is not valid")
    for t in d.nodes:
        bag = sorted(d.bags[t])
        for i, x in enumerate(bag):
            for y in bag[i:]:
                if (x, y) not in dnavi.paths:
                    raise ValueError(
                        f"navi misses in-bag pair ({x}, {y}): not a valid navi "
                        "for this decomposition"
                    )
    report = check_subnavi(g, dnavi)
    if not report.ok:
        raise ValueError(f"navi fails its invariants: {report.violation}")
    width_in = d.width
    new_bags: dict[int, frozenset[int]] = {}
    for t in d.nodes:
        bag = sorted(d.bags[t])
        grown = set(bag)
        for i, x in enumerate(bag):
            for y in bag[i:]:
                grown.update(dnavi.paths[(x, y)])
        new_bags[t] = frozenset(grown)
    out = TreeDecomposition(new_bags, d.edges)
    out_report = validate(g, out)
    if not (out_report.valid and out_report.connected_parts):
        raise InternalCheckError("connectified decomposition failed validation")
    bound = width_in + comb(width_in + 1, 2) * (dnavi.length - 1)
    if out.width > bound:
        raise InternalCheckError(
            f"connectified width {out.width} exceeds guaranteed bound {bound}"
        )
    return out


def format_navi(navi: SubNavi) -> str:
    """Text dump: one 'path <x> <y> : <v0> ... <vk>' line per key, key-sorted,
    1-indexed."""
    lines = []
    for a, b in sorted(navi.paths):
        seq = " ".join(str(v + 1) for v in navi.paths[(a, b)])
        lines.append(f"path {a + 1} {b + 1} : {seq}")
    return "\n".join(lines) + ("\n" if lines else "")
