"""End-to-end construction of a connected decomposition with a width bound.

Per 2-connected block: exact (or supplied) decomposition, fatness fixpoint,
geodesic navi restricted to the decomposition, bag connectification. Bridges
and isolated vertices get one-bag decompositions. The per-block results are
glued along cut vertices, and the final width is certified against
tw + C(tw+1, 2) * (k * tw - 1) with k the longest geodesic cycle length.

Also provides a tiny exact solver for the minimum width of a decomposition
with connected bags, used as an oracle in tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .atomizer import atomize, exact_treewidth
from .cycles import longest_geodesic_cycle
from .errors import InternalCheckError, SizeLimitError
from .graph import Graph, blocks, components, connected_subsets
from .limits import CTW_LIMIT, resolve_limit
from .navi import build_geodesic_navi, connectify, extract_decomposition_navi
from .treedec import (
    TreeDecomposition,
    glue_block_decompositions,
    prune_empty_bags,
    relabel_decomposition,
    validate,
)


def theorem_width_bound(w: int, k: int) -> int:
    """Connected-width guarantee for a graph of treewidth w whose geodesic
    cycles have length at most k."""
    return w + comb(w + 1, 2) * (k * w - 1)


@dataclass(frozen=True)
class PipelineResult:
    ctd: TreeDecomposition
    n: int
    m: int
    tw: int
    tw_certified: bool
    k: int
    navi_length: int
    width_before: int
    width: int
    theorem_bound: int
    bound_satisfied: bool
    navi_paths: dict


def _restrict_seed(seed: TreeDecomposition, block, old_ids) -> TreeDecomposition:
    index = {v: i for i, v in enumerate(old_ids)}
    bags = {
        t: frozenset(index[v] for v in bag if v in block)
        for t, bag in seed.bags.items()
    }
    return prune_empty_bags(TreeDecomposition(bags, seed.edges))


def ctw_upper_bound(
    g: Graph, seed: TreeDecomposition | None = None, max_n: int | None = None
) -> PipelineResult:
    """Connected decomposition of g plus the certified width arithmetic.

    Without a seed, each block gets an exact-width decomposition (subject to
    the solver size limit); with one, its restriction to each block is used
    instead and the reported treewidth is not certified optimal.
    """
    if g.n == 0:
        raise ValueError("graph must be nonempty")
    if seed is not None and not validate(g, seed).valid:
        raise ValueError("seed decomposition is invalid")
    forest = blocks(g)
    per_block: list[TreeDecomposition] = []
    navi_paths: dict[tuple[int, int], tuple[int, ...]] = {}
    width_before = 0
    navi_length = 0
    for block in forest.blocks:
        if len(block) <= 2:
            per_block.append(TreeDecomposition.from_lists([block]))
            width_before = max(width_before, len(block) - 1)
            vs = sorted(block)
            for v in vs:
                navi_paths.setdefault((v, v), (v,))
            if len(vs) == 2:
                navi_paths.setdefault((vs[0], vs[1]), (vs[0], vs[1]))
            continue
        sub, old_ids = g.induced(block)
        if seed is None:
            _, block_seed = exact_treewidth(sub, max_n=max_n)
        else:
            block_seed = _restrict_seed(seed, block, old_ids)
        atom = atomize(sub, block_seed)
        navi = build_geodesic_navi(sub)
        dnavi = extract_decomposition_navi(navi, atom)
        block_ctd = connectify(sub, atom, dnavi)
        width_before = max(width_before, atom.width)
        navi_length = max(navi_length, dnavi.length)
        per_block.append(relabel_decomposition(block_ctd, old_ids))
        for (a, b), path in dnavi.paths.items():
            navi_paths.setdefault(
                (old_ids[a], old_ids[b]), tuple(old_ids[v] for v in path)
            )
    ctd = glue_block_decompositions(g, per_block)
    final = validate(g, ctd)
    if not (final.valid and final.connected_parts):
        raise InternalCheckError("pipeline output failed validation")
    k = longest_geodesic_cycle(g)
    bound = theorem_width_bound(width_before, k)
    return PipelineResult(
        ctd=ctd,
        n=g.n,
        m=g.m,
        tw=width_before,
        tw_certified=seed is None,
        k=k,
        navi_length=navi_length,
        width_before=width_before,
        width=ctd.width,
        theorem_bound=bound,
        bound_satisfied=ctd.width <= bound,
        navi_paths=dict(sorted(navi_paths.items())),
    )


# ---------------------------------------------------------------------------
# Exact minimum width over decompositions with connected bags (oracle scale).

def _connected_td_exists(g: Graph, t: int) -> bool:
    """Is there a decomposition of width <= t whose bags all induce
    connected subgraphs?

    Bag sets are built by leaf attachment: a new bag W may hang off an
    existing bag B when W's overlap with everything placed so far lies
    inside B, which preserves coherence incrementally. Any valid target is
    reachable this way (insert its bags root-first), bag sets stay
    antichains (nested bags contract away), and at most n bags are needed.

    A first pass branches only on bags containing the currently hardest
    uncovered item, which finds witnesses quickly but can miss insertion
    orders; when it fails, an unrestricted complete pass decides.
    """
    def mask_of(vs) -> int:
        m = 0
        for v in vs:
            m |= 1 << v
        return m

    candidates = [
        mask_of(s)
        for s in sorted(
            connected_subsets(g, t + 1), key=lambda s: (-len(s), sorted(s))
        )
    ]
    all_edges = g.edge_list
    full = (1 << g.n) - 1
    edge_masks = [mask_of(e) for e in all_edges]
    edges_in = {
        cand: mask_of(i for i, em in enumerate(edge_masks) if em & cand == em)
        for cand in candidates
    }
    all_covered = (1 << len(all_edges)) - 1
    if any(not any(em & c == em for c in candidates) for em in edge_masks):
        return False
    max_new_edges = comb(t + 1, 2)

    def attachable(cand: int, bags: frozenset, union: int) -> bool:
        overlap = cand & union
        # connected graphs never admit an empty adhesion, and nested bags
        # contract away, so a new bag must overlap what is placed, be
        # incomparable with every placed bag, and fit its overlap into one
        if overlap == 0:
            return False
        for b in bags:
            if cand & b in (cand, b):
                return False
        return any(overlap & ~b == 0 for b in bags)

    def progress(cand: int, union: int, covered: int) -> int:
        return (cand & ~union).bit_count() + (edges_in[cand] & ~covered).bit_count()

    def run(require_progress: bool) -> bool:
        seen_states: set[frozenset] = set()

        def search(bags: frozenset, union: int, covered: int) -> bool:
            if union == full and covered == all_covered:
                return True
            slots = g.n - len(bags)
            if slots <= 0:
                return False
            if not bags:
                # some bag holds vertex 0; root the insertion there
                pool = [c for c in candidates if c & 1]
            else:
                # each further bag adds at most t vertices and covers at
                # most C(t+1, 2) new edges
                if (full & ~union).bit_count() > slots * t:
                    return False
                if (all_covered & ~covered).bit_count() > slots * max_new_edges:
                    return False
                attach = [c for c in candidates if attachable(c, bags, union)]
                if require_progress:
                    attach = [c for c in attach if progress(c, union, covered)]
                # take the candidates for the most-constrained uncovered edge
                # first, then the rest (possible enablers)
                primary: list[int] | None = None
                for i, em in enumerate(edge_masks):
                    if covered >> i & 1:
                        continue
                    p = [c for c in attach if em & c == em]
                    if primary is None or len(p) < len(primary):
                        primary = p
                if primary is None:
                    low = (~union & full) & -(~union & full)
                    primary = [c for c in attach if c & low]
                head = set(primary)
                rest = [c for c in attach if c not in head]
                primary.sort(key=lambda c: -progress(c, union, covered))
                rest.sort(key=lambda c: -progress(c, union, covered))
                pool = primary + rest
            for cand in pool:
                state = bags | {cand}
                if state in seen_states:
                    continue
                seen_states.add(state)
                if search(state, union | cand, covered | edges_in[cand]):
                    return True
            return False

        return search(frozenset(), 0, 0)

    # every bag of an insertion order may cover something new (common), or a
    # pure glue bag is unavoidable in every order (rare); the restricted
    # pass finds witnesses fast, the unrestricted pass is the authority
    if run(require_progress=True):
        return True
    return run(require_progress=False)


def exact_ctw_small(g: Graph, max_n: int | None = None) -> int:
    """Exact minimum width of a decomposition with connected bags.

    Exhaustive (see _connected_td_exists), so gated behind a small size
    limit; exactness is the contract, runtime at the size limit is
    best-effort and can reach minutes on adversarial dense instances. The
    search starts from max(treewidth, ceil(k/2)) since a geodesic cycle of
    length k forces connected covers of size above ceil(k/2).
    """
    limit = resolve_limit(max_n, CTW_LIMIT)
    if g.n == 0:
        raise ValueError("graph must be nonempty")
    if g.n > limit:
        raise SizeLimitError(
            f"{g.n} vertices exceeds the exact solver limit {limit}"
        )
    comps = components(g)
    if len(comps) > 1:
        best = 0
        for comp in comps:
            sub, _ = g.induced(comp)
            best = max(best, exact_ctw_small(sub, max_n=limit))
        return best
    if g.n == 1:
        return 0
    tw, _ = exact_treewidth(g, max_n=max(g.n, limit))
    k = longest_geodesic_cycle(g)
    lower = max(tw, (k + 1) // 2 if k >= 3 else 1)
    for t in range(lower, g.n - 1):
        if _connected_td_exists(g, t):
            return t
    return g.n - 1
