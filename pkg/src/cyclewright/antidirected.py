"""Constructive pipeline from large chromatic number to a long antidirected
cycle in an oriented graph: degeneracy peel, quarter directed cut, dense
bipartite core, and the non-extendable-path cycle argument. Every stage's
guarantee is asserted as the pipeline runs.
"""

from __future__ import annotations

from dataclasses import dataclass

from .certificates import verify_subdivision
from .cycles import SubdivisionWitness, witness_from_antidirected_cycle
from .digraph import Digraph
from .errors import DegenerateError, PreconditionError


@dataclass(frozen=True)
class BipartiteCut:
    side_a: frozenset[int]
    side_b: frozenset[int]
    forward_arcs: frozenset[tuple[int, int]]


def peel_to_min_degree(d: Digraph, degree: int) -> tuple[Digraph, list[int]]:
    """Maximal subdigraph whose underlying graph has min degree >= `degree`
    (possibly empty), via iterated deletion. Returns (subdigraph, lift)."""
    alive = set(range(d.n))
    adj = {v: set(d.neighbors[v]) for v in range(d.n)}
    queue = [v for v in alive if len(adj[v]) < degree]
    while queue:
        v = queue.pop()
        if v not in alive:
            continue
        alive.discard(v)
        for w in adj[v]:
            adj[w].discard(v)
            if w in alive and len(adj[w]) < degree:
                queue.append(w)
    return d.induced(sorted(alive))


def quarter_directed_cut(d: Digraph) -> BipartiteCut:
    """Bipartition with at least |A(D)|/4 arcs from A to B.

    Single-vertex-move local search on the underlying multigraph reaches the
    m/2 cut guarantee; the richer direction is then kept. Scan order is by
    vertex id, so the result is deterministic.
    """
    if not d.arcs:
        raise PreconditionError("cut needs at least one arc")
    side = [0] * d.n
    arcs = list(d.arcs)

    def cut_size() -> int:
        return sum(1 for u, v in arcs if side[u] != side[v])

    best = cut_size()
    improved = True
    while improved:
        improved = False
        for v in range(d.n):
            side[v] ^= 1
            now = cut_size()
            if now > best:
                best = now
                improved = True
            else:
                side[v] ^= 1
    m = len(arcs)
    assert best * 2 >= m, "local search below the m/2 guarantee"
    a = frozenset(v for v in range(d.n) if side[v] == 0)
    b = frozenset(v for v in range(d.n) if side[v] == 1)
    fwd_ab = frozenset((u, v) for u, v in arcs if u in a and v in b)
    fwd_ba = frozenset((u, v) for u, v in arcs if u in b and v in a)
    if len(fwd_ab) >= len(fwd_ba):
        cut = BipartiteCut(a, b, fwd_ab)
    else:
        cut = BipartiteCut(b, a, fwd_ba)
    assert 4 * len(cut.forward_arcs) >= m, "direction choice below m/4"
    return cut


def dense_bipartite_subgraph(cut: BipartiteCut, p: int) -> BipartiteCut:
    """Sub-bipartite-digraph of the forward arcs with min degree >= p+1, by
    iterated deletion of degree-<=p vertices. Degenerate if it empties."""
    alive = set(cut.side_a | cut.side_b)
    adj: dict[int, set[int]] = {v: set() for v in alive}
    for u, v in cut.forward_arcs:
        adj[u].add(v)
        adj[v].add(u)
    queue = [v for v in alive if len(adj[v]) <= p]
    while queue:
        v = queue.pop()
        if v not in alive:
            continue
        alive.discard(v)
        for w in adj[v]:
            adj[w].discard(v)
            if w in alive and len(adj[w]) <= p:
                queue.append(w)
    if not alive:
        raise DegenerateError("density peel emptied the bipartite graph")
    arcs = frozenset(
        (u, v) for u, v in cut.forward_arcs if u in alive and v in alive
    )
    return BipartiteCut(
        frozenset(cut.side_a & alive), frozenset(cut.side_b & alive), arcs
    )


def long_cycle_bipartite(core: BipartiteCut, k: int) -> list[int]:
    """Cycle of length >= 2k in a bipartite graph of min degree >= k: take a
    non-extendable path, close it at an end's furthest neighbor."""
    adj: dict[int, set[int]] = {v: set() for v in core.side_a | core.side_b}
    for u, v in core.forward_arcs:
        adj[u].add(v)
        adj[v].add(u)
    for v, nb in adj.items():
        if len(nb) < k:
            raise PreconditionError(f"vertex {v} has degree {len(nb)} < {k}")
    start = min(v for v in adj if adj[v])
    path = [start]
    on_path = {start}
    grew = True
    while grew:
        grew = False
        for end, insert in ((path[-1], "tail"), (path[0], "head")):
            ext = next((w for w in sorted(adj[end]) if w not in on_path), None)
            if ext is not None:
                if insert == "tail":
                    path.append(ext)
                else:
                    path.insert(0, ext)
                on_path.add(ext)
                grew = True
                break
    a = path[0]
    assert all(w in on_path for w in adj[a]), "path end still extendable"
    furthest = max(path.index(w) for w in adj[a])
    cycle = path[: furthest + 1]
    assert len(cycle) >= 2 * k, "closed cycle shorter than 2k"
    return cycle


def find_antidirected(
    d: Digraph, k: int
) -> SubdivisionWitness:
    """Verified antidirected cycle of length >= 2k in an oriented graph whose
    chromatic number reaches 8k-7 (certified by a nonempty peel at 8k-8)."""
    if k < 2:
        raise PreconditionError("requires k >= 2")
    if not d.is_oriented():
        raise PreconditionError("input must be an oriented graph (no digons)")
    core, lift = peel_to_min_degree(d, 8 * k - 8)
    if core.n == 0:
        raise PreconditionError(
            "peel at 8k-8 emptied the graph; chromatic hypothesis not met"
        )
    assert len(core.arcs) * 2 >= (8 * k - 8) * core.n  # oriented: arcs = edges
    cut = quarter_directed_cut(core)
    assert len(cut.forward_arcs) >= (k - 1) * core.n
    dense = dense_bipartite_subgraph(cut, k - 1)
    cycle = long_cycle_bipartite(dense, k)
    # orient: arcs run A -> B, so A-side vertices are the sources
    starts_with_source = cycle[0] in dense.side_a
    w = witness_from_antidirected_cycle(2 * k, cycle, starts_with_source)
    if not verify_subdivision(core, w):
        raise AssertionError("pipeline produced an unverifiable cycle")
    lifted = w.mapped(lift)
    if not verify_subdivision(d, lifted):
        raise AssertionError("lift broke the witness")
    return lifted
