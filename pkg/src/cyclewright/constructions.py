"""Instance generators, the extremal acyclic blocks construction, hypergraph
search, the k-strong embedding, and the exhaustive small-digraph enumerator
used by the acceptance suite.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

import numpy as np

from .certificates import verify_subdivision
from .cycles import OrientedCycleSpec, SubdivisionWitness
from .digraph import Digraph, is_acyclic, is_k_strong, is_strong, shortest_dipath
from .errors import (
    BudgetExceededError,
    InfeasibleParametersError,
    PreconditionError,
)
from .oracles import SearchBudget, _Meter, min_blocks_exceeds, proper_colorings


# -- deterministic families ------------------------------------------------------


def transitive_tournament(n: int) -> Digraph:
    if n < 1:
        raise InfeasibleParametersError("n >= 1")
    return Digraph(n, frozenset((u, v) for u in range(n) for v in range(u + 1, n)))


def directed_cycle(n: int) -> Digraph:
    if n < 2:
        raise InfeasibleParametersError("n >= 2")
    return Digraph(n, frozenset((i, (i + 1) % n) for i in range(n)))


def complete_digraph(n: int) -> Digraph:
    if n < 1:
        raise InfeasibleParametersError("n >= 1")
    return Digraph(n, frozenset((u, v) for u in range(n) for v in range(n) if u != v))


def random_tournament(n: int, seed: int) -> Digraph:
    rng = random.Random(("tournament", n, seed).__repr__())
    arcs = set()
    for u in range(n):
        for v in range(u + 1, n):
            arcs.add((u, v) if rng.random() < 0.5 else (v, u))
    return Digraph(n, frozenset(arcs))


def random_digraph(n: int, m: int, seed: int) -> Digraph:
    slots = [(u, v) for u in range(n) for v in range(n) if u != v]
    if not (0 <= m <= len(slots)):
        raise InfeasibleParametersError(f"m must be in 0..{len(slots)}")
    rng = random.Random(("digraph", n, m, seed).__repr__())
    return Digraph(n, frozenset(rng.sample(slots, m)))


def random_strong_digraph(n: int, m: int, seed: int, max_tries: int = 10000) -> Digraph:
    if m < n:
        raise InfeasibleParametersError("a strong digraph needs m >= n")
    for attempt in range(max_tries):
        d = random_digraph(n, m, seed * 100003 + attempt)
        if is_strong(d):
            return d
    raise InfeasibleParametersError(f"no strong digraph found in {max_tries} tries")


def hamiltonian_with_bounded_span(
    n: int, max_span: int, density: float, seed: int
) -> Digraph:
    """Directed Hamiltonian cycle 0..n-1 plus random chords jumping forward
    between 2 and max_span positions, each kept with probability `density`."""
    if n < 3 or max_span < 0:
        raise InfeasibleParametersError("need n >= 3, max_span >= 0")
    rng = random.Random(("hamspan", n, max_span, density, seed).__repr__())
    arcs = {(i, (i + 1) % n) for i in range(n)}
    for i in range(n):
        for f in range(2, min(max_span, n - 1) + 1):
            if rng.random() < density:
                arcs.add((i, (i + f) % n))
    return Digraph(n, frozenset(arcs))


# -- exhaustive enumeration up to isomorphism -------------------------------------

_ENUM_CACHE: dict[tuple[int, bool], list[Digraph]] = {}


def all_digraphs_up_to_iso(n: int, strong_only: bool = False) -> list[Digraph]:
    """Every digraph on n vertices, one representative per isomorphism class.

    Vectorized over arc bitmasks, so it is practical up to n = 5 (9608
    classes; 5048 strong). All properties tested downstream are isomorphism
    invariants, so these representatives cover every labeled instance.
    """
    if n > 5:
        raise InfeasibleParametersError("exhaustive enumeration supported to n = 5")
    key = (n, strong_only)
    if key in _ENUM_CACHE:
        return _ENUM_CACHE[key]
    arcs = [(u, v) for u in range(n) for v in range(n) if u != v]
    na = len(arcs)
    aidx = {a: i for i, a in enumerate(arcs)}
    masks = np.arange(1 << na, dtype=np.uint64)
    if strong_only and n >= 2:
        adj = np.zeros((len(masks), n, n), dtype=bool)
        for i, (u, v) in enumerate(arcs):
            adj[:, u, v] = (masks >> np.uint64(i)) & np.uint64(1) != 0
        reach = adj | np.eye(n, dtype=bool)
        for _ in range(max(1, int(np.ceil(np.log2(n))))):
            reach = np.matmul(reach, reach)
        masks = masks[reach.all(axis=(1, 2))]
        del adj, reach
    canon = masks.copy()
    for perm in itertools.permutations(range(n)):
        if perm == tuple(range(n)):
            continue
        out = np.zeros_like(masks)
        for i, (u, v) in enumerate(arcs):
            j = aidx[(perm[u], perm[v])]
            out |= ((masks >> np.uint64(i)) & np.uint64(1)) << np.uint64(j)
        np.minimum(canon, out, out=canon)
    reps = np.unique(canon)
    result = [
        Digraph(n, frozenset(arcs[i] for i in range(na) if (mask >> i) & 1))
        for mask in reps.tolist()
    ]
    _ENUM_CACHE[key] = result
    return result


def strong_digraphs_up_to_iso(n: int) -> list[Digraph]:
    if n == 1:
        return [Digraph(1, frozenset())]
    return all_digraphs_up_to_iso(n, strong_only=True)


def all_cycle_specs(max_order: int) -> list[OrientedCycleSpec]:
    """Every oriented-cycle pattern of order 2..max_order, one per dihedral
    equivalence class of the block sequence."""
    from .cycles import directed_cycle_spec

    seen = set()
    out: list[OrientedCycleSpec] = []

    def canon(blocks: tuple[tuple[int, bool], ...]):
        p = len(blocks)
        forms = []
        for r in range(p):
            rot = blocks[r:] + blocks[:r]
            forms.append(rot)
            refl = tuple((l, not f) for l, f in reversed(rot))
            forms.append(refl)
        return min(forms)

    for total in range(2, max_order + 1):
        out.append(directed_cycle_spec(total))
        if total < 3:
            # order-2 multi-block patterns are parallel arcs, not cycles
            continue
        for p in range(2, total + 1, 2):
            for comp in _compositions(total, p):
                blocks = tuple(
                    (length, i % 2 == 0) for i, length in enumerate(comp)
                )
                key = canon(blocks)
                if key in seen:
                    continue
                seen.add(key)
                out.append(OrientedCycleSpec(blocks))
    return out


def _compositions(total: int, parts: int):
    if parts == 1:
        if total >= 1:
            yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


# -- hypergraphs -------------------------------------------------------------------


@dataclass(frozen=True)
class Hypergraph:
    ground_size: int
    edges: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        seen = set()
        for e in self.edges:
            if tuple(sorted(e)) != tuple(e):
                raise ValueError("edges must be sorted tuples")
            if e in seen:
                raise ValueError(f"repeated edge {e}")
            seen.add(e)
            if any(not (0 <= v < self.ground_size) for v in e):
                raise ValueError("edge vertex outside ground set")


def hypergraph_to_text(h: Hypergraph) -> str:
    lines = [f"g {h.ground_size}"]
    lines.extend(" ".join(str(v) for v in e) for e in h.edges)
    return "\n".join(lines) + "\n"


def hypergraph_from_text(text: str) -> Hypergraph:
    ground = None
    edges = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if ground is None:
            parts = line.split()
            if len(parts) != 2 or parts[0] != "g":
                raise ValueError("expected 'g <ground_size>' header")
            ground = int(parts[1])
            continue
        edges.append(tuple(sorted(int(x) for x in line.split())))
    if ground is None:
        raise ValueError("missing header")
    return Hypergraph(ground, tuple(edges))


def hypergraph_girth(h: Hypergraph) -> int | float:
    """Length of a shortest alternating vertex/edge cycle, or math.inf.

    Computed as half the girth of the vertex-edge incidence graph.
    """
    import math
    from collections import deque

    n = h.ground_size
    m = len(h.edges)
    adj: list[list[int]] = [[] for _ in range(n + m)]
    for ei, e in enumerate(h.edges):
        for v in e:
            adj[v].append(n + ei)
            adj[n + ei].append(v)
    best = math.inf
    for s in range(n + m):
        dist = {s: 0}
        parent = {s: -1}
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if y not in dist:
                    dist[y] = dist[x] + 1
                    parent[y] = x
                    queue.append(y)
                elif parent[x] != y:
                    best = min(best, dist[x] + dist[y] + 1)
        if best == 4:
            break
    return best // 2 if best != math.inf else math.inf


def is_weakly_colorable(h: Hypergraph, c: int, meter: _Meter | None = None) -> bool:
    """Backtracking search for a coloring with no monochromatic edge."""
    if any(len(e) <= 1 for e in h.edges):
        return False
    incident: list[list[int]] = [[] for _ in range(h.ground_size)]
    for ei, e in enumerate(h.edges):
        for v in e:
            incident[v].append(ei)
    colors = [-1] * h.ground_size

    def edge_forced_mono(ei: int, v: int) -> bool:
        col = colors[v]
        return all(colors[w] == col for w in h.edges[ei])

    def bt(v: int) -> bool:
        if meter is not None:
            meter.tick("weak-coloring")
        if v == h.ground_size:
            return True
        limit = min(c, (max(colors[:v], default=-1) + 2))
        for col in range(limit):
            colors[v] = col
            if all(
                not edge_forced_mono(ei, v)
                for ei in incident[v]
                if max(h.edges[ei]) == v
            ):
                # only fully-colored edges can be judged; edges ending at v
                # are exactly those whose largest vertex is v
                if bt(v + 1):
                    return True
        colors[v] = -1
        return False

    return bt(0)


def weak_chromatic_number(h: Hypergraph, budget: SearchBudget | None = None) -> int:
    if any(len(e) <= 1 for e in h.edges):
        raise PreconditionError("weak coloring undefined with edges of size <= 1")
    meter = _Meter(budget)
    if not h.edges:
        return 1
    c = 1
    while True:
        if is_weakly_colorable(h, c, meter):
            return c
        c += 1


def search_hypergraph(
    uniformity: int, g: int, c: int, budget: SearchBudget | None = None
) -> Hypergraph:
    """Randomized search for a `uniformity`-uniform hypergraph with girth > g
    and weak chromatic number > c, verified before returning.

    The schedule greedily covers colorings when c = 2 (every c-coloring must
    leave some edge monochromatic) and falls back to seeded uniform samples;
    girth constraints restrict the candidate edges to a partial linear
    system. Raises BudgetExceededError when the schedule is exhausted.
    """
    budget = budget or SearchBudget()
    meter = _Meter(budget)
    base = max(uniformity + 1, 2 * uniformity - 1)
    for round_ in range(8):
        n = base + 2 * round_
        for attempt in range(4):
            seed = budget.seed * 1009 + round_ * 17 + attempt
            for gen in (_cover_candidate, _random_girth_candidate):
                h = gen(uniformity, g, c, n, seed, meter)
                if h is None:
                    continue
                if hypergraph_girth(h) <= g:
                    continue
                if is_weakly_colorable(h, c, meter):
                    continue
                return h
    raise BudgetExceededError("hypergraph search schedule exhausted")


def _random_girth_candidate(
    uniformity: int, g: int, c: int, n: int, seed: int, meter: _Meter
) -> Hypergraph | None:
    """Seeded random edges added one at a time under the girth constraint."""
    rng = random.Random(("hyprand", uniformity, g, c, n, seed).__repr__())
    pool = list(itertools.combinations(range(n), uniformity))
    rng.shuffle(pool)
    chosen: list[tuple[int, ...]] = []
    target = 2 * n
    for e in pool:
        meter.tick("hypergraph-random")
        cand = Hypergraph(n, tuple(sorted(chosen + [e])))
        if hypergraph_girth(cand) <= g:
            continue
        chosen.append(e)
        if len(chosen) >= target:
            break
    if not chosen:
        return None
    return Hypergraph(n, tuple(sorted(chosen)))


def _cover_candidate(
    uniformity: int, g: int, c: int, n: int, seed: int, meter: _Meter
) -> Hypergraph | None:
    """Greedy cover: repeatedly add the candidate edge that spoils the most
    currently-proper c-colorings; candidates respect the girth constraint
    incrementally for g >= 2 (pairwise intersections <= 1)."""
    if n > 24 or c > 3:
        return None
    rng = random.Random(seed)
    cands = list(itertools.combinations(range(n), uniformity))
    rng.shuffle(cands)
    total = c**n
    if total > 1 << 22:
        return None
    colorings = np.arange(total, dtype=np.int64)
    digits = np.empty((total, n), dtype=np.int8)
    tmp = colorings.copy()
    for v in range(n):
        digits[:, v] = tmp % c
        tmp //= c
    alive = np.ones(total, dtype=bool)
    chosen: list[tuple[int, ...]] = []
    chosen_pairs: set[tuple[int, int]] = set()

    def mono_mask(edge) -> np.ndarray:
        cols = digits[:, edge]
        return (cols == cols[:, :1]).all(axis=1)

    while alive.any():
        meter.tick("hypergraph-cover")
        best_edge, best_kill = None, 0
        for e in cands:
            if e in chosen:
                continue
            if g >= 2 and any(
                p in chosen_pairs for p in itertools.combinations(e, 2)
            ):
                continue
            kill = int((mono_mask(e) & alive).sum())
            if kill > best_kill:
                best_kill, best_edge = kill, e
        if best_edge is None:
            return None
        chosen.append(best_edge)
        if g >= 2:
            chosen_pairs.update(itertools.combinations(best_edge, 2))
        alive &= ~mono_mask(best_edge)
        if len(chosen) > len(cands):
            return None
    return Hypergraph(n, tuple(sorted(chosen)))


def enumerate_colorings(d: Digraph, c: int, budget: SearchBudget | None = None):
    """All proper c-colorings of the underlying graph, canonical order."""
    meter = _Meter(budget)
    cols = list(proper_colorings(d, c, meter))
    return len(cols), cols


# -- the acyclic blocks construction ------------------------------------------------


def build_blocks_digraph(
    b: int, c: int, budget: SearchBudget | None = None
) -> Digraph:
    """Acyclic digraph with chromatic number >= c whose oriented cycles all
    have more than b blocks; verified before returning.

    The inductive step glues disjoint copies of the previous digraph through
    a weak-(p+1)-chromatic hypergraph whose hyperedges are split into
    color-slot parts; every cycle then alternates through at least two sink
    vertices per hypergraph step. Feasible at desk scale for c <= 3.
    """
    budget = budget or SearchBudget()
    if c < 2:
        raise InfeasibleParametersError("c >= 2 required")
    if c == 2:
        return Digraph(2, frozenset({(0, 1)}))
    if c > 3:
        raise InfeasibleParametersError(
            "the construction is doubly exponential; c <= 3 at desk scale"
        )
    if b > 5:
        raise InfeasibleParametersError(
            "distinct-part gluing certifies block floors up to 5 at c = 3"
        )
    base = build_blocks_digraph(b, 2, budget)
    _, cols = enumerate_colorings(base, 2)
    p = len(cols)  # = 2 for the single arc
    h, parts = _blocks_hypergraph(b, p, budget)
    nh = h.ground_size

    # copy x occupies vertices (2x, 2x+1) carrying the arc 2x -> 2x+1
    arcs = {(2 * x, 2 * x + 1) for x in range(nh)}
    next_vertex = 2 * nh
    for e in h.edges:
        for i, part in enumerate(parts[e]):
            w = next_vertex
            next_vertex += 1
            for slot, x in enumerate(sorted(part)):
                # vertex of copy x whose color under cols[i] equals slot
                col = cols[i]
                local = next(vi for vi in range(2) if col[vi] == slot)
                arcs.add((2 * x + local, w))
    out = Digraph(next_vertex, frozenset(arcs))

    if not is_acyclic(out):
        raise AssertionError("blocks construction produced a cycle")
    if _bipartite(out):
        raise AssertionError("blocks construction is 2-colorable")
    if not min_blocks_exceeds(out, b, budget):
        raise AssertionError("blocks construction admits a short-block cycle")
    return out


def _bipartite(d: Digraph) -> bool:
    color = [-1] * d.n
    for s in range(d.n):
        if color[s] != -1:
            continue
        color[s] = 0
        stack = [s]
        while stack:
            v = stack.pop()
            for w in d.neighbors[v]:
                if color[w] == -1:
                    color[w] = 1 - color[v]
                    stack.append(w)
                elif color[w] == color[v]:
                    return False
    return True


def _blocks_hypergraph(b: int, p: int, budget: SearchBudget):
    """4-uniform hypergraph with weak chromatic number > p = 2, plus a
    partition of each edge into two pairs such that no pair is reused as a
    part anywhere. Distinct parts keep every glued cycle on at least three
    sink vertices, which replaces the paper-level girth requirement at this
    uniformity (cycle blocks = twice the sinks visited)."""
    meter = _Meter(budget)
    schedule = [(13, 5), (13, 6), (13, 7), (14, 5), (14, 6), (12, 3), (15, 5)]
    for n, seed in schedule:
        h = _cover_candidate(4, 1, p, n, seed, meter)
        if h is None or is_weakly_colorable(h, p, meter):
            continue
        assignment = _assign_parts(h.edges)
        if assignment is None:
            continue
        return h, assignment
    raise BudgetExceededError("no usable hypergraph in the seed schedule")


def _assign_parts(edges) -> dict | None:
    """Choose a pairing {xy|zw} per 4-edge with all parts globally distinct."""
    pairings = []
    for e in edges:
        a, b2, c2, d2 = e
        pairings.append(
            [
                ((a, b2), (c2, d2)),
                ((a, c2), (b2, d2)),
                ((a, d2), (b2, c2)),
            ]
        )
    used: set[tuple[int, int]] = set()
    assign: dict = {}
    order = sorted(range(len(edges)))
    nodes = [0]

    def bt(i: int) -> bool:
        nodes[0] += 1
        if nodes[0] > 200000:
            return False
        if i == len(order):
            return True
        e = edges[order[i]]
        for opt in pairings[order[i]]:
            p1, p2 = opt
            if p1 in used or p2 in used:
                continue
            used.update(opt)
            assign[e] = opt
            if bt(i + 1):
                return True
            used.difference_update(opt)
            del assign[e]
        return False

    return dict(assign) if bt(0) else None


# -- embeddings into highly strong digraphs ------------------------------------------


def embed_cycle_in_k_strong(d: Digraph, spec: OrientedCycleSpec) -> SubdivisionWitness:
    """Greedy embedding of an oriented cycle of order n into an (n-1)-strong
    digraph: pick the first n-1 pattern edges vertex by vertex, then close
    with a dipath avoiding the interior picks."""
    order = spec.order
    if not is_k_strong(d, order - 1):
        raise PreconditionError(f"digraph is not {order - 1}-strong")
    # pattern edge directions around the cycle: True = along traversal
    dirs: list[bool] = []
    for length, fwd in spec.blocks:
        dirs.extend([fwd] * length)
    picks = [0]
    for i in range(1, order):
        fwd = dirs[i - 1]
        pool = d.out[picks[-1]] if fwd else d.inn[picks[-1]]
        chosen = next(v for v in pool if v not in picks)
        picks.append(chosen)
    interior = set(picks[1:-1])
    used = {
        (picks[t], picks[t + 1]) if dirs[t] else (picks[t + 1], picks[t])
        for t in range(order - 1)
    }
    stripped = d.without_arcs(used & d.arcs)
    if dirs[-1]:
        close = shortest_dipath(
            stripped, picks[-1], [picks[0]], forbidden_internal=interior | {picks[0]}
        )
    else:
        close = shortest_dipath(
            stripped, picks[0], [picks[-1]], forbidden_internal=interior | {picks[-1]}
        )
    if close is None:
        raise AssertionError("closing dipath missing despite strongness")

    # per-edge realizations in arc direction; the wrapped edge is the dipath
    real: list[list[int]] = []
    for t in range(order - 1):
        a, b2 = picks[t], picks[t + 1]
        real.append([a, b2] if dirs[t] else [b2, a])
    real.append(list(close))

    branch = []
    paths = []
    idx = 0
    for length, fwd in spec.blocks:
        branch.append(picks[idx])
        edge_ids = list(range(idx, idx + length))
        segs = [real[t] for t in (edge_ids if fwd else reversed(edge_ids))]
        path: list[int] = []
        for seg in segs:
            path = seg if not path else path + seg[1:]
        paths.append(tuple(path))
        idx += length
    w = SubdivisionWitness(spec, tuple(branch), tuple(paths))
    if not verify_subdivision(d, w):
        raise AssertionError("embedding produced an unverifiable witness")
    return w
