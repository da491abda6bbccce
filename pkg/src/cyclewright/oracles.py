"""Independent brute-force oracles: exact chromatic number, exhaustive
subdivision and path searches, longest cycles/dipaths, cycle block minima,
and the constructive Gallai-Roy coloring.

Everything here is deterministic given (input, seed) and either finishes
exhaustively or raises/reports budget exhaustion; nothing is heuristic.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

from .coloring import Coloring
from .cycles import (
    OrientedCycleSpec,
    SubdivisionWitness,
    two_block_spec,
    witness_from_directed_cycle,
)
from .digraph import Digraph, reachable_from, strong_components, topological_order
from .errors import BudgetExceededError, PreconditionError


@dataclass(frozen=True)
class SearchBudget:
    node_limit: int = 5_000_000
    time_limit: float = 120.0
    seed: int = 0


DEFAULT_BUDGET = SearchBudget()


class _Meter:
    """Counts search nodes against a budget; time is checked sparsely."""

    __slots__ = ("limit", "deadline", "nodes")

    def __init__(self, budget: SearchBudget | None):
        budget = budget or DEFAULT_BUDGET
        self.limit = budget.node_limit
        self.deadline = time.monotonic() + budget.time_limit
        self.nodes = 0

    def tick(self, what: str = "search") -> None:
        self.nodes += 1
        if self.nodes > self.limit:
            raise BudgetExceededError(f"{what}: node limit exceeded")
        if self.nodes % 8192 == 0 and time.monotonic() > self.deadline:
            raise BudgetExceededError(f"{what}: time limit exceeded")


# -- exact chromatic number ---------------------------------------------------


def _components(adj: list[list[int]]) -> list[list[int]]:
    n = len(adj)
    seen = [False] * n
    comps = []
    for s in range(n):
        if seen[s]:
            continue
        comp, stack = [], [s]
        seen[s] = True
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in adj[v]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def _bipartition(adj: list[list[int]], comp: list[int]) -> list[int] | None:
    side = {comp[0]: 0}
    stack = [comp[0]]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in side:
                side[w] = 1 - side[v]
                stack.append(w)
            elif side[w] == side[v]:
                return None
    return [side[v] for v in comp]


def _greedy_clique(adj: list[list[int]], comp: list[int]) -> list[int]:
    best: list[int] = []
    nbr = {v: set(adj[v]) for v in comp}
    order = sorted(comp, key=lambda v: -len(adj[v]))
    for seed_v in order[:8]:
        clique = [seed_v]
        cand = nbr[seed_v] & set(comp)
        while cand:
            v = max(cand, key=lambda x: (len(nbr[x] & cand), -x))
            clique.append(v)
            cand &= nbr[v]
        if len(clique) > len(best):
            best = clique
    return best


def _dsatur_greedy(adj: list[list[int]], comp: list[int]) -> dict[int, int]:
    colors: dict[int, int] = {}
    sat: dict[int, set[int]] = {v: set() for v in comp}
    uncolored = set(comp)
    while uncolored:
        v = max(uncolored, key=lambda x: (len(sat[x]), len(adj[x]), -x))
        c = 0
        while c in sat[v]:
            c += 1
        colors[v] = c
        uncolored.discard(v)
        for w in adj[v]:
            if w in sat:
                sat[w].add(c)
    return colors


def _k_colorable(
    adj: list[list[int]], comp: list[int], k: int, meter: _Meter
) -> dict[int, int] | None:
    """DSATUR-ordered backtracking with new-color symmetry breaking."""
    colors: dict[int, int] = {}
    sat: dict[int, set[int]] = {v: set() for v in comp}
    comp_set = set(comp)

    def pick() -> int:
        return max(
            (v for v in comp if v not in colors),
            key=lambda x: (len(sat[x]), len(adj[x]), -x),
        )

    max_used = [-1]

    def assign(v: int, c: int) -> list[int]:
        colors[v] = c
        touched = []
        for w in adj[v]:
            if w in comp_set and w not in colors and c not in sat[w]:
                sat[w].add(c)
                touched.append(w)
        return touched

    def unassign(v: int, c: int, touched: list[int]) -> None:
        del colors[v]
        for w in touched:
            sat[w].discard(c)

    def bt() -> bool:
        if len(colors) == len(comp):
            return True
        meter.tick("chromatic")
        v = pick()
        ceiling = min(k - 1, max_used[0] + 1)
        for c in range(ceiling + 1):
            if c in sat[v]:
                continue
            prev = max_used[0]
            max_used[0] = max(prev, c)
            touched = assign(v, c)
            if bt():
                return True
            unassign(v, c, touched)
            max_used[0] = prev
        return False

    return dict(colors) if bt() else None


def exact_coloring(
    d: Digraph, budget: SearchBudget | None = None, n_limit: int = 20
) -> Coloring:
    """Optimal proper coloring of the underlying simple graph.

    Branch-and-bound per connected component: greedy-clique lower bound,
    DSATUR upper bound, then k-colorability backtracking between them. The
    default n_limit keeps accidental huge inputs out; callers that know the
    instance is easy (sparse construction outputs) may raise it.
    """
    if d.n == 0:
        return Coloring((), 1)
    if d.n > n_limit:
        from .errors import BudgetExceededError as BE

        raise BE(f"chromatic search limited to {n_limit} vertices (got {d.n})")
    meter = _Meter(budget)
    adj: list[list[int]] = [[] for _ in range(d.n)]
    for u, v in d.underlying_edges:
        adj[u].append(v)
        adj[v].append(u)

    final = [0] * d.n
    overall = 1
    for comp in _components(adj):
        if all(not adj[v] for v in comp):
            continue
        two = _bipartition(adj, comp)
        if two is not None:
            for v, s in zip(comp, two):
                final[v] = s
            overall = max(overall, 2)
            continue
        clique = _greedy_clique(adj, comp)
        lb = max(3, len(clique))
        greedy = _dsatur_greedy(adj, comp)
        ub = max(greedy.values()) + 1
        best = greedy
        k = lb
        while k < ub:
            sol = _k_colorable(adj, comp, k, meter)
            if sol is not None:
                best = sol
                ub = k
                break
            k += 1
        for v in comp:
            final[v] = best[v]
        overall = max(overall, max(best.values()) + 1)
    return Coloring(tuple(final), overall)


def chromatic_number_exact(
    d: Digraph, budget: SearchBudget | None = None, n_limit: int = 20
) -> int:
    if d.n == 0:
        return 0
    if not d.arcs:
        return 1
    return exact_coloring(d, budget, n_limit).palette_size


def count_colorings(d: Digraph, c: int, meter: _Meter | None = None) -> int:
    """Number of proper c-colorings of the underlying graph (exhaustive)."""
    total = 0
    for _ in proper_colorings(d, c, meter):
        total += 1
    return total


def proper_colorings(d: Digraph, c: int, meter: _Meter | None = None):
    """Yield all proper c-colorings (as tuples) in lexicographic order."""
    nbr = d.neighbors
    assignment = [-1] * d.n

    def rec(v: int):
        if meter is not None:
            meter.tick("colorings")
        if v == d.n:
            yield tuple(assignment)
            return
        for col in range(c):
            if all(assignment[w] != col for w in nbr[v] if w < v):
                assignment[v] = col
                yield from rec(v + 1)
                assignment[v] = -1

    yield from rec(0)


# -- longest directed cycle / dipath ------------------------------------------


def longest_directed_cycle(
    d: Digraph, budget: SearchBudget | None = None
) -> list[int] | None:
    """A maximum-length directed cycle (vertex list, no repeated endpoint),
    or None if acyclic. Exhaustive DFS with reachability pruning; canonical
    start (smallest vertex on the cycle) keeps it deterministic."""
    meter = _Meter(budget)
    best: list[int] | None = None
    for s in range(d.n):
        allowed = set(range(s, d.n))
        path = [s]
        on_path = {s}

        def dfs() -> bool:
            nonlocal best
            meter.tick("longest-cycle")
            v = path[-1]
            for w in d.out[v]:
                if w == s and (best is None or len(path) > len(best)):
                    best = list(path)
                    if len(best) == d.n:
                        return True
                if w in on_path or w not in allowed:
                    continue
                free = (allowed - on_path) | {s}
                reach = reachable_from(d, w, free)
                if s not in reach:
                    continue
                if best is not None and len(path) + len(reach - {s}) <= len(best):
                    continue
                path.append(w)
                on_path.add(w)
                if dfs():
                    return True
                path.pop()
                on_path.discard(w)
            return False

        if dfs():
            break
    return best


def longest_dipath(d: Digraph, budget: SearchBudget | None = None) -> list[int]:
    """A maximum-length simple dipath (exhaustive, pruned)."""
    meter = _Meter(budget)
    best: list[int] = []
    for s in range(d.n):
        path = [s]
        on_path = {s}

        def dfs() -> bool:
            nonlocal best
            meter.tick("longest-dipath")
            if len(path) > len(best):
                best = list(path)
                if len(best) == d.n:
                    return True
            v = path[-1]
            for w in d.out[v]:
                if w in on_path:
                    continue
                reach = reachable_from(d, w, set(range(d.n)) - on_path)
                if len(path) + len(reach) <= len(best):
                    continue
                path.append(w)
                on_path.add(w)
                if dfs():
                    return True
                path.pop()
                on_path.discard(w)
            return False

        if dfs():
            break
    return best


# -- Gallai-Roy ---------------------------------------------------------------


def gallai_roy(d: Digraph) -> tuple[Coloring, list[int]]:
    """Constructive Gallai-Roy: color each vertex by the length of the
    longest dipath ending at it inside a maximal acyclic spanning subdigraph.

    Proper on all of A(D); the palette is exactly (returned dipath length + 1)
    and never exceeds the length of a longest dipath of D plus one. The
    returned dipath realizes the top color.
    """
    reach = [[False] * d.n for _ in range(d.n)]
    for v in range(d.n):
        reach[v][v] = True
    kept: set[tuple[int, int]] = set()
    for u, v in d.sorted_arcs():
        if reach[v][u]:
            continue
        kept.add((u, v))
        if not reach[u][v]:
            ancestors = [a for a in range(d.n) if reach[a][u]]
            descendants = [b for b in range(d.n) if reach[v][b]]
            for a in ancestors:
                row = reach[a]
                for b in descendants:
                    row[b] = True
    sub = Digraph(d.n, frozenset(kept))
    order = topological_order(sub)
    dist = [0] * d.n
    pred = [-1] * d.n
    for v in order:
        for w in sub.out[v]:
            if dist[v] + 1 > dist[w]:
                dist[w] = dist[v] + 1
                pred[w] = v
    palette = (max(dist) + 1) if d.n else 1
    top = max(range(d.n), key=lambda v: dist[v]) if d.n else 0
    path = [top]
    while pred[path[-1]] != -1:
        path.append(pred[path[-1]])
    path.reverse()
    return Coloring(tuple(dist), palette), path


# -- two-block paths -----------------------------------------------------------


def _exact_dipaths(d: Digraph, start: int, length: int, avoid: set[int], meter: _Meter,
                   backward: bool):
    """Yield simple dipaths of exactly `length` arcs from `start`, walking
    d.out (or d.inn when backward), internally avoiding `avoid`."""
    adj = d.inn if backward else d.out
    path = [start]
    on_path = {start}

    def rec():
        meter.tick("two-block")
        if len(path) == length + 1:
            yield list(path)
            return
        for w in adj[path[-1]]:
            if w in on_path or w in avoid:
                continue
            path.append(w)
            on_path.add(w)
            yield from rec()
            path.pop()
            on_path.discard(w)

    yield from rec()


def find_two_block_path(
    d: Digraph,
    sign: str,
    k: int,
    ell: int,
    budget: SearchBudget | None = None,
) -> list[int] | None:
    """A copy of the oriented path P^sign(k, ell): first block of exactly k
    arcs in direction `sign`, second of exactly ell arcs the other way, on
    distinct vertices. ell = 0 degenerates to a directed path of length k.

    Returns the path's vertex sequence (blocks implied by sign/k/ell), or
    None after exhausting the space.
    """
    if sign not in ("+", "-"):
        raise PreconditionError("sign must be '+' or '-'")
    if k < 1 or ell < 0:
        raise PreconditionError("need k >= 1, ell >= 0")
    meter = _Meter(budget)
    if ell == 0:
        for s in range(d.n):
            for p in _exact_dipaths(d, s, k, set(), meter, backward=(sign == "-")):
                return p if sign == "+" else p[::-1]
        return None
    # sign '+': two dipaths of lengths k and ell sharing only their terminal.
    # sign '-': two dipaths sharing only their initial vertex.
    backward = sign == "+"
    for hub in range(d.n):
        for p1 in _exact_dipaths(d, hub, k, set(), meter, backward=backward):
            avoid = set(p1) - {hub}
            for p2 in _exact_dipaths(d, hub, ell, avoid, meter, backward=backward):
                if sign == "+":
                    # p1, p2 walk inn from hub: dipaths are reversed lists
                    return p1[::-1] + p2[1:]
                return p1[::-1] + p2[1:]
    return None


def two_block_parts(seq: list[int], sign: str, k: int, ell: int) -> tuple[list[int], list[int]]:
    """Split a find_two_block_path result into its two dipaths (arc order)."""
    first, second = seq[: k + 1], seq[k:]
    if sign == "+":
        return first, second[::-1]
    return first[::-1], second


# -- subdivision search --------------------------------------------------------


@dataclass(frozen=True)
class SearchOutcome:
    status: str  # found | absent | exhausted
    witness: SubdivisionWitness | None = None

    @property
    def found(self) -> bool:
        return self.status == "found"

    @property
    def definitely_absent(self) -> bool:
        return self.status == "absent"


def _find_cycle_at_least(d: Digraph, k: int, meter: _Meter) -> list[int] | None:
    """First directed cycle of length >= k in canonical order, else None."""
    for s in range(d.n):
        allowed = set(range(s, d.n))
        path = [s]
        on_path = {s}
        found: list[int] | None = None

        def dfs() -> bool:
            nonlocal found
            meter.tick("cycle-search")
            v = path[-1]
            for w in d.out[v]:
                if w == s and len(path) >= k:
                    found = list(path)
                    return True
                if w in on_path or w not in allowed:
                    continue
                free = (allowed - on_path) | {s}
                reach = reachable_from(d, w, free)
                if s not in reach:
                    continue
                if len(path) + len(reach - {s}) < k:
                    continue
                path.append(w)
                on_path.add(w)
                if dfs():
                    return True
                path.pop()
                on_path.discard(w)
            return False

        if dfs():
            return found
    return None


def find_subdivision(
    d: Digraph, spec: OrientedCycleSpec, budget: SearchBudget | None = None
) -> SearchOutcome:
    """Exhaustive search for a subdivision of `spec` in d.

    Branch vertices are fixed first (rotation-canonical assignments in
    lexicographic order), then blocks are realized longest-first as
    internally disjoint dipaths with reachability pruning. Returns a
    verified witness, definitive absence, or budget exhaustion.
    """
    meter = _Meter(budget)
    try:
        if spec.is_directed():
            k = spec.blocks[0][0]
            cyc = _find_cycle_at_least(d, k, meter)
            if cyc is None:
                return SearchOutcome("absent")
            return SearchOutcome("found", witness_from_directed_cycle(k, cyc))
        return _find_subdivision_multi(d, spec, meter)
    except BudgetExceededError:
        return SearchOutcome("exhausted")


def _branch_roles(spec: OrientedCycleSpec) -> list[bool]:
    """roles[i] True if branch i is a source (two out-arcs), False if sink."""
    p = spec.num_blocks
    roles = []
    for i in range(p):
        prev_fwd = spec.blocks[(i - 1) % p][1]
        cur_fwd = spec.blocks[i][1]
        # prev backward ends here going out; cur forward starts here going out
        roles.append(cur_fwd)
        if prev_fwd == cur_fwd:
            raise ValueError("spec directions must alternate")
    return roles


def _find_subdivision_multi(
    d: Digraph, spec: OrientedCycleSpec, meter: _Meter
) -> SearchOutcome:
    p = spec.num_blocks
    roles = _branch_roles(spec)
    sources = [v for v in range(d.n) if d.out_degree(v) >= 2]
    sinks = [v for v in range(d.n) if d.in_degree(v) >= 2]
    cands = [sources if r else sinks for r in roles]
    if any(not c for c in cands):
        return SearchOutcome("absent")
    reach = [reachable_from(d, v) for v in range(d.n)]
    rotations = spec.rotations()

    # endpoints of block i as (tail, head) in arc direction given branches
    def block_ends(branch: list[int], i: int) -> tuple[int, int]:
        a, b = branch[i], branch[(i + 1) % p]
        return (a, b) if spec.blocks[i][1] else (b, a)

    block_order = sorted(range(p), key=lambda i: -spec.blocks[i][0])

    def extend_blocks(
        branch: list[int],
        idx: int,
        used: set[int],
        used_arcs: frozenset[tuple[int, int]],
        paths: dict[int, tuple[int, ...]],
    ):
        if idx == len(block_order):
            witness = SubdivisionWitness(
                spec, tuple(branch), tuple(paths[i] for i in range(p))
            )
            return witness
        i = block_order[idx]
        need = spec.blocks[i][0]
        s, t = block_ends(branch, i)
        branch_others = set(branch) - {s, t}
        path = [s]
        on_path = {s}

        def dfs():
            meter.tick("subdiv-path")
            v = path[-1]
            for w in d.out[v]:
                if w == t:
                    full = tuple(path) + (t,)
                    arcs = frozenset(zip(full, full[1:]))
                    if len(path) >= need and not (arcs & used_arcs):
                        paths[i] = full
                        new_used = used | set(path[1:])
                        res = extend_blocks(
                            branch, idx + 1, new_used, used_arcs | arcs, paths
                        )
                        if res is not None:
                            return res
                        del paths[i]
                    continue
                if w in on_path or w in used or w in branch_others or w == s:
                    continue
                allowed = (set(range(d.n)) - used - branch_others - on_path) | {t}
                r = reachable_from(d, w, allowed)
                if t not in r:
                    continue
                path.append(w)
                on_path.add(w)
                res = dfs()
                if res is not None:
                    return res
                path.pop()
                on_path.discard(w)
            return None

        return dfs()

    def assign(pos: int, branch: list[int]):
        if pos == p:
            # rotation canonicalization: keep only lex-min representative
            for r in rotations:
                if r == 0:
                    continue
                rotated = branch[r:] + branch[:r]
                if rotated < branch:
                    return None
            return extend_blocks(branch, 0, set(branch), frozenset(), {})
        for v in cands[pos]:
            meter.tick("subdiv-branch")
            if v in branch:
                continue
            branch.append(v)
            ok = True
            for i in range(p):
                j = (i + 1) % p
                if len(branch) > max(i, j):
                    s, t = block_ends(branch, i)
                    if t not in reach[s]:
                        ok = False
                        break
            if ok:
                res = assign(pos + 1, branch)
                if res is not None:
                    return res
            branch.pop()
        return None

    witness = assign(0, [])
    if witness is None:
        return SearchOutcome("absent")
    return SearchOutcome("found", witness)


# -- block minima --------------------------------------------------------------


def has_directed_cycle(d: Digraph) -> bool:
    if any(len(c) >= 2 for c in strong_components(d)):
        return True
    return False


def min_blocks_over_cycles(
    d: Digraph, budget: SearchBudget | None = None
) -> int | float:
    """Minimum block count over all oriented cycles of d; math.inf if none.

    A directed cycle counts as one block; every other oriented cycle has an
    even block count 2t and is exactly a subdivision of the antidirected
    cycle with 2t unit blocks (C(1,1) for t=1). The scan therefore asks the
    subdivision oracle for each pattern in increasing order, which stays
    exhaustive without enumerating the cycle space.
    """
    if has_directed_cycle(d):
        return 1
    from .cycles import antidirected_spec

    b = 2
    while b <= d.n:
        if b == 2:
            spec = two_block_spec(1, 1)
        else:
            spec = antidirected_spec(b)
        outcome = find_subdivision(d, spec, budget)
        if outcome.found:
            return b
        if outcome.status == "exhausted":
            raise BudgetExceededError(f"block scan stopped at {b} blocks")
        b += 2
    return math.inf


def min_blocks_exceeds(d: Digraph, b: int, budget: SearchBudget | None = None) -> bool:
    """Certify that every oriented cycle has more than b blocks (exhaustive
    absence checks for all patterns with <= b blocks)."""
    if has_directed_cycle(d):
        return b < 1
    from .cycles import antidirected_spec

    t = 2
    while t <= b:
        spec = two_block_spec(1, 1) if t == 2 else antidirected_spec(t)
        outcome = find_subdivision(d, spec, budget)
        if outcome.found:
            return False
        if outcome.status == "exhausted":
            raise BudgetExceededError(f"block certification stopped at {t} blocks")
        t += 2
    return True
