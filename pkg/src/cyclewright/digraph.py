"""Digraph representation, connectivity, and the text interchange format.

Vertices are dense integers 0..n-1. Loops are forbidden; digons (both (u,v)
and (v,u)) are allowed unless the digraph is flagged as oriented.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

from .errors import PreconditionError


@dataclass(frozen=True)
class Digraph:
    n: int
    arcs: frozenset[tuple[int, int]]
    oriented: bool = field(default=False, compare=False)

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be nonnegative")
        if not isinstance(self.arcs, frozenset):
            object.__setattr__(self, "arcs", frozenset(self.arcs))
        for u, v in self.arcs:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"arc ({u},{v}) outside 0..{self.n - 1}")
        if self.oriented:
            for u, v in self.arcs:
                if (v, u) in self.arcs:
                    raise ValueError(f"digon {{{u},{v}}} in oriented graph")

    # -- basic views ------------------------------------------------------

    @cached_property
    def out(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.arcs:
            adj[u].append(v)
        for row in adj:
            row.sort()
        return adj

    @cached_property
    def inn(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.arcs:
            adj[v].append(u)
        for row in adj:
            row.sort()
        return adj

    @cached_property
    def underlying_edges(self) -> frozenset[tuple[int, int]]:
        """Edges of the underlying simple graph; digons collapse to one edge."""
        return frozenset((min(u, v), max(u, v)) for u, v in self.arcs)

    @cached_property
    def neighbors(self) -> list[list[int]]:
        """Underlying-graph adjacency (in- and out-neighbors, deduplicated)."""
        adj: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.underlying_edges:
            adj[u].add(v)
            adj[v].add(u)
        return [sorted(s) for s in adj]

    def vertices(self) -> range:
        return range(self.n)

    def out_degree(self, v: int) -> int:
        return len(self.out[v])

    def in_degree(self, v: int) -> int:
        return len(self.inn[v])

    def has_arc(self, u: int, v: int) -> bool:
        return (u, v) in self.arcs

    def is_oriented(self) -> bool:
        return all((v, u) not in self.arcs for u, v in self.arcs)

    def sorted_arcs(self) -> list[tuple[int, int]]:
        return sorted(self.arcs)

    # -- derived digraphs --------------------------------------------------

    def reverse(self) -> "Digraph":
        return Digraph(self.n, frozenset((v, u) for u, v in self.arcs))

    def with_arcs(self, extra: Iterable[tuple[int, int]]) -> "Digraph":
        return Digraph(self.n, self.arcs | frozenset(extra))

    def without_arcs(self, removed: Iterable[tuple[int, int]]) -> "Digraph":
        return Digraph(self.n, self.arcs - frozenset(removed))

    def arc_subdigraph(self, arcs: Iterable[tuple[int, int]]) -> "Digraph":
        """Same vertex set, restricted arc set."""
        arcs = frozenset(arcs)
        if not arcs <= self.arcs:
            raise ValueError("arc set not contained in the digraph")
        return Digraph(self.n, arcs)

    def induced(self, vertices: Iterable[int]) -> tuple["Digraph", list[int]]:
        """Induced subdigraph on `vertices`, relabeled to 0..k-1.

        Returns (subdigraph, lift) where lift[new_id] = original id, so
        witnesses found in the subdigraph can be mapped back.
        """
        lift = sorted(set(vertices))
        pos = {v: i for i, v in enumerate(lift)}
        arcs = frozenset(
            (pos[u], pos[v]) for u, v in self.arcs if u in pos and v in pos
        )
        return Digraph(len(lift), arcs), lift

    def relabel(self, perm: list[int]) -> "Digraph":
        """Apply vertex permutation: new id of v is perm[v]."""
        return Digraph(self.n, frozenset((perm[u], perm[v]) for u, v in self.arcs))

    def canonical_form(self) -> tuple[int, frozenset[tuple[int, int]]]:
        """Lex-smallest arc set over all relabelings. Exponential; desk scale only."""
        best = None
        for perm in itertools.permutations(range(self.n)):
            arcs = tuple(sorted((perm[u], perm[v]) for u, v in self.arcs))
            if best is None or arcs < best:
                best = arcs
        return self.n, frozenset(best or ())


# -- connectivity -----------------------------------------------------------


def strong_components(d: Digraph) -> list[list[int]]:
    """Strongly connected components, Tarjan's algorithm (iterative).

    Components are returned in reverse topological order of the condensation,
    each sorted; the partition covers all vertices.
    """
    index = [-1] * d.n
    low = [0] * d.n
    on_stack = [False] * d.n
    stack: list[int] = []
    comps: list[list[int]] = []
    counter = 0

    for root in range(d.n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        while work:
            v, pi = work[-1]
            if pi == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            advanced = False
            out_v = d.out[v]
            while pi < len(out_v):
                w = out_v[pi]
                pi += 1
                if index[w] == -1:
                    work[-1] = (v, pi)
                    work.append((w, 0))
                    advanced = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                comps.append(sorted(comp))
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
    comps.sort(key=min)
    return comps


def is_strong(d: Digraph) -> bool:
    if d.n == 0:
        return False
    return len(strong_components(d)) == 1


def is_k_strong(d: Digraph, k: int) -> bool:
    """Exhaustive k-strongness test: every deletion of k-1 vertices stays strong.

    Follows the usual convention that a k-strong digraph (k >= 2) has at
    least k+1 vertices, so the complete digraph on n vertices is exactly
    (n-1)-strong.
    """
    if k < 1:
        raise PreconditionError("k must be >= 1")
    if k == 1:
        return is_strong(d)
    if d.n < k + 1:
        return False
    for removed in itertools.combinations(range(d.n), k - 1):
        keep = [v for v in range(d.n) if v not in removed]
        sub, _ = d.induced(keep)
        if not is_strong(sub):
            return False
    return True


def reachable_from(d: Digraph, source: int, allowed: set[int] | None = None) -> set[int]:
    """Vertices reachable from source by dipaths inside `allowed` (default all)."""
    if allowed is not None and source not in allowed:
        return set()
    seen = {source}
    frontier = [source]
    while frontier:
        v = frontier.pop()
        for w in d.out[v]:
            if w not in seen and (allowed is None or w in allowed):
                seen.add(w)
                frontier.append(w)
    return seen


def shortest_dipath(
    d: Digraph,
    source: int,
    targets: Iterable[int],
    forbidden_internal: set[int] | None = None,
) -> list[int] | None:
    """BFS shortest dipath from source to the nearest of `targets`.

    Internal vertices avoid `forbidden_internal`; the source and the reached
    target may belong to it. Returns the vertex list or None.
    """
    targets = set(targets)
    if source in targets:
        return [source]
    forbidden = forbidden_internal or set()
    from collections import deque

    parent = {source: source}
    queue = deque([source])
    while queue:
        v = queue.popleft()
        for w in d.out[v]:
            if w in parent:
                continue
            if w in targets:
                path = [w, v]
                while path[-1] != source:
                    path.append(parent[path[-1]])
                path.reverse()
                return path
            if w in forbidden:
                continue
            parent[w] = v
            queue.append(w)
    return None


def is_acyclic(d: Digraph) -> bool:
    return all(len(c) == 1 for c in strong_components(d)) and not any(
        (v, u) in d.arcs and (u, v) in d.arcs for u, v in d.arcs
    )


def topological_order(d: Digraph) -> list[int]:
    """Topological order of an acyclic digraph (smallest-id first tie-break)."""
    indeg = [d.in_degree(v) for v in range(d.n)]
    import heapq

    ready = [v for v in range(d.n) if indeg[v] == 0]
    heapq.heapify(ready)
    order = []
    while ready:
        v = heapq.heappop(ready)
        order.append(v)
        for w in d.out[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                heapq.heappush(ready, w)
    if len(order) != d.n:
        raise PreconditionError("digraph has a directed cycle")
    return order


# -- text format -------------------------------------------------------------
#
#   # optional comment lines
#   n 5
#   0 1
#   1 2
#
# One arc per non-comment line, 0-based; duplicate arc lines are an error.


def to_text(d: Digraph) -> str:
    lines = [f"n {d.n}"]
    lines.extend(f"{u} {v}" for u, v in d.sorted_arcs())
    return "\n".join(lines) + "\n"


def from_text(text: str) -> Digraph:
    n = None
    arcs: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if n is None:
            parts = line.split()
            if len(parts) != 2 or parts[0] != "n":
                raise ValueError(f"line {lineno}: expected 'n <count>', got {raw!r}")
            n = int(parts[1])
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected '<u> <v>', got {raw!r}")
        arc = (int(parts[0]), int(parts[1]))
        if arc in arcs:
            raise ValueError(f"line {lineno}: duplicate arc {arc}")
        arcs.add(arc)
    if n is None:
        raise ValueError("missing 'n <count>' header")
    return Digraph(n, frozenset(arcs))


def read_digraph(path) -> Digraph:
    with open(path, "r", encoding="utf-8") as fh:
        return from_text(fh.read())


def write_digraph(d: Digraph, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(to_text(d))
