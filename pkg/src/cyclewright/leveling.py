"""BFS levelings: level = directed distance from an out-generator, plus the
tree-order machinery (ancestors, tree paths, least common ancestors) that the
witness surgeries need.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .digraph import Digraph
from .errors import NoOutGeneratorError


@dataclass(frozen=True)
class Leveling:
    root: int
    parent: tuple[int, ...]  # parent[root] == root
    level: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.level)

    def depth(self) -> int:
        return max(self.level)

    def level_sets(self) -> list[list[int]]:
        sets: list[list[int]] = [[] for _ in range(self.depth() + 1)]
        for v, lv in enumerate(self.level):
            sets[lv].append(v)
        return sets

    def ancestors(self, v: int) -> list[int]:
        """Vertices on the tree path root..v, root first, v last."""
        path = [v]
        while v != self.root:
            v = self.parent[v]
            path.append(v)
        path.reverse()
        return path

    def is_ancestor(self, a: int, v: int) -> bool:
        """True iff a lies on the tree path from the root to v (a >=_T v)."""
        if self.level[a] > self.level[v]:
            return False
        while self.level[v] > self.level[a]:
            v = self.parent[v]
        return v == a

    def tree_path(self, a: int, v: int) -> list[int]:
        """The unique tree dipath from ancestor a down to v."""
        if not self.is_ancestor(a, v):
            raise ValueError(f"{a} is not a tree ancestor of {v}")
        path = [v]
        while v != a:
            v = self.parent[v]
            path.append(v)
        path.reverse()
        return path

    def lca(self, a: int, b: int) -> int:
        while self.level[a] > self.level[b]:
            a = self.parent[a]
        while self.level[b] > self.level[a]:
            b = self.parent[b]
        while a != b:
            a = self.parent[a]
            b = self.parent[b]
        return a


def bfs_leveling(d: Digraph, u: int) -> Leveling:
    """BFS tree from u; levels equal directed distances from u.

    Raises NoOutGeneratorError if some vertex is unreachable, i.e. u is not
    an out-generator. Parent choice is the smallest-id in-neighbor on the
    previous level, so the tree is deterministic.
    """
    if not (0 <= u < d.n):
        raise ValueError(f"vertex {u} out of range")
    level = [-1] * d.n
    parent = [-1] * d.n
    level[u] = 0
    parent[u] = u
    queue = deque([u])
    while queue:
        v = queue.popleft()
        for w in d.out[v]:
            if level[w] == -1:
                level[w] = level[v] + 1
                parent[w] = v
                queue.append(w)
    if any(lv == -1 for lv in level):
        missing = [v for v in range(d.n) if level[v] == -1]
        raise NoOutGeneratorError(
            f"vertex {u} does not reach {missing}; not an out-generator"
        )
    return Leveling(root=u, parent=tuple(parent), level=tuple(level))


def find_out_generator(d: Digraph) -> int | None:
    """Lowest-id out-generator, or None.

    One forward reachability plus candidate checks; in a strong digraph this
    returns vertex 0.
    """
    if d.n == 0:
        return None
    for u in range(d.n):
        from .digraph import reachable_from

        if len(reachable_from(d, u)) == d.n:
            return u
    return None
