"""Colorings and the product/split combinators used to assemble per-class
colorings into whole-digraph certificates.
"""

from __future__ import annotations

from dataclasses import dataclass

from .digraph import Digraph
from .errors import DomainMismatchError, ImproperInputError


@dataclass(frozen=True)
class Coloring:
    color: tuple[int, ...]
    palette_size: int

    def __post_init__(self):
        if any(c < 0 or c >= self.palette_size for c in self.color):
            raise ValueError("color outside palette")

    @property
    def n(self) -> int:
        return len(self.color)

    def of(self, v: int) -> int:
        return self.color[v]


def coloring_from_list(colors: list[int]) -> Coloring:
    palette = (max(colors) + 1) if colors else 1
    return Coloring(tuple(colors), palette)


def is_proper(d: Digraph, col: Coloring) -> bool:
    if col.n != d.n:
        raise DomainMismatchError(f"coloring on {col.n} vertices, digraph has {d.n}")
    return all(col.color[u] != col.color[v] for u, v in d.arcs)


def constant_coloring(n: int, palette_size: int = 1) -> Coloring:
    return Coloring((0,) * n, palette_size)


def combine_colorings(d1: Digraph, c1: Coloring, d2: Digraph, c2: Coloring) -> Coloring:
    """Product coloring of the arc-union: pair (c1, c2) encoded as
    c1*palette(c2) + c2, proper on A(d1) | A(d2), palette = p1*p2.
    """
    if d1.n != d2.n:
        raise DomainMismatchError("digraphs on different vertex sets")
    if not is_proper(d1, c1):
        raise ImproperInputError("first coloring improper on its arc set")
    if not is_proper(d2, c2):
        raise ImproperInputError("second coloring improper on its arc set")
    p2 = c2.palette_size
    colors = tuple(c1.color[v] * p2 + c2.color[v] for v in range(d1.n))
    return Coloring(colors, c1.palette_size * p2)


def combine_many(d: Digraph, parts: list[tuple[Digraph, Coloring]]) -> Coloring:
    """Fold combine_colorings over arc-disjoint class subdigraphs of d.

    The parts' arc sets must union to A(d); each coloring must be proper on
    its part.
    """
    union = frozenset()
    acc_d = Digraph(d.n, frozenset())
    acc_c = constant_coloring(d.n)
    for part_d, part_c in parts:
        acc_c = combine_colorings(acc_d, acc_c, part_d, part_c)
        union |= part_d.arcs
        acc_d = Digraph(d.n, union)
    if union != d.arcs:
        raise ImproperInputError("class subdigraphs do not cover the arc set")
    return acc_c


def normalize(col: Coloring) -> Coloring:
    """Renumber colors into 0..k-1 preserving classes (first-use order)."""
    remap: dict[int, int] = {}
    out = []
    for c in col.color:
        if c not in remap:
            remap[c] = len(remap)
        out.append(remap[c])
    return Coloring(tuple(out), max(len(remap), 1))


def merge_on_cut(
    d: Digraph,
    base: Coloring,
    base_vertices: list[int],
    other: Coloring,
    other_vertices: list[int],
    palette_size: int,
) -> Coloring:
    """Merge colorings of two overlapping vertex sets by permuting the second
    palette so the colorings agree on the (clique) overlap.

    `base`/`other` are colorings of the induced subdigraphs listed by the
    vertex lists (in induced order). The overlap vertices must receive
    distinct colors within each side.
    """
    overlap = sorted(set(base_vertices) & set(other_vertices))
    bpos = {v: i for i, v in enumerate(base_vertices)}
    opos = {v: i for i, v in enumerate(other_vertices)}
    perm: dict[int, int] = {}
    taken: set[int] = set()
    for v in overlap:
        src = other.color[opos[v]]
        dst = base.color[bpos[v]]
        if src in perm and perm[src] != dst:
            raise ImproperInputError("overlap colors inconsistent")
        if perm.get(src) is None and dst in taken:
            raise ImproperInputError("overlap is not rainbow on the base side")
        perm[src] = dst
        taken.add(dst)
    free = (c for c in range(palette_size) if c not in taken)
    colors = [0] * d.n
    for v in base_vertices:
        colors[v] = base.color[bpos[v]]
    for v in other_vertices:
        if v in bpos:
            continue
        src = other.color[opos[v]]
        if src not in perm:
            perm[src] = next(free)
            taken.add(perm[src])
        colors[v] = perm[src]
    return Coloring(tuple(colors), palette_size)
