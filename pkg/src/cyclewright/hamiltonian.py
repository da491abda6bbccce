"""Certifiers for digraphs carrying a Hamiltonian directed cycle: the span
coloring, the neighbor-window bound, the 6k-6 two-equal-blocks theorem, and
the C(k,1) bounds for Hamiltonian and general strong digraphs.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property

from .certificates import (
    Certificate,
    coloring_certificate,
    diagnostic_certificate,
    verify_coloring,
    witness_certificate,
)
from .coloring import Coloring, merge_on_cut
from .cycles import SubdivisionWitness, two_block_spec
from .digraph import Digraph, is_strong, to_text
from .errors import (
    ImproperInputError,
    LemmaViolationError,
    PreconditionError,
)
from .handles import certify_C22, underlying_blocks, _cycle_path
from .leveling import bfs_leveling
from .leveling_colorers import _join, _try_pair_witness, surgery_counters
from .oracles import (
    SearchBudget,
    chromatic_number_exact,
    exact_coloring,
    find_subdivision,
    longest_directed_cycle,
)


@dataclass(frozen=True)
class ChordedCycle:
    digraph: Digraph
    cycle: tuple[int, ...]

    def __post_init__(self):
        d, cyc = self.digraph, self.cycle
        if sorted(cyc) != list(range(d.n)):
            raise PreconditionError("cycle must visit every vertex once")
        for i in range(len(cyc)):
            if not d.has_arc(cyc[i], cyc[(i + 1) % len(cyc)]):
                raise PreconditionError("missing Hamiltonian cycle arc")

    @property
    def n(self) -> int:
        return self.digraph.n

    @cached_property
    def pos(self) -> dict[int, int]:
        return {v: i for i, v in enumerate(self.cycle)}

    @cached_property
    def cycle_arcs(self) -> frozenset[tuple[int, int]]:
        n = self.n
        return frozenset(
            (self.cycle[i], self.cycle[(i + 1) % n]) for i in range(n)
        )

    @cached_property
    def chords(self) -> list[tuple[int, int]]:
        return sorted(self.digraph.arcs - self.cycle_arcs)

    def forward_dist(self, u: int, v: int) -> int:
        return (self.pos[v] - self.pos[u]) % self.n

    def span(self, chord: tuple[int, int]) -> int:
        f = self.forward_dist(*chord)
        return min(f, self.n - f)

    def max_span(self) -> int:
        return max((self.span(c) for c in self.chords), default=0)


def span_coloring(cc: ChordedCycle, budget: SearchBudget | None = None) -> Coloring:
    """Proper coloring with palette < 2 * max chord span.

    Tries the blockwise position formula first; its color classes collide
    with chords of exactly maximal span, so the result is re-verified and an
    exact coloring is used as fallback. If even the exact chromatic number
    reaches 2*span, the lemma itself fails on this instance and a
    LemmaViolationError carries the reproduction.
    """
    if not cc.chords:
        raise PreconditionError("span coloring needs at least one chord")
    d = cc.digraph
    n = cc.n
    ell = cc.max_span()
    if n >= 2 * ell and ell >= 1:
        k, r = divmod(n, ell)
        colors = [0] * n
        for i in range(1, n + 1):  # 1-based positions along the cycle
            v = cc.cycle[i - 1]
            if i <= k * ell:
                colors[v] = i % ell
            elif i == k * ell + 1:
                colors[v] = ell
            else:
                colors[v] = ell + (i - k * ell) - 1
        cand = Coloring(tuple(colors), max(colors) + 1)
        if cand.palette_size < 2 * ell and verify_coloring(d, cand):
            return cand
    col = exact_coloring(d, budget, n_limit=max(20, d.n))
    if col.palette_size < 2 * ell:
        return col
    raise LemmaViolationError(
        "lem:longChord",
        f"chromatic number {col.palette_size} not below 2*span = {2 * ell}",
        to_text(d),
    )


def combine_split(
    d: Digraph,
    a_side: list[int],
    b_side: list[int],
    col_a: Coloring,
    col_b: Coloring,
) -> Coloring:
    """Merge colorings of a vertex split: B keeps its palette with N(A)'s
    colors pulled to the bottom, A is shifted above them. Palette is at most
    max(|N(A)| + palette(A), palette(B))."""
    a_side, b_side = sorted(a_side), sorted(b_side)
    if sorted(a_side + b_side) != list(range(d.n)):
        raise ImproperInputError("sides must partition the vertex set")
    sub_a, _ = d.induced(a_side)
    sub_b, _ = d.induced(b_side)
    if not verify_coloring(sub_a, col_a):
        raise ImproperInputError("A-side coloring improper")
    if not verify_coloring(sub_b, col_b):
        raise ImproperInputError("B-side coloring improper")
    a_set = set(a_side)
    boundary = sorted(
        {
            (u if u not in a_set else v)
            for u, v in d.arcs
            if (u in a_set) != (v in a_set)
        }
    )
    pos_b = {v: i for i, v in enumerate(b_side)}
    low = sorted({col_b.color[pos_b[v]] for v in boundary})
    remap = {c: i for i, c in enumerate(low)}
    nxt = len(low)
    for c in range(col_b.palette_size):
        if c not in remap:
            remap[c] = nxt
            nxt += 1
    shift = len(low)
    colors = [0] * d.n
    for i, v in enumerate(b_side):
        colors[v] = remap[col_b.color[i]]
    for i, v in enumerate(a_side):
        colors[v] = shift + col_a.color[i]
    palette = max(col_b.palette_size, shift + col_a.palette_size)
    return Coloring(tuple(colors), palette)


@dataclass(frozen=True)
class NeighborCheck:
    ok: bool
    n_a: tuple[int, ...] = ()
    n_b: tuple[int, ...] = ()
    witness: SubdivisionWitness | None = None


def neighbour_bound_check(
    cc: ChordedCycle, chord: tuple[int, int], k: int
) -> NeighborCheck:
    """Window check for a chord of span >= 2k-2: both cycle segments have at
    most 2k+1 outside neighbors, confined to the proof's windows. A violating
    arc is converted into a C(k,k) witness."""
    if cc.span(chord) < 2 * k - 2:
        raise PreconditionError("chord span below 2k-2")
    d = cc.digraph
    n = cc.n
    x, y = chord
    f = cc.forward_dist(x, y)
    j = f + 1  # chord = (w_1, w_j) in 1-based cycle positions
    w = [None] + [cc.cycle[(cc.pos[x] + t) % n] for t in range(n)]  # w[1..n]
    a_side = set(w[2:j])
    b_side = set(w[j + 1 : n + 1])
    n_a = sorted(
        {
            (u if u not in a_side else v)
            for u, v in d.arcs
            if (u in a_side) != (v in a_side)
        },
        key=lambda z: cc.pos[z],
    )
    n_b = sorted(
        {
            (u if u not in b_side else v)
            for u, v in d.arcs
            if (u in b_side) != (v in b_side)
        },
        key=lambda z: cc.pos[z],
    )
    win_a = set(w[1 : k + 1]) | set(w[max(1, j - k + 1) : j + 1])
    win_b = set(w[j : j + k - 1]) | set(w[n - k + 2 : n + 1]) | {w[1]}
    if set(n_a) <= win_a and set(n_b) <= win_b and len(n_a) <= 2 * k + 1 and len(n_b) <= 2 * k + 1:
        return NeighborCheck(True, tuple(n_a), tuple(n_b))
    # hunt a violating crossing arc and rebuild the proof's C(k,k)
    cyc = list(cc.cycle)
    for u, v in sorted(d.arcs - cc.cycle_arcs):
        if u in a_side and v in b_side:
            surgery_counters["lem:neighbour.AB"] += 1
            pairs = [
                # both ends early: two dipaths from u to w_j
                (
                    _cycle_path(cyc, u, w[j]),
                    _join([u, v], _cycle_path(cyc, v, w[1]), [w[1], w[j]]),
                ),
                # both ends late: two dipaths from w_1 to v
                (
                    _join(_cycle_path(cyc, w[1], u), [u, v]),
                    _join([w[1], w[j]], _cycle_path(cyc, w[j], v)),
                ),
            ]
        elif u in b_side and v in a_side:
            surgery_counters["lem:neighbour.BA"] += 1
            pairs = [
                # two dipaths from u to w_j
                (
                    _join([u, v], _cycle_path(cyc, v, w[j])),
                    _join(_cycle_path(cyc, u, w[1]), [w[1], w[j]]),
                ),
                # two dipaths from w_1 to v
                (
                    _join([w[1], w[j]], _cycle_path(cyc, w[j], u), [u, v]),
                    _cycle_path(cyc, w[1], v),
                ),
            ]
        else:
            continue
        for p1, p2 in pairs:
            cand = _try_pair_witness(d, k, k, p1, p2)
            if cand is not None:
                return NeighborCheck(False, witness=cand)
    return NeighborCheck(False, tuple(n_a), tuple(n_b), None)


def certify_hamiltonian_ckk(
    cc: ChordedCycle, k: int, budget: SearchBudget | None = None
) -> Certificate:
    """phi(k,k) <= 6k-6: coloring within 6k-6 or a verified C(k,k) witness,
    following the minimum-span-long-chord split recursion."""
    params = {"k": k}
    if k < 2:
        raise PreconditionError("requires k >= 2")
    if k == 2:
        inner = certify_C22(cc.digraph, budget)
        return Certificate(
            "phi:kk", params, inner.kind, 6 * k - 6 if inner.kind == "coloring" else None,
            inner.coloring, inner.witness, inner.diagnostic,
        )
    memo: dict = {}
    kind, payload = _ckk_rec(cc, k, budget, memo)
    if kind == "coloring":
        return coloring_certificate("phi:kk", params, payload, 6 * k - 6)
    if kind == "witness":
        return witness_certificate("phi:kk", params, payload)
    return diagnostic_certificate("phi:kk", params, payload[0], payload[1], payload[2])


def _ckk_key(cc: ChordedCycle):
    rot = cc.cycle.index(min(cc.cycle))
    return (cc.digraph.arcs, cc.cycle[rot:] + cc.cycle[:rot])


def _ckk_rec(cc: ChordedCycle, k: int, budget, memo):
    key = _ckk_key(cc)
    if key in memo:
        return memo[key]
    result = _ckk_rec_inner(cc, k, budget, memo)
    memo[key] = result
    return result


def _ckk_rec_inner(cc: ChordedCycle, k: int, budget, memo):
    d = cc.digraph
    bound = 6 * k - 6
    long_chords = [c for c in cc.chords if cc.span(c) >= 2 * k - 2]
    if not long_chords:
        col = None
        if cc.chords:
            try:
                col = span_coloring(cc, budget)
            except LemmaViolationError:
                surgery_counters["phi:kk.spanviolation"] += 1
                col = None
        if col is None:
            col = exact_coloring(d, budget, n_limit=max(20, d.n))
        if col.palette_size <= bound:
            return ("coloring", col)
        out = find_subdivision(d, two_block_spec(k, k), budget)
        if out.found:
            return ("witness", out.witness)
        return ("diagnostic", ("phi:kk", "no long chord, coloring too big, no witness", to_text(d)))

    chord = min(long_chords, key=lambda c: (cc.span(c), c))
    nb = neighbour_bound_check(cc, chord, k)
    if nb.witness is not None:
        return ("witness", nb.witness)

    x, y = chord
    f = cc.forward_dist(x, y)
    # the side from y forward around to x is Hamiltonian with the chord
    ham_vertices = [cc.cycle[(cc.pos[y] + t) % cc.n] for t in range(cc.n - f + 1)]
    par_vertices = [cc.cycle[(cc.pos[x] + t) % cc.n] for t in range(f + 1)]

    ham_sub, ham_lift = d.induced(ham_vertices)
    ham_back = {v: i for i, v in enumerate(ham_lift)}
    ham_cycle = tuple(ham_back[v] for v in ham_vertices)
    ham_cc = ChordedCycle(ham_sub, ham_cycle)
    kind_h, payload_h = _ckk_rec(ham_cc, k, budget, memo)
    if kind_h == "witness":
        return ("witness", payload_h.mapped(ham_lift))

    # bullet 1: exact-color the parallel side's interior, merge over windows
    interior = par_vertices[1:-1]
    if kind_h == "coloring" and interior:
        col_a = exact_coloring(d.induced(interior)[0], budget, n_limit=max(20, d.n))
        merged = combine_split(d, interior, ham_vertices, col_a, payload_h)
        if merged.palette_size <= bound and verify_coloring(d, merged):
            surgery_counters["phi:kk.merge1"] += 1
            return ("coloring", merged)

    # bullet 2: recurse on the parallel side with the chord reversed
    par_sub, par_lift = d.induced(par_vertices)
    par_back = {v: i for i, v in enumerate(par_lift)}
    rev_arc = (par_back[x], par_back[y])
    par_fixed = par_sub.without_arcs([rev_arc]).with_arcs([(rev_arc[1], rev_arc[0])])
    par_cycle = tuple(par_back[v] for v in par_vertices)
    par_cc = ChordedCycle(par_fixed, par_cycle)
    kind_p, payload_p = _ckk_rec(par_cc, k, budget, memo)
    if kind_p == "witness":
        lifted = payload_p.mapped(par_lift)
        fixed = _unreverse_witness(lifted, (y, x), _cycle_path(list(cc.cycle), y, x), d)
        if fixed is not None:
            return ("witness", fixed)
    if kind_p == "coloring":
        # shifted side: the Hamiltonian side minus the chord tail; kept side:
        # the parallel side minus the chord head, with its recursive coloring
        b_set = [v for v in ham_vertices if v != x]
        rest = sorted(v for v in par_vertices if v != y)
        col_b = exact_coloring(d.induced(b_set)[0], budget, n_limit=max(20, d.n))
        rest_col = Coloring(
            tuple(payload_p.color[par_back[v]] for v in rest),
            payload_p.palette_size,
        )
        merged = combine_split(d, b_set, rest, col_b, rest_col)
        if merged.palette_size <= bound and verify_coloring(d, merged):
            surgery_counters["phi:kk.merge2"] += 1
            return ("coloring", merged)

    out = find_subdivision(d, two_block_spec(k, k), budget)
    if out.found:
        return ("witness", out.witness)
    col = exact_coloring(d, budget, n_limit=max(20, d.n))
    if col.palette_size <= bound:
        return ("coloring", col)
    return ("diagnostic", ("phi:kk", "split merges failed and no witness", to_text(d)))


def _unreverse_witness(
    w: SubdivisionWitness, used_rev: tuple[int, int], repl: list[int], d: Digraph
) -> SubdivisionWitness | None:
    from .certificates import verify_subdivision

    if verify_subdivision(d, w):
        return w
    new_paths = []
    for path in w.paths:
        out = []
        i = 0
        while i < len(path):
            if i + 1 < len(path) and (path[i], path[i + 1]) == used_rev:
                out.extend(repl[:-1])
                i += 1
                continue
            out.append(path[i])
            i += 1
        new_paths.append(tuple(out))
    cand = SubdivisionWitness(w.spec, w.branch, tuple(new_paths))
    return cand if verify_subdivision(d, cand) else None


def certify_hamiltonian_ck1(
    cc: ChordedCycle, k: int, budget: SearchBudget | None = None
) -> Certificate:
    """phi(k,1) <= max(k+1, ceil((3k-3)/2)): coloring within the bound or a
    verified C(k,1) witness (any chord jumping forward k or more closes one
    immediately)."""
    params = {"k": k}
    if k < 2:
        raise PreconditionError("requires k >= 2")
    if k == 2:
        inner = certify_C22(cc.digraph, budget)
        if inner.kind == "coloring":
            return coloring_certificate("phi:k1", params, inner.coloring, 3)
        if inner.kind == "witness":
            w21 = _try_pair_witness(
                cc.digraph, 2, 1, list(inner.witness.paths[0]), list(inner.witness.paths[1])
            )
            if w21 is not None:
                return witness_certificate("phi:k1", params, w21)
        return Certificate("phi:k1", params, inner.kind, None, None, inner.witness, inner.diagnostic)
    bound = max(k + 1, math.ceil((3 * k - 3) / 2))
    kind, payload = _ck1_rec(cc, k, bound, budget)
    if kind == "coloring":
        return coloring_certificate("phi:k1", params, payload, bound)
    if kind == "witness":
        return witness_certificate("phi:k1", params, payload)
    return diagnostic_certificate("phi:k1", params, payload[0], payload[1], payload[2])


def _ck1_rec(cc: ChordedCycle, k: int, bound: int, budget):
    d = cc.digraph
    n = cc.n
    for chord in cc.chords:
        if cc.forward_dist(*chord) >= k:
            surgery_counters["phi:k1.chord"] += 1
            u, v = chord
            w = _try_pair_witness(d, k, 1, _cycle_path(list(cc.cycle), u, v), [u, v])
            if w is not None:
                return ("witness", w)
    if n <= bound:
        return ("coloring", exact_coloring(d, budget, n_limit=max(20, d.n)))
    # remove a low-degree vertex, shortcut the cycle, extend afterwards
    degree = [d.out_degree(v) + d.in_degree(v) for v in range(n)]
    candidates = [v for v in range(n) if d.out_degree(v) == 1 or d.in_degree(v) == 1]
    if not candidates:
        candidates = [v for v in range(n) if degree[v] <= bound - 1]
    if not candidates:
        return (
            "diagnostic",
            ("claim:visions", "no low-degree vertex yet no witness", to_text(d)),
        )
    v = min(candidates, key=lambda z: (degree[z], z))
    i = cc.pos[v]
    prev_v, next_v = cc.cycle[(i - 1) % n], cc.cycle[(i + 1) % n]
    keep = [z for z in range(n) if z != v]
    smaller, lift = d.induced(keep)
    back = {z: idx for idx, z in enumerate(lift)}
    added = None
    if not smaller.has_arc(back[prev_v], back[next_v]):
        added = (back[prev_v], back[next_v])
        smaller = smaller.with_arcs([added])
    sm_cycle = tuple(back[cc.cycle[(i + 1 + t) % n]] for t in range(n - 1))
    kind, payload = _ck1_rec(ChordedCycle(smaller, sm_cycle), k, bound, budget)
    if kind == "witness":
        lifted = payload.mapped(lift)
        fixed = _unreverse_witness(lifted, (prev_v, next_v), [prev_v, v, next_v], d)
        if fixed is not None:
            return ("witness", fixed)
        out = find_subdivision(d, two_block_spec(k, 1), budget)
        if out.found:
            return ("witness", out.witness)
        return ("diagnostic", ("phi:k1", "witness lift failed", to_text(d)))
    if kind == "coloring":
        small_col = payload
        used = {small_col.color[back[w]] for w in d.neighbors[v]}
        free = next((c for c in range(bound) if c not in used), None)
        if free is None:
            return ("diagnostic", ("phi:k1", "greedy extension failed", to_text(d)))
        colors = [0] * n
        for z in keep:
            colors[z] = small_col.color[back[z]]
        colors[v] = free
        return ("coloring", Coloring(tuple(colors), max(bound, small_col.palette_size)))
    return (kind, payload)


def certify_strong_ck1(
    d: Digraph, k: int, budget: SearchBudget | None = None
) -> Certificate:
    """chi <= max(k+1, 2k-4) for strong digraphs without a C(k,1)
    subdivision, else a verified witness; reduction through 2-connected
    blocks, longest cycles, and the out-tree split on a two-vertex cutset."""
    params = {"k": k}
    if k < 2:
        raise PreconditionError("requires k >= 2")
    if not is_strong(d):
        raise PreconditionError("requires a strong digraph")
    bound = max(k + 1, 2 * k - 4)
    kind, payload = _strong_ck1_rec(d, k, bound, budget, 0)
    if kind == "coloring":
        return coloring_certificate("thm:k1", params, payload, bound)
    if kind == "witness":
        return witness_certificate("thm:k1", params, payload)
    return diagnostic_certificate("thm:k1", params, payload[0], payload[1], payload[2])


def _strong_ck1_rec(d: Digraph, k: int, bound: int, budget, depth: int):
    if depth > d.n + 2:
        return ("diagnostic", ("thm:k1", "recursion depth exceeded", to_text(d)))
    blocks = underlying_blocks(d)
    if len(blocks) > 1:
        parts = []
        for block in blocks:
            sub, lift = d.induced(block)
            kind, payload = _strong_ck1_rec(sub, k, bound, budget, depth + 1)
            if kind == "witness":
                return (kind, payload.mapped(lift))
            if kind != "coloring":
                return (kind, payload)
            parts.append((block, payload))
        merged = _merge_block_colorings(d, parts, bound)
        if merged is not None and verify_coloring(d, merged):
            return ("coloring", merged)
        return ("diagnostic", ("thm:k1", "block merge failed", to_text(d)))

    cyc = longest_directed_cycle(d, budget)
    if cyc is not None and len(cyc) >= 2 * k - 3 and len(cyc) >= 2:
        if len(cyc) == d.n:
            inner = certify_hamiltonian_ck1(ChordedCycle(d, tuple(cyc)), k, budget)
            if inner.kind == "witness":
                return ("witness", inner.witness)
            if inner.kind == "coloring" and inner.coloring.palette_size <= bound:
                return ("coloring", inner.coloring)
        else:
            res = _nonham_witness(d, k, cyc, budget)
            if res is not None:
                return ("witness", res)
            split = _w_split(d, k, bound, budget, cyc, set(cyc), depth)
            if split is not None:
                return split

    chi = chromatic_number_exact(d, budget, n_limit=max(20, d.n))
    if chi <= bound:
        return ("coloring", exact_coloring(d, budget, n_limit=max(20, d.n)))
    out = find_subdivision(d, two_block_spec(k, 1), budget)
    if out.found:
        return ("witness", out.witness)
    return ("diagnostic", ("thm:k1", "no machinery applied and no witness", to_text(d)))


def _merge_block_colorings(d: Digraph, parts, palette: int):
    """Glue per-block colorings along the block-cut tree, permuting palettes
    so shared cut vertices keep their colors."""
    if not parts:
        return None
    remaining = list(parts)
    base_vertices, base_col = remaining.pop(0)
    acc_vertices = list(base_vertices)
    acc = merge_on_cut(d, base_col, acc_vertices, base_col, list(base_vertices), palette)
    while remaining:
        idx = next(
            (
                i
                for i, (verts, _) in enumerate(remaining)
                if set(verts) & set(acc_vertices)
            ),
            None,
        )
        if idx is None:
            idx = 0
        verts, col = remaining.pop(idx)
        acc_on_acc = Coloring(
            tuple(acc.color[v] for v in sorted(acc_vertices)), palette
        )
        acc = merge_on_cut(d, acc_on_acc, sorted(acc_vertices), col, list(verts), palette)
        acc_vertices = sorted(set(acc_vertices) | set(verts))
    return acc


def _nonham_witness(d: Digraph, k: int, cyc: list[int], budget):
    """lem:k1 configuration: an outside vertex fed by two cycle vertices via
    cycle-internally-avoiding dipaths closes a C(k,1)."""
    cset = set(cyc)
    parents: dict[int, dict[int, int]] = {}
    for c in cyc:
        par = {c: c}
        stack = [c]
        while stack:
            z = stack.pop()
            for w in d.out[z]:
                if (w in cset and w != c) or w in par:
                    continue
                if w == c:
                    continue
                par[w] = z
                stack.append(w)
        parents[c] = par
    for y in sorted(v for v in range(d.n) if v not in cset):
        roots = [c for c in cyc if y in parents[c]]
        if len(roots) < 2:
            continue
        surgery_counters["thm:k1.lem"] += 1
        for c1, c2 in itertools.permutations(roots, 2):
            if (cyc.index(c2) - cyc.index(c1)) % len(cyc) < k - 1:
                continue
            p1 = _walk_up(parents[c1], y)
            p2 = _walk_up(parents[c2], y)
            p1set = set(p1)
            z = next(v for v in p2 if v in p1set)
            path_k = _join(_cycle_path(cyc, c1, c2), p2[: p2.index(z) + 1])
            path_1 = p1[: p1.index(z) + 1]
            w = _try_pair_witness(d, k, 1, path_k, path_1)
            if w is not None:
                return w
        surgery_counters["thm:k1.lem.fallthrough"] += 1
    return None


def _walk_up(par: dict[int, int], y: int) -> list[int]:
    path = [y]
    while par[path[-1]] != path[-1]:
        path.append(par[path[-1]])
    path.reverse()
    return path


def _w_split(d: Digraph, k: int, bound: int, budget, cyc, cset, depth):
    v = next(
        (c for c in cyc if any(w not in cset for w in d.out[c])),
        None,
    )
    if v is None:
        return None
    w0 = next(w for w in d.out[v] if w not in cset)
    # undirected component of w0 outside the cycle
    comp = {w0}
    stack = [w0]
    while stack:
        z = stack.pop()
        for nb in d.neighbors[z]:
            if nb in cset or nb in comp:
                continue
            comp.add(nb)
            stack.append(nb)
    receivers = sorted(
        {b for a in comp for b in d.out[a] if b in cset}
    )
    senders = sorted({a for a in cset for b in d.out[a] if b in comp})
    if len(receivers) != 1 or senders != [v]:
        return None  # structure outside the proof's shape; caller falls back
    y = receivers[0]
    surgery_counters["thm:k1.split"] += 1

    keep1 = [z for z in range(d.n) if z not in comp]
    d1, lift1 = d.induced(keep1)
    back1 = {z: i for i, z in enumerate(lift1)}
    extra1 = None
    if not d1.has_arc(back1[v], back1[y]):
        extra1 = (back1[v], back1[y])
        d1 = d1.with_arcs([extra1])
    keep2 = sorted(comp | {v, y})
    d2, lift2 = d.induced(keep2)
    back2 = {z: i for i, z in enumerate(lift2)}
    extra2 = None
    if not d2.has_arc(back2[y], back2[v]):
        extra2 = (back2[y], back2[v])
        d2 = d2.with_arcs([extra2])

    kind1, pay1 = _strong_ck1_rec(d1, k, bound, budget, depth + 1)
    if kind1 == "witness":
        lifted = pay1.mapped(lift1)
        wsub, _ = d.induced(sorted(comp))
        inner_lv = bfs_leveling(wsub, sorted(comp).index(w0))
        a_entry = min(a for a in comp if d.has_arc(a, y))
        comp_sorted = sorted(comp)
        tree = [comp_sorted[z] for z in inner_lv.tree_path(
            comp_sorted.index(w0), comp_sorted.index(a_entry)
        )]
        repl = [v] + tree + [y]
        fixed = _unreverse_witness(lifted, (v, y), repl, d)
        if fixed is not None:
            return ("witness", fixed)
        return None
    kind2, pay2 = _strong_ck1_rec(d2, k, bound, budget, depth + 1)
    if kind2 == "witness":
        lifted = pay2.mapped(lift2)
        repl = _cycle_path(cyc, y, v)
        fixed = _unreverse_witness(lifted, (y, v), repl, d)
        if fixed is not None:
            return ("witness", fixed)
        return None
    if kind1 == "coloring" and kind2 == "coloring":
        merged = merge_on_cut(d, pay1, lift1, pay2, lift2, bound)
        if verify_coloring(d, merged):
            return ("coloring", merged)
    return None
