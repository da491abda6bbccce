import pytest

from cyclewright import (
    DegenerateError,
    Digraph,
    PreconditionError,
    directed_cycle,
    find_antidirected,
    random_tournament,
    transitive_tournament,
    verify_subdivision,
)
from cyclewright.antidirected import (
    BipartiteCut,
    dense_bipartite_subgraph,
    long_cycle_bipartite,
    peel_to_min_degree,
    quarter_directed_cut,
)


def oriented_k(n, seed=0):
    return random_tournament(n, seed)


class TestPeel:
    def test_complete_survives(self):
        d = oriented_k(5)
        core, lift = peel_to_min_degree(d, 4)
        assert core.n == 5

    def test_tree_empties(self):
        d = Digraph(4, frozenset({(0, 1), (1, 2), (2, 3)}))
        core, lift = peel_to_min_degree(d, 2)
        assert core.n == 0

    def test_k4_plus_pendant(self):
        arcs = set(oriented_k(4, 3).arcs) | {(0, 4)}
        core, lift = peel_to_min_degree(Digraph(5, frozenset(arcs)), 3)
        assert core.n == 4 and 4 not in lift


class TestQuarterCut:
    def test_single_arc(self):
        cut = quarter_directed_cut(Digraph(2, frozenset({(0, 1)})))
        assert len(cut.forward_arcs) == 1

    def test_dicycle4(self):
        cut = quarter_directed_cut(directed_cycle(4))
        assert len(cut.forward_arcs) >= 1

    def test_many_random(self):
        import random as _r

        rng = _r.Random(7)
        for trial in range(1000):
            n = rng.randint(2, 8)
            slots = [(u, v) for u in range(n) for v in range(n) if u != v]
            m = rng.randint(1, len(slots))
            d = Digraph(n, frozenset(rng.sample(slots, m)))
            cut = quarter_directed_cut(d)
            assert 4 * len(cut.forward_arcs) >= m


class TestDenseBipartite:
    def test_complete_bipartite(self):
        arcs = {(u, v + 3) for u in range(3) for v in range(3)}
        cut = BipartiteCut(
            frozenset({0, 1, 2}), frozenset({3, 4, 5}), frozenset(arcs)
        )
        out = dense_bipartite_subgraph(cut, 2)
        assert len(out.forward_arcs) == 9

    def test_single_arc_degenerate(self):
        cut = BipartiteCut(frozenset({0}), frozenset({1}), frozenset({(0, 1)}))
        with pytest.raises(DegenerateError):
            dense_bipartite_subgraph(cut, 1)

    def test_core_extraction(self):
        arcs = {(u, v + 4) for u in range(4) for v in range(4)}
        arcs.add((8, 4))
        cut = BipartiteCut(
            frozenset({0, 1, 2, 3, 8}), frozenset({4, 5, 6, 7}), frozenset(arcs)
        )
        out = dense_bipartite_subgraph(cut, 3)
        assert 8 not in (out.side_a | out.side_b)


class TestLongCycle:
    def test_k33(self):
        arcs = {(u, v + 3) for u in range(3) for v in range(3)}
        cut = BipartiteCut(frozenset({0, 1, 2}), frozenset({3, 4, 5}), frozenset(arcs))
        cycle = long_cycle_bipartite(cut, 3)
        assert len(cycle) >= 6

    def test_c4(self):
        arcs = {(0, 2), (0, 3), (1, 2), (1, 3)}
        cut = BipartiteCut(frozenset({0, 1}), frozenset({2, 3}), frozenset(arcs))
        assert len(long_cycle_bipartite(cut, 2)) >= 4

    def test_k45(self):
        arcs = {(u, v + 4) for u in range(4) for v in range(5)}
        cut = BipartiteCut(
            frozenset(range(4)), frozenset(range(4, 9)), frozenset(arcs)
        )
        assert len(long_cycle_bipartite(cut, 4)) >= 8


class TestFindAntidirected:
    def test_tournaments_9(self):
        for seed in range(10):
            d = random_tournament(9, seed)
            w = find_antidirected(d, 2)
            assert verify_subdivision(d, w)
            assert w.spec.order >= 4
            assert w.spec.is_antidirected()

    def test_tournament_17(self):
        d = random_tournament(17, 0)
        w = find_antidirected(d, 3)
        assert verify_subdivision(d, w)
        assert w.spec.order >= 6

    def test_dicycle_rejected(self):
        with pytest.raises(PreconditionError):
            find_antidirected(directed_cycle(5), 2)

    def test_digons_rejected(self):
        d = Digraph(2, frozenset({(0, 1), (1, 0)}))
        with pytest.raises(PreconditionError):
            find_antidirected(d, 2)

    def test_transitive_tournament(self):
        # chi = 9 meets the 8k-7 threshold for k = 2 even though acyclic
        d = transitive_tournament(9)
        w = find_antidirected(d, 2)
        assert verify_subdivision(d, w)
