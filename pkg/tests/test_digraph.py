import pytest

from cyclewright import (
    Digraph,
    complete_digraph,
    directed_cycle,
    from_text,
    is_k_strong,
    is_strong,
    strong_components,
    to_text,
    transitive_tournament,
)
from cyclewright.digraph import is_acyclic, shortest_dipath, topological_order


def test_no_loops():
    with pytest.raises(ValueError):
        Digraph(2, frozenset({(0, 0)}))


def test_oriented_flag_rejects_digons():
    with pytest.raises(ValueError):
        Digraph(2, frozenset({(0, 1), (1, 0)}), oriented=True)


def test_strong_components_dicycle():
    assert strong_components(directed_cycle(3)) == [[0, 1, 2]]


def test_strong_components_transitive_tournament():
    assert strong_components(transitive_tournament(3)) == [[0], [1], [2]]


def test_strong_components_two_triangles_one_arc():
    arcs = {(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3)}
    comps = strong_components(Digraph(6, frozenset(arcs)))
    assert sorted(map(sorted, comps)) == [[0, 1, 2], [3, 4, 5]]


def test_is_k_strong_complete():
    assert is_k_strong(complete_digraph(4), 3)
    assert not is_k_strong(complete_digraph(4), 4)


def test_is_k_strong_dicycle():
    assert not is_k_strong(directed_cycle(5), 2)


def test_is_k_strong_singleton():
    assert is_k_strong(Digraph(1, frozenset()), 1)


def test_text_round_trip():
    d = Digraph(4, frozenset({(0, 1), (1, 2), (2, 3), (3, 0), (1, 3)}))
    assert from_text(to_text(d)) == d


def test_text_comments_and_errors():
    assert from_text("# hello\nn 2\n0 1\n").arcs == frozenset({(0, 1)})
    with pytest.raises(ValueError):
        from_text("n 2\n0 1\n0 1\n")
    with pytest.raises(ValueError):
        from_text("0 1\n")


def test_induced_lift():
    d = Digraph(5, frozenset({(0, 3), (3, 4), (4, 0)}))
    sub, lift = d.induced([0, 3, 4])
    assert sub.n == 3 and lift == [0, 3, 4]
    assert is_strong(sub)


def test_topological_order():
    assert topological_order(transitive_tournament(4)) == [0, 1, 2, 3]
    with pytest.raises(Exception):
        topological_order(directed_cycle(3))


def test_is_acyclic_counts_digons():
    assert not is_acyclic(Digraph(2, frozenset({(0, 1), (1, 0)})))
    assert is_acyclic(transitive_tournament(5))


def test_shortest_dipath_avoids_forbidden():
    d = Digraph(4, frozenset({(0, 1), (1, 3), (0, 2), (2, 3)}))
    assert shortest_dipath(d, 0, [3]) in ([0, 1, 3], [0, 2, 3])
    assert shortest_dipath(d, 0, [3], forbidden_internal={1}) == [0, 2, 3]
    assert shortest_dipath(d, 3, [0]) is None
