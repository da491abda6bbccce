import pytest

from cyclewright import (
    Digraph,
    NoOutGeneratorError,
    bfs_leveling,
    complete_digraph,
    directed_cycle,
    find_out_generator,
)


def test_dicycle_levels():
    lv = bfs_leveling(directed_cycle(4), 0)
    assert list(lv.level) == [0, 1, 2, 3]


def test_complete_levels():
    lv = bfs_leveling(complete_digraph(3), 0)
    assert lv.level[0] == 0 and lv.level[1] == lv.level[2] == 1


def test_unreachable_raises():
    d = Digraph(3, frozenset({(0, 1)}))
    with pytest.raises(NoOutGeneratorError):
        bfs_leveling(d, 0)


def test_parent_arcs_exist_and_levels_match():
    d = Digraph(6, frozenset({(0, 1), (0, 2), (1, 3), (2, 3), (3, 4), (4, 5), (2, 5)}))
    lv = bfs_leveling(d, 0)
    for v in range(1, 6):
        p = lv.parent[v]
        assert d.has_arc(p, v)
        assert lv.level[v] == lv.level[p] + 1


def test_tree_order_helpers():
    d = directed_cycle(6)
    lv = bfs_leveling(d, 0)
    assert lv.is_ancestor(0, 5)
    assert not lv.is_ancestor(5, 0)
    assert lv.tree_path(2, 4) == [2, 3, 4]
    assert lv.lca(3, 5) == 3


def test_find_out_generator_lowest_id():
    assert find_out_generator(directed_cycle(5)) == 0
    two_cycles = Digraph(4, frozenset({(0, 1), (1, 0), (2, 3), (3, 2)}))
    assert find_out_generator(two_cycles) is None
