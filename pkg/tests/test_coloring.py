import pytest

from cyclewright import (
    Coloring,
    Digraph,
    ImproperInputError,
    combine_colorings,
    directed_cycle,
    verify_coloring,
)
from cyclewright.coloring import combine_many, constant_coloring


def arcless(n):
    return Digraph(n, frozenset())


def test_identity_case():
    # second coloring on an empty arc set with palette 1: output is c1
    d1 = Digraph(3, frozenset({(0, 1), (1, 2)}))
    c1 = Coloring((0, 1, 0), 2)
    out = combine_colorings(d1, c1, arcless(3), constant_coloring(3))
    assert out.color == (0, 1, 0)
    assert out.palette_size == 2


def test_two_single_arcs():
    d1 = Digraph(3, frozenset({(0, 1)}))
    d2 = Digraph(3, frozenset({(1, 2)}))
    c1 = Coloring((0, 1, 0), 2)
    c2 = Coloring((0, 0, 1), 2)
    out = combine_colorings(d1, c1, d2, c2)
    assert out.palette_size == 4
    assert verify_coloring(Digraph(3, d1.arcs | d2.arcs), out)


def test_dicycle_split_derived():
    # directed 5-cycle split into the 4-arc dipath and the closing arc
    d = directed_cycle(5)
    path = Digraph(5, frozenset({(i, i + 1) for i in range(4)}))
    closing = Digraph(5, frozenset({(4, 0)}))
    c_path = Coloring(tuple(i % 2 for i in range(5)), 2)
    c_close = Coloring((0, 0, 0, 0, 1), 2)
    out = combine_colorings(path, c_path, closing, c_close)
    assert out.palette_size <= 4
    assert verify_coloring(d, out)


def test_improper_input_rejected():
    d1 = Digraph(2, frozenset({(0, 1)}))
    with pytest.raises(ImproperInputError):
        combine_colorings(d1, Coloring((0, 0), 1), arcless(2), constant_coloring(2))


def test_combine_many_requires_cover():
    d = directed_cycle(3)
    part = Digraph(3, frozenset({(0, 1)}))
    with pytest.raises(ImproperInputError):
        combine_many(d, [(part, Coloring((0, 1, 0), 2))])


def test_palette_bound_exact():
    d1 = Digraph(4, frozenset({(0, 1), (2, 3)}))
    d2 = Digraph(4, frozenset({(1, 2)}))
    c1 = Coloring((0, 1, 0, 1), 2)
    c2 = Coloring((0, 1, 2, 0), 3)
    out = combine_colorings(d1, c1, d2, c2)
    assert out.palette_size == 6
