import pytest

from cyclewright import (
    Digraph,
    PreconditionError,
    certify_C12,
    certify_C13,
    certify_C22,
    certify_C23,
    chromatic_number_exact,
    complete_digraph,
    directed_cycle,
    find_subdivision,
    handle_decomposition,
    nice_handle_decomposition,
    random_strong_digraph,
    reduce_to_robust,
    two_block_spec,
    verify_certificate,
)
from cyclewright.handles import (
    is_robust,
    underlying_blocks,
    validate_decomposition,
)


def theta_digraph():
    # dipaths 0->1->2, 0->3->2, 2->4->0
    return Digraph(
        5, frozenset({(0, 1), (1, 2), (0, 3), (3, 2), (2, 4), (4, 0)})
    )


class TestHandleDecomposition:
    def test_dicycle_single_handle(self):
        hd = handle_decomposition(directed_cycle(5))
        assert hd.num_handles == 1
        validate_decomposition(directed_cycle(5), hd)

    def test_digon(self):
        d = Digraph(2, frozenset({(0, 1), (1, 0)}))
        hd = handle_decomposition(d)
        assert hd.num_handles == 1
        validate_decomposition(d, hd)

    def test_theta_count(self):
        d = theta_digraph()
        hd = handle_decomposition(d)
        assert hd.num_handles == len(d.arcs) - d.n + 1 == 2
        validate_decomposition(d, hd)

    def test_random_counts(self):
        for seed in range(10):
            d = random_strong_digraph(7, 14 + seed % 8, seed)
            hd = handle_decomposition(d)
            assert hd.num_handles == len(d.arcs) - d.n + 1
            validate_decomposition(d, hd)

    def test_not_strong_rejected(self):
        with pytest.raises(PreconditionError):
            handle_decomposition(Digraph(2, frozenset({(0, 1)})))


class TestNiceDecomposition:
    def test_cycle_with_chord(self):
        d = directed_cycle(6).with_arcs([(0, 3)])
        hd = nice_handle_decomposition(d)
        assert len(hd.handles[0]) == 7  # the full cycle, closed
        assert hd.handles[1] == (0, 3)
        validate_decomposition(d, hd)

    def test_dicycle(self):
        hd = nice_handle_decomposition(directed_cycle(4))
        assert hd.num_handles == 1

    def test_non_robust_rejected(self):
        # two triangles sharing a cut vertex
        d = Digraph(5, frozenset({(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)}))
        with pytest.raises(PreconditionError):
            nice_handle_decomposition(d)

    def test_distinct_endpoints_on_random_robust(self):
        from cyclewright.handles import is_robust

        found = 0
        for seed in range(40):
            d = random_strong_digraph(7, 16, seed)
            if not is_robust(d):
                continue
            found += 1
            hd = nice_handle_decomposition(d)
            validate_decomposition(d, hd)
            for h in hd.handles[1:]:
                assert h[0] != h[-1]
        assert found >= 5


class TestReduceToRobust:
    def test_dicycle_is_itself(self):
        d = directed_cycle(5)
        sub, lift = reduce_to_robust(d)
        assert sub.arcs == d.arcs

    def test_two_triangles_cut_vertex(self):
        d = Digraph(5, frozenset({(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)}))
        sub, lift = reduce_to_robust(d)
        assert sub.n == 3
        assert chromatic_number_exact(sub) == 3

    def test_digon_on_triangle(self):
        d = Digraph(3, frozenset({(0, 1), (1, 2), (2, 0), (1, 0)}))
        sub, lift = reduce_to_robust(d)
        assert sub.is_oriented()
        assert chromatic_number_exact(sub) == 3
        assert is_robust(sub)

    def test_chromatic_two_rejected(self):
        with pytest.raises(PreconditionError):
            reduce_to_robust(directed_cycle(4))


class TestUnderlyingBlocks:
    def test_cut_vertex_split(self):
        d = Digraph(5, frozenset({(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)}))
        blocks = sorted(tuple(b) for b in underlying_blocks(d))
        assert blocks == [(0, 1, 2), (0, 3, 4)]

    def test_robust_whole(self):
        assert underlying_blocks(directed_cycle(5)) == [[0, 1, 2, 3, 4]]


class TestCertifyC12:
    def test_odd_cycle_coloring(self):
        cert = certify_C12(directed_cycle(5))
        assert cert.kind == "coloring" and cert.coloring.palette_size == 3
        assert verify_certificate(directed_cycle(5), cert)

    def test_even_cycle_two_colors(self):
        cert = certify_C12(directed_cycle(4))
        assert cert.kind == "coloring" and cert.coloring.palette_size <= 3

    def test_chorded_cycle_witness(self):
        d = directed_cycle(5).with_arcs([(0, 2)])
        cert = certify_C12(d)
        assert cert.kind == "witness"
        assert verify_certificate(d, cert)


class TestCertifyC22:
    def test_complete3_coloring(self):
        d = complete_digraph(3)
        cert = certify_C22(d)
        assert cert.kind == "coloring" and cert.coloring.palette_size == 3
        assert find_subdivision(d, two_block_spec(2, 2)).definitely_absent

    def test_crossing_chords_witness(self):
        d = directed_cycle(5).with_arcs([(0, 2), (1, 3)])
        cert = certify_C22(d)
        assert verify_certificate(d, cert)
        assert cert.kind == "witness"

    def test_dicycle(self):
        cert = certify_C22(directed_cycle(7))
        assert cert.kind == "coloring" and cert.coloring.palette_size == 3


class TestCertifyC13:
    def test_long_dicycle(self):
        cert = certify_C13(directed_cycle(9))
        assert cert.kind == "coloring" and cert.coloring.palette_size == 3

    def test_crossing_chords(self):
        d = directed_cycle(6).with_arcs([(0, 2), (1, 4)])
        cert = certify_C13(d)
        assert verify_certificate(d, cert)
        assert cert.kind == "witness"

    def test_case1_configuration(self):
        # handle (s,x,t), path (s,u,t), and an escape arc from x
        d = Digraph(
            6,
            frozenset(
                {
                    (0, 1), (1, 2), (2, 3), (3, 0),  # cycle s=0..t? base
                    (0, 4), (4, 2),  # second (0,2)-route
                    (0, 5), (5, 2),  # third route; 5 plays x with escape
                    (5, 3),
                }
            ),
        )
        if chromatic_number_exact(d) >= 4:
            cert = certify_C13(d)
            assert cert.kind == "witness" and verify_certificate(d, cert)
        else:
            out = find_subdivision(d, two_block_spec(1, 3))
            cert = certify_C13(d)
            assert verify_certificate(d, cert)


class TestCertifyC23:
    def test_semicomplete4_coloring(self):
        # every semicomplete digraph of order 4 misses C(2,3): chi = 4 exactly
        d = complete_digraph(4)
        cert = certify_C23(d)
        assert cert.kind == "coloring" and cert.coloring.palette_size <= 4
        assert find_subdivision(d, two_block_spec(2, 3)).definitely_absent

    def test_complete5_witness(self):
        d = complete_digraph(5)
        assert chromatic_number_exact(d) == 5
        cert = certify_C23(d)
        assert cert.kind == "witness"
        assert verify_certificate(d, cert)
        assert find_subdivision(d, two_block_spec(2, 3)).found

    def test_dicycle(self):
        cert = certify_C23(directed_cycle(5))
        assert cert.kind == "coloring" and cert.coloring.palette_size == 3


class TestSmallCycleTotality:
    def test_random_instances(self):
        for seed in range(20):
            n = 5 + seed % 4
            d = random_strong_digraph(n, 2 * n + seed % 9, seed)
            for fn in (certify_C12, certify_C22, certify_C13, certify_C23):
                cert = fn(d)
                assert cert.kind in ("coloring", "witness")
                assert verify_certificate(d, cert)
