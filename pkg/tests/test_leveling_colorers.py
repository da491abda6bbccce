import pytest

from cyclewright import (
    Digraph,
    PreconditionError,
    bfs_leveling,
    certify_hatC4,
    certify_two_blocks_strong,
    certify_two_strong,
    chromatic_number_exact,
    classify_arcs,
    complete_digraph,
    directed_cycle,
    find_subdivision,
    menger_two_paths,
    random_strong_digraph,
    transitive_tournament,
    two_block_spec,
    verify_certificate,
)
from cyclewright import NoOutGeneratorError
from cyclewright.cycles import hat_c4_spec


class TestClassifyArcs:
    def test_dicycle_closing_arc_is_ancestor_class(self):
        d = directed_cycle(5)
        lv = bfs_leveling(d, 0)
        classes = classify_arcs(d, lv, "two-block", 3, 2)
        assert classes.labels[(4, 0)] == "A2"
        for i in range(4):
            assert classes.labels[(i, i + 1)] == "A1"

    def test_same_level_arc(self):
        d = Digraph(3, frozenset({(0, 1), (0, 2), (1, 2), (2, 1), (1, 0)}))
        lv = bfs_leveling(d, 0)
        classes = classify_arcs(d, lv, "two-block", 3, 2)
        assert classes.labels[(1, 2)] == "A0"
        assert classes.labels[(2, 1)] == "A0"

    def test_hat_mode_drop_one(self):
        d = directed_cycle(4)
        lv = bfs_leveling(d, 0)
        classes = classify_arcs(d, lv, "hat")
        assert classes.labels[(0, 1)] == "A1"
        assert classes.labels[(3, 0)] == "A2"

    def test_partition_and_tree_arcs(self):
        for seed in range(6):
            d = random_strong_digraph(8, 18, seed)
            lv = bfs_leveling(d, 0)
            classes = classify_arcs(d, lv, "two-block", 3, 2)
            assert set(classes.labels) == set(d.arcs)
            for v in range(1, d.n):
                assert classes.labels[(lv.parent[v], v)] == "A1"


class TestCertifyTwoBlocks:
    def test_dicycle_coloring(self):
        cert = certify_two_blocks_strong(directed_cycle(7), 3, 2)
        assert cert.kind == "coloring"
        assert cert.coloring.palette_size <= 216
        assert verify_certificate(directed_cycle(7), cert)

    def test_complete6_witness(self):
        d = complete_digraph(6)
        cert = certify_two_blocks_strong(d, 3, 2)
        assert cert.kind == "witness"
        assert verify_certificate(d, cert)
        # independent confirmation
        assert find_subdivision(d, two_block_spec(3, 2)).found

    def test_not_strong_rejected(self):
        with pytest.raises(PreconditionError):
            certify_two_blocks_strong(transitive_tournament(5), 3, 2)

    def test_parameter_range(self):
        with pytest.raises(PreconditionError):
            certify_two_blocks_strong(directed_cycle(5), 2, 2)

    def test_random_instances_always_verify(self):
        for seed in range(25):
            n = 5 + seed % 6
            m = min(n * (n - 1), 3 * n // 2 + (2 * seed) % 15)
            d = random_strong_digraph(n, m, seed)
            cert = certify_two_blocks_strong(d, 3, 2)
            assert cert.kind in ("coloring", "witness")
            assert verify_certificate(d, cert)
            if cert.kind == "coloring":
                assert cert.coloring.palette_size <= 216


class TestCertifyHatC4:
    def test_dicycle(self):
        d = directed_cycle(6)
        cert = certify_hatC4(d)
        assert cert.kind == "coloring" and cert.coloring.palette_size <= 24
        assert verify_certificate(d, cert)

    def test_complete4_witness_matches_paper_shape(self):
        d = complete_digraph(4)
        cert = certify_hatC4(d)
        assert cert.kind == "witness"
        assert verify_certificate(d, cert)
        assert cert.witness.spec == hat_c4_spec()

    def test_no_out_generator(self):
        d = Digraph(4, frozenset({(0, 1), (1, 0), (2, 3), (3, 2)}))
        with pytest.raises(NoOutGeneratorError):
            certify_hatC4(d)

    def test_transitive_tournament_has_generator(self):
        # acyclic but vertex 0 reaches everything
        cert = certify_hatC4(transitive_tournament(5))
        assert verify_certificate(transitive_tournament(5), cert)

    def test_random_instances(self):
        for seed in range(25):
            n = 5 + seed % 5
            d = random_strong_digraph(n, n + 3 + (seed * 5) % 14, seed)
            cert = certify_hatC4(d)
            assert cert.kind in ("coloring", "witness")
            assert verify_certificate(d, cert)
            if cert.kind == "coloring":
                assert cert.coloring.palette_size <= 24


class TestMenger:
    def test_complete(self):
        res = menger_two_paths(complete_digraph(4), 0, 3)
        assert isinstance(res, tuple)
        p1, p2 = res
        assert p1[0] == p2[0] == 0 and p1[-1] == p2[-1] == 3
        assert not (set(p1[1:-1]) & set(p2[1:-1]))

    def test_separator(self):
        d = Digraph(3, frozenset({(0, 1), (1, 2)}))
        assert menger_two_paths(d, 0, 2) == 1

    def test_c12_shape(self):
        d = Digraph(3, frozenset({(0, 2), (0, 1), (1, 2)}))
        res = menger_two_paths(d, 0, 2)
        assert isinstance(res, tuple)
        assert sorted(len(p) for p in res) == [2, 3]


class TestCertifyTwoStrong:
    def test_complete9_witness(self):
        d = complete_digraph(9)
        cert = certify_two_strong(d, 3, 2)
        assert cert.kind == "witness"
        assert verify_certificate(d, cert)

    def test_complete4_coloring(self):
        d = complete_digraph(4)
        cert = certify_two_strong(d, 3, 2)
        assert cert.kind == "coloring"
        assert cert.coloring.palette_size <= 7
        assert verify_certificate(d, cert)

    def test_dicycle_not_two_strong(self):
        with pytest.raises(PreconditionError):
            certify_two_strong(directed_cycle(6), 3, 2)

    def test_excluded_parameters(self):
        with pytest.raises(PreconditionError):
            certify_two_strong(complete_digraph(5), 2, 2)


class TestClassSurgeries:
    """Targeted fixtures that drive the ancestor-class and cross-branch
    witness extractions; random strong digraphs rarely reach them."""

    def test_d2_chain_case_a(self):
        arcs = {(i, i + 1) for i in range(12)}
        arcs |= {(12, 9), (9, 6), (6, 3)}
        arcs |= {(12, 10), (10, 7), (7, 4)}
        arcs |= {(3, 0), (4, 0)}
        d = Digraph(13, frozenset(arcs))
        cert = certify_two_blocks_strong(d, 3, 2)
        assert cert.kind == "witness"
        assert verify_certificate(d, cert)
        assert find_subdivision(d, two_block_spec(3, 2)).found

    def test_d2_crossing_chains_case_b(self):
        from cyclewright.leveling_colorers import _claim_d2_surgery
        from cyclewright import verify_subdivision

        arcs = {(i, i + 1) for i in range(12)}
        arcs |= {(12, 10), (10, 7), (7, 2)}
        arcs |= {(12, 9), (9, 6), (6, 3)}
        arcs |= {(2, 0), (3, 0)}
        d = Digraph(13, frozenset(arcs))
        lv = bfs_leveling(d, 0)
        q = [2, 7, 10, 12, 9, 6, 3]
        w = _claim_d2_surgery(d, lv, q, 3, 2)
        assert w is not None and verify_subdivision(d, w)
        cert = certify_two_blocks_strong(d, 3, 2)
        assert cert.kind == "witness" and verify_certificate(d, cert)

    def test_d3_cross_branch_chains(self):
        arcs = {(0, 1), (0, 9)}
        arcs |= {(i, i + 1) for i in range(1, 8)}
        arcs |= {(i, i + 1) for i in range(9, 16)}
        arcs |= {(8, 14), (14, 4), (4, 10)}
        arcs |= {(8, 13), (13, 3)}
        arcs |= {(16, 1), (12, 0)}
        d = Digraph(17, frozenset(arcs))
        cert = certify_two_blocks_strong(d, 3, 2)
        assert cert.kind == "witness"
        assert verify_certificate(d, cert)
        assert find_subdivision(d, two_block_spec(3, 2)).found
