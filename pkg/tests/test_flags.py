"""Types, flags and exact pair-density matrices"""

from fractions import Fraction

import pytest

from turanflag.core.family import Family, generate_admissible
from turanflag.core.hypergraph import ThreeGraph, parse_graph
from turanflag.errors import GraphError
from turanflag.sdp.flags import (
    Flag,
    FlagContext,
    TypeSigma,
    edge_density,
    enumerate_types_and_flags,
    pair_densities,
    pair_density_matrix,
    type_sizes,
)
from turanflag.sdp.problem import FlagProblem


@pytest.fixture(scope="module")
def k4_contexts_5(k4_admissible_5):
    return enumerate_types_and_flags(5, k4_admissible_5)


def test_type_sizes():
    assert type_sizes(5) == [(1, 3), (3, 4)]
    assert type_sizes(6) == [(2, 4), (4, 5)]
    assert type_sizes(7) == [(1, 4), (3, 5), (5, 6)]


def test_edge_density():
    assert edge_density(ThreeGraph.complete(5)) == 1
    assert edge_density(parse_graph("4:123,124")) == Fraction(1, 2)
    with pytest.raises(GraphError):
        edge_density(ThreeGraph(2))


class TestEnumeration:
    def test_empty_only_family(self, edge_family):
        admissible = generate_admissible(5, edge_family)
        contexts = enumerate_types_and_flags(5, admissible)
        assert [(c.s, c.m, len(c)) for c in contexts] == [(1, 3, 1), (3, 4, 1)]

    def test_k4_free_order_5(self, k4_contexts_5):
        assert [c.s for c in k4_contexts_5] == [1, 3, 3]
        assert [len(c) for c in k4_contexts_5] == [2, 8, 7]
        assert [c.sigma.index for c in k4_contexts_5] == [0, 1, 2]
        assert [c.sigma.graph.mask for c in k4_contexts_5] == [0, 0, 1]

    def test_flags_are_sorted_and_extend_their_type(self, k4_contexts_5):
        for ctx in k4_contexts_5:
            masks = [f.graph.mask for f in ctx.flags]
            assert masks == sorted(masks)
            for flag in ctx.flags:
                assert flag.labeled == ctx.s
                assert ctx.flag_index(flag.graph) == ctx.flags.index(flag)

    def test_flag_lookup_preserves_labels(self, k4_contexts_5):
        ctx = k4_contexts_5[0]
        assert ctx.flag_index(parse_graph("3:123")) == 1
        assert ctx.flag_index(parse_graph("3:")) == 0

    def test_unsupported_order(self, k4_admissible_5):
        with pytest.raises(GraphError):
            enumerate_types_and_flags(4, k4_admissible_5)


class TestContext:
    def test_rejects_empty(self):
        with pytest.raises(GraphError):
            FlagContext(TypeSigma(ThreeGraph(1), 0), ())

    def test_rejects_flag_not_extending_type(self):
        with pytest.raises(GraphError):
            FlagContext.from_graphs(parse_graph("3:123"), [parse_graph("4:124")], 0)

    def test_rejects_duplicates(self):
        with pytest.raises(GraphError):
            FlagContext.from_graphs(ThreeGraph(1), [parse_graph("3:123"), parse_graph("3:123")], 0)

    def test_rejects_mixed_orders(self):
        with pytest.raises(GraphError):
            FlagContext.from_graphs(ThreeGraph(1), [parse_graph("3:"), parse_graph("4:")], 0)


class TestPairDensities:
    def test_single_edge_host(self, k4_contexts_5):
        P = pair_densities(k4_contexts_5[:1], parse_graph("5:123"))[0]
        assert P.entries == (
            (Fraction(4, 5), Fraction(1, 10)),
            (Fraction(1, 10), Fraction(0)),
        )
        assert P.total() == 1

    def test_empty_host(self, edge_family):
        admissible = generate_admissible(5, edge_family)
        contexts = enumerate_types_and_flags(5, admissible)
        assert [P.entries for P in pair_densities(contexts, admissible[0])] == [((1,),), ((1,),)]

    def test_symmetric_and_total_probability(self, k4_contexts_5, k4_admissible_5):
        for H in k4_admissible_5:
            matrices = pair_densities(k4_contexts_5, H)
            for P in matrices:
                n = len(P)
                assert all(P.entries[a][b] == P.entries[b][a] for a in range(n) for b in range(n))
                assert all(v >= 0 for row in P.entries for v in row)
            # every labeled 3-set induces one of the listed types
            assert matrices[1].total() + matrices[2].total() == 1
            assert matrices[0].total() == 1

    def test_single_context_helper(self, k4_contexts_5):
        ctx = k4_contexts_5[0]
        P = pair_density_matrix(ctx.sigma, ctx.flags, parse_graph("5:123"))
        assert P.entries[0][1] == Fraction(1, 10)

    def test_order_mismatch(self, k4_contexts_5):
        with pytest.raises(GraphError):
            pair_densities(k4_contexts_5, ThreeGraph(6))


class TestProblem:
    def test_build(self, k4_family):
        problem = FlagProblem.build(5, k4_family)
        assert len(problem) == len(problem.admissible) == len(problem.densities)
        assert problem.block_sizes == [2, 8, 7]
        assert all(len(row) == 3 for row in problem.matrices)
        assert problem.densities[0] == 0

    def test_parallel_matches_serial(self, k4_family, k4_admissible_5):
        serial = FlagProblem.build(5, k4_family, admissible=k4_admissible_5)
        parallel = FlagProblem.build(5, k4_family, workers=2, admissible=k4_admissible_5)
        assert serial.matrices == parallel.matrices

    def test_rejects_empty_or_mixed(self, k4_family, k4_admissible_5):
        contexts = enumerate_types_and_flags(5, k4_admissible_5)
        with pytest.raises(GraphError):
            FlagProblem.from_contexts(5, k4_family, [], contexts)
        with pytest.raises(GraphError):
            FlagProblem.from_contexts(5, k4_family, [ThreeGraph(6)], contexts)

    def test_h29_augmented_has_38_constraints(self):
        from turanflag.core import catalog
        problem = FlagProblem.build(6, catalog.family("h29-aug"))
        assert len(problem) == 38
        assert problem.block_sizes == [len(c) for c in problem.contexts]
        assert [c.s for c in problem.contexts][0] == 2
