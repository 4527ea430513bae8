"""Extremal constructions S, J, T, B"""

from math import comb

import pytest

from turanflag.core import catalog
from turanflag.core.constructions import (
    KINDS,
    Construction,
    balanced_sizes,
    build_construction,
    build_fpq,
    build_partitioned,
    check_free,
    construction,
    construction_edge_count,
    is_member,
    optimal_j_split,
)
from turanflag.core.hypergraph import ThreeGraph, contains_subgraph, parse_graph
from turanflag.errors import GraphError


@pytest.mark.parametrize("kind", KINDS)
@pytest.mark.parametrize("n", range(3, 31))
def test_edge_counts_match_closed_form(kind, n):
    assert build_construction(kind, n).num_edges == construction_edge_count(kind, n)


@pytest.mark.parametrize("kind, edges", [("S", 64), ("T", 136), ("B", 180), ("J", 112)])
def test_order_twelve(kind, edges):
    assert construction_edge_count(kind, 12) == edges


def _compositions(n, parts):
    if parts == 1:
        yield (n,)
        return
    for first in range(n + 1):
        for rest in _compositions(n - first, parts - 1):
            yield (first,) + rest


@pytest.mark.parametrize("kind", KINDS)
@pytest.mark.parametrize("n", range(3, 13))
def test_no_partition_beats_the_construction(kind, n):
    parts = len(construction(kind, n).partition)
    best = max(build_partitioned(kind, sizes).num_edges for sizes in _compositions(n, parts))
    assert best == build_construction(kind, n).num_edges


class TestShape:
    def test_balanced(self):
        assert balanced_sizes(12, 3) == (4, 4, 4)
        assert balanced_sizes(7, 3) == (3, 2, 2)
        assert balanced_sizes(7, 2) == (4, 3)

    def test_j_split(self):
        # (n-k) * C(k,2) at n = 12: k = 8 gives 4 * 28 = 112, k = 9 gives 3 * 36 = 108
        assert optimal_j_split(12) == 8
        assert optimal_j_split(3) == 2

    def test_partition_is_explicit(self):
        c = construction("T", 7)
        assert c.partition == ((0, 1, 2), (3, 4), (5, 6))
        assert c.kind == "T" and c.n == 7

    def test_kind_is_case_insensitive(self):
        assert construction("b", 5).kind == "B"

    def test_rejects(self):
        with pytest.raises(GraphError):
            construction("X", 6)
        with pytest.raises(GraphError):
            construction("S", 2)
        with pytest.raises(GraphError):
            Construction("S", 3, ((0,), (1,)))
        with pytest.raises(GraphError):
            Construction("S", 3, ((0,), (1,), (1,)))

    def test_edge_rules(self):
        S = build_partitioned("S", [1, 1, 1])
        assert S == parse_graph("3:123")
        J = build_partitioned("J", [2, 1])
        assert J == parse_graph("3:123")
        assert build_partitioned("J", [1, 2]).num_edges == 0
        # classes {1}, {2}, {3,4}: 134 has two in V2 and one in V0, 234 misses V0
        T = build_partitioned("T", [1, 1, 2])
        assert T.has_edge(0, 2, 3) and T.has_edge(0, 1, 2) and not T.has_edge(1, 2, 3)
        assert build_partitioned("B", [3, 0]).num_edges == 0


class TestFreeness:
    def test_turan_construction_is_k4_free(self):
        free, witness = check_free(build_construction("T", 12), catalog.family("k4"))
        assert free and witness is None

    def test_bipartite_is_fano_free(self):
        assert check_free(build_construction("B", 12), catalog.family("fano"))[0]

    def test_tripartite_avoids_h29_and_f5(self):
        S = build_construction("S", 12)
        assert check_free(S, catalog.family("h29"))[0]
        assert check_free(S, catalog.family("f5"))[0]

    def test_j_is_f32_free(self):
        assert check_free(build_construction("J", 12), catalog.family("f32"))[0]

    def test_witness(self):
        B = build_construction("B", 6)
        free, witness = check_free(B, catalog.family("k4"))
        assert not free
        assert witness.member == catalog.family("k4").members[0]
        for i, j, k in witness.member.edges():
            assert B.has_edge(witness.embedding[i], witness.embedding[j], witness.embedding[k])
        assert not witness.induced

    def test_induced_witness(self):
        free, witness = check_free(parse_graph("5:123"), catalog.family("k4/induced-e1"))
        assert not free and witness.induced


class TestMembership:
    @pytest.mark.parametrize("kind", KINDS)
    def test_constructions_are_members(self, kind):
        assert is_member(kind, build_construction(kind, 6))

    def test_non_members(self):
        assert not is_member("S", catalog.graph("k4"))
        assert not is_member("T", catalog.graph("k4"))
        assert is_member("B", catalog.graph("k4"))

    def test_empty_classes_allowed(self):
        assert is_member("S", ThreeGraph(4))

    def test_size_limit(self):
        with pytest.raises(GraphError):
            is_member("S", build_construction("S", 8))


def test_fpq():
    G = build_fpq(4, 3)
    assert G.n == 7
    assert G.num_edges == comb(4, 3) + 4 * comb(3, 2)
    assert contains_subgraph(G, catalog.graph("k4"))
