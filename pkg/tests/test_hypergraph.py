"""3-graph encoding, canonical forms, containment and blow-ups"""

import itertools
import random
from fractions import Fraction

import pytest

from turanflag.core import catalog
from turanflag.core.hypergraph import (
    ThreeGraph,
    blowup,
    blowup_contains,
    blowup_incomparable,
    blowup_weighted,
    canonical_form,
    contains_induced,
    contains_subgraph,
    find_embedding,
    format_graph,
    induced_density,
    induced_subgraph,
    induced_subgraphs,
    is_covering,
    is_isomorphic,
    parse_graph,
    permute,
    triple_index,
    triples,
)
from turanflag.core.family import Family, generate_admissible
from turanflag.errors import GraphError


class TestEncoding:
    def test_colex_indices(self):
        assert triple_index(0, 1, 2) == 0
        assert triple_index(0, 1, 3) == 1
        assert triple_index(0, 2, 3) == 2
        assert triple_index(1, 2, 3) == 3
        assert triple_index(0, 1, 4) == 4
        assert triple_index(3, 1, 2) == 3

    def test_triples_follow_index(self):
        for t, (i, j, k) in enumerate(triples(7)):
            assert triple_index(i, j, k) == t

    def test_mask_must_fit(self):
        with pytest.raises(GraphError):
            ThreeGraph(3, 0b10)
        assert ThreeGraph.complete(4).num_edges == 4

    def test_from_edges_rejects_bad_triples(self):
        with pytest.raises(GraphError):
            ThreeGraph.from_edges(4, [(0, 0, 1)])
        with pytest.raises(GraphError):
            ThreeGraph.from_edges(4, [(0, 1, 4)])


class TestText:
    def test_parse_and_format(self):
        G = parse_graph("5:123,124,345")
        assert G.n == 5
        assert G.edges() == [(0, 1, 2), (0, 1, 3), (2, 3, 4)]
        assert format_graph(G) == "5:123,124,345"

    def test_edges_print_in_colex_order(self):
        assert format_graph(parse_graph("4:234,123")) == "4:123,234"

    def test_empty_graph(self):
        G = parse_graph("6:")
        assert G.n == 6 and G.num_edges == 0
        assert format_graph(G) == "6:"

    def test_letters_and_dashes(self):
        assert parse_graph("10:12a").has_edge(0, 1, 9)
        big = ThreeGraph.from_edges(40, [(0, 1, 39)])
        assert format_graph(big) == "40:1-2-40"
        assert parse_graph(format_graph(big)) == big

    @pytest.mark.parametrize("text", ["123", "x:123", "4:125", "4:112", "4:12", "4:1-2"])
    def test_parse_rejects(self, text):
        with pytest.raises(GraphError):
            parse_graph(text)


class TestCanonicalForm:
    def test_invariant_under_relabeling(self):
        G = catalog.graph("h29")
        for perm in itertools.islice(itertools.permutations(range(6)), 0, 720, 37):
            assert canonical_form(permute(G, perm)) == canonical_form(G)

    def test_idempotent(self):
        G = catalog.graph("fano")
        assert canonical_form(canonical_form(G)) == canonical_form(G)

    def test_is_minimum_mask(self):
        G = parse_graph("4:234")
        assert canonical_form(G).mask == 1

    @pytest.mark.parametrize("n, classes", [(3, 2), (4, 5), (5, 34)])
    def test_isomorphism_class_counts(self, n, classes):
        total = len(triples(n))
        found = {canonical_form(ThreeGraph(n, m)).mask for m in range(1 << total)}
        assert len(found) == classes

    def test_fixed_labels_are_preserved(self):
        # vertex 1 labeled: an edge through it differs from one avoiding it
        a = canonical_form(parse_graph("4:123"), fixed=1)
        b = canonical_form(parse_graph("4:234"), fixed=1)
        assert a != b
        assert canonical_form(parse_graph("4:124"), fixed=1) == a
        assert is_isomorphic(parse_graph("4:123"), parse_graph("4:234"))

    def test_nine_vertices(self):
        G = parse_graph("9:123,456,789,147")
        H = permute(G, [8, 7, 6, 5, 4, 3, 2, 1, 0])
        assert canonical_form(G) == canonical_form(H)

    def test_too_large(self):
        with pytest.raises(GraphError):
            canonical_form(ThreeGraph(10))


class TestSubgraphs:
    def test_induced_subgraph_relabels(self):
        G = parse_graph("5:123,345")
        assert induced_subgraph(G, [2, 3, 4]) == parse_graph("3:123")
        assert induced_subgraph(G, [0, 1, 3]).num_edges == 0

    def test_induced_subgraphs_up_to_isomorphism(self):
        K4m = catalog.graph("k4-")
        assert induced_subgraphs(K4m, 3) == [ThreeGraph(3, 0), ThreeGraph(3, 1)]

    def test_induced_density(self):
        edge = parse_graph("3:123")
        assert induced_density(edge, ThreeGraph.complete(5)) == 1
        assert induced_density(edge, catalog.graph("k4-")) == Fraction(3, 4)
        assert induced_density(catalog.graph("e1"), ThreeGraph.complete(5)) == 0

    def test_find_embedding_maps_edges(self):
        G = catalog.graph("fano")
        mapping = find_embedding(G, parse_graph("5:123,145"))
        assert mapping is not None
        for i, j, k in parse_graph("5:123,145").edges():
            assert G.has_edge(mapping[i], mapping[j], mapping[k])
        assert len(set(mapping)) == 5

    def test_fano_is_k4_free(self):
        assert not contains_subgraph(catalog.graph("fano"), catalog.graph("k4"))
        assert not contains_subgraph(catalog.graph("fano"), catalog.graph("k4-"))

    def test_induced_containment(self):
        K5 = ThreeGraph.complete(5)
        assert contains_subgraph(K5, catalog.graph("e1"))
        assert not contains_induced(K5, catalog.graph("e1"))
        assert contains_induced(parse_graph("5:123"), catalog.graph("e1"))

    def test_through_vertex(self):
        G = parse_graph("6:123,456")
        edge = parse_graph("3:123")
        assert find_embedding(G, edge, through=4) is not None
        assert find_embedding(parse_graph("6:123"), edge, through=4) is None


class TestBlowups:
    def test_blowup_of_an_edge(self):
        G = blowup(parse_graph("3:123"), 2)
        assert G.n == 6
        assert G.num_edges == 8

    def test_weighted(self):
        G = blowup_weighted(parse_graph("3:123"), [1, 2, 3])
        assert G.num_edges == 6
        with pytest.raises(GraphError):
            blowup_weighted(parse_graph("3:123"), [1, 2])
        with pytest.raises(GraphError):
            blowup(parse_graph("3:123"), 0)

    def test_capacity(self):
        with pytest.raises(GraphError):
            blowup(parse_graph("3:123"), 100)

    def test_f5_in_blowup_of_k4_minus(self):
        assert blowup_contains(catalog.graph("f5"), catalog.graph("k4-"))

    def test_k4_not_in_blowup_of_k4_minus(self):
        assert not blowup_contains(catalog.graph("k4"), catalog.graph("k4-"))

    def test_reflexive_and_agrees_with_explicit_blowup(self):
        F = catalog.graph("f5")
        G = catalog.graph("k4-")
        assert blowup_contains(G, G)
        assert contains_subgraph(blowup(G, 2), F)

    def test_covering_graphs_need_a_copy(self):
        fano = catalog.graph("fano")
        assert is_covering(fano)
        assert is_covering(catalog.graph("k4"))
        assert not is_covering(catalog.graph("f5"))
        assert not blowup_contains(fano, ThreeGraph.complete(6))
        assert blowup_contains(catalog.graph("k4"), ThreeGraph.complete(6))

    def test_h29_sits_in_blowups_of_its_augmentation(self):
        graphs = [catalog.graph(name) for name in ("h29-1", "h29-2", "h29-3")]
        H = catalog.graph("h29")
        for G in graphs:
            assert blowup_contains(H, G)


def test_blowup_incomparable_lists_comparable_pairs():
    K4m = catalog.graph("k4-")
    H3 = catalog.graph("h29-3")
    assert blowup_incomparable([K4m, catalog.graph("k4")]) == [(0, 1)]
    assert (1, 0) in blowup_incomparable([K4m, H3])
    assert blowup_incomparable([catalog.graph("fano"), catalog.graph("k4")]) == []


def _all_graphs(n):
    return generate_admissible(n, Family())


def test_blowup_containment_matches_explicit_blowups():
    hosts = [G for n in (3, 4) for G in _all_graphs(n)]
    patterns = [F for n in (3, 4, 5) for F in _all_graphs(n)]
    for G in hosts:
        for F in patterns:
            assert blowup_contains(F, G) == contains_subgraph(blowup(G, F.n), F), (
                format_graph(F), format_graph(G))


@pytest.mark.parametrize("k", [3, 4, 5])
def test_induced_densities_sum_to_one(k):
    rng = random.Random(9 + k)
    G = ThreeGraph.from_edges(9, [t for t in triples(9) if rng.random() < 0.4])
    assert sum(induced_density(H, G) for H in _all_graphs(k)) == 1
