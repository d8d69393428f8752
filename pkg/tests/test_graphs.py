from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cliqueforest import (
    CliqueForest,
    GraphFormatError,
    MissingEdgeWitness,
    SimpleGraph,
    check_component_completeness,
    is_clique_forest,
    parse_graph,
    to_dot,
)
from cliqueforest.graphs import parse_edge_list


def brute_force_clique_forest(g: SimpleGraph) -> bool:
    """Independent oracle: every pair in a component must be an edge."""
    for comp in g.connected_components():
        for u, v in combinations(comp, 2):
            if not g.has_edge(u, v):
                return False
    return True


class TestSimpleGraph:
    def test_from_edges_normalizes(self):
        g = SimpleGraph.from_edges(3, [(2, 0), (0, 2), (1, 2)])
        assert g.edges == frozenset({(0, 2), (1, 2)})

    def test_loop_rejected(self):
        with pytest.raises(GraphFormatError):
            SimpleGraph.from_edges(3, [(1, 1)])

    def test_out_of_range_rejected(self):
        with pytest.raises(GraphFormatError):
            SimpleGraph.from_edges(2, [(0, 5)])

    def test_components_sorted(self):
        g = SimpleGraph.from_edges(6, [(4, 5), (0, 1), (1, 2)])
        assert g.connected_components() == [(0, 1, 2), (3,), (4, 5)]

    def test_dict_round_trip(self):
        g = SimpleGraph.from_edges(4, [(0, 1), (2, 3)])
        assert SimpleGraph.from_dict(g.to_dict()) == g


class TestCliqueForestDecision:
    def test_empty_graph(self):
        res = is_clique_forest(SimpleGraph.from_edges(0, []))
        assert isinstance(res, CliqueForest)
        assert res.components == ()

    def test_edgeless_graph(self):
        res = is_clique_forest(SimpleGraph.from_edges(4, []))
        assert isinstance(res, CliqueForest)
        assert res.sizes == (1, 1, 1, 1)

    def test_disjoint_cliques(self):
        g = SimpleGraph.from_edges(5, [(0, 1), (2, 3), (2, 4), (3, 4)])
        res = is_clique_forest(g)
        assert isinstance(res, CliqueForest)
        assert res.components == ((0, 1), (2, 3, 4))
        assert res.component_of(4) == 1

    def test_path_rejected_with_witness(self):
        g = SimpleGraph.from_edges(3, [(0, 1), (1, 2)])
        res = is_clique_forest(g)
        assert isinstance(res, MissingEdgeWitness)
        assert (res.u, res.v) == (0, 2)
        assert res.path == (0, 1, 2)
        # the witness path really walks edges of the graph
        assert all(g.has_edge(a, b) for a, b in zip(res.path, res.path[1:]))

    def test_four_cycle_rejected(self):
        g = SimpleGraph.from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
        res = is_clique_forest(g)
        assert isinstance(res, MissingEdgeWitness)
        assert not g.has_edge(res.u, res.v)

    def test_witness_round_trip(self):
        w = MissingEdgeWitness(0, 2, (0, 1, 2))
        assert MissingEdgeWitness.from_dict(w.to_dict()) == w

    @given(
        st.integers(min_value=0, max_value=7).flatmap(
            lambda n: st.builds(
                SimpleGraph.from_edges,
                st.just(n),
                st.lists(
                    st.tuples(
                        st.integers(0, max(n - 1, 0)), st.integers(0, max(n - 1, 0))
                    ).filter(lambda e: e[0] != e[1]),
                    max_size=12,
                )
                if n > 1
                else st.just([]),
            )
        )
    )
    @settings(max_examples=200, deadline=None)
    def test_matches_brute_force(self, g):
        res = is_clique_forest(g)
        assert isinstance(res, CliqueForest) == brute_force_clique_forest(g)

    @given(st.integers(min_value=1, max_value=8))
    @settings(max_examples=20, deadline=None)
    def test_complete_graph_accepted(self, n):
        g = SimpleGraph.from_edges(n, combinations(range(n), 2))
        res = is_clique_forest(g)
        assert isinstance(res, CliqueForest)
        assert res.sizes == (n,)


class TestCompletenessReport:
    def test_ok(self):
        g = SimpleGraph.from_edges(3, [(0, 1)])
        rep = check_component_completeness(g)
        assert rep.ok
        assert all(c.complete for c in rep.components)

    def test_missing_pair_reported(self):
        g = SimpleGraph.from_edges(3, [(0, 1), (1, 2)])
        rep = check_component_completeness(g)
        assert not rep.ok
        assert rep.components[0].missing == (0, 2)

    def test_agrees_with_decision(self):
        for edges in ([(0, 1)], [(0, 1), (1, 2)], [(0, 1), (1, 2), (0, 2)]):
            g = SimpleGraph.from_edges(3, edges)
            rep = check_component_completeness(g)
            assert rep.ok == isinstance(is_clique_forest(g), CliqueForest)


class TestFormats:
    def test_edge_list(self):
        g = parse_edge_list("# comment\nn=4\n0 1\n2 3  # trailing\n")
        assert g == SimpleGraph.from_edges(4, [(0, 1), (2, 3)])

    def test_edge_list_missing_header(self):
        with pytest.raises(GraphFormatError):
            parse_edge_list("0 1\n")

    def test_edge_list_bad_line_number(self):
        with pytest.raises(GraphFormatError) as ei:
            parse_edge_list("n=3\n0 1\n0 x\n")
        assert ei.value.line == 3

    def test_edge_list_loop(self):
        with pytest.raises(GraphFormatError):
            parse_edge_list("n=3\n1 1\n")

    def test_edge_list_out_of_range(self):
        with pytest.raises(GraphFormatError):
            parse_edge_list("n=2\n0 2\n")

    def test_dot_round_trip(self):
        g = SimpleGraph.from_edges(5, [(0, 1), (2, 3), (2, 4), (3, 4)])
        assert parse_graph(to_dot(g)) == g

    def test_dot_isolated_vertices(self):
        g = SimpleGraph.from_edges(3, [])
        assert parse_graph(to_dot(g)) == g

    def test_parse_graph_sniffs_edge_list(self):
        assert parse_graph("n=2\n0 1\n") == SimpleGraph.from_edges(2, [(0, 1)])

    def test_dot_chain_statement(self):
        g = parse_graph("graph G {\n  0 -- 1 -- 2;\n}\n")
        assert g == SimpleGraph.from_edges(3, [(0, 1), (1, 2)])

    def test_dot_bad_statement(self):
        with pytest.raises(GraphFormatError):
            parse_graph("graph G {\n  frob;\n}\n")
