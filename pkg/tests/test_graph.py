from __future__ import annotations

import random

import pytest
from conftest import small_random

from graphvalues.graph import (
    INF,
    Edge,
    ParseError,
    WeightedDigraph,
    component_has_cycle,
    induced_subgraph,
    parse_any,
    parse_graph,
    propagate_component_values,
    tarjan_scc,
    to_dimacs,
    to_edgelist,
)


def test_edge_validation():
    with pytest.raises(ValueError, match="out of range"):
        WeightedDigraph(2, [Edge(0, 2, 1)])
    with pytest.raises(ValueError, match="wtp"):
        WeightedDigraph(2, [Edge(0, 1, 1, 0)])
    with pytest.raises(ValueError, match="wtp"):
        WeightedDigraph(2, [Edge(0, 1, 1, -3)])
    with pytest.raises(ValueError):
        WeightedDigraph(2, [Edge(0, 1, 1), Edge(0, 1, 2)])  # duplicate pair
    with pytest.raises(ValueError, match="labels"):
        WeightedDigraph(2, [Edge(0, 1, 1)], labels=["a"])


def test_from_edges_dedups_keeping_minimum():
    with pytest.warns(UserWarning):
        g = WeightedDigraph.from_edges(2, [(0, 1, 5), (0, 1, 2), (0, 1, 7)])
    assert g.m == 1
    assert g.edges[0].wt == 2


def test_basic_accessors(five_chain):
    g = five_chain
    assert g.n == 5 and g.m == 5
    assert g.max_abs_weight() == 3
    assert g.max_wtp() == 1
    assert g.label_id("w") == 2
    with pytest.raises(KeyError):
        g.label_id("nope")
    assert [e.dst for e in g.edges if e.src == 1] == [2]
    assert [g.edges[i].dst for i in g.out[1]] == [2]
    assert sorted(g.edges[i].src for i in g.inc[1]) == [0, 4]
    assert g.edges[g.edge_index[(2, 3)]].wt == 3


def test_negated_and_unit_wtp(ratio_pair):
    neg = ratio_pair.negated()
    assert [e.wt for e in neg.edges] == [-1, -2]
    assert [e.wtp for e in neg.edges] == [1, 1]
    unit = ratio_pair.with_unit_wtp()
    assert all(e.wtp == 1 for e in unit.edges)
    # originals untouched
    assert [e.wt for e in ratio_pair.edges] == [1, 2]


def test_dimacs_round_trip(five_chain):
    text = to_dimacs(five_chain)
    back = parse_graph(text, "dimacs")
    assert back.n == five_chain.n
    assert [(e.src, e.dst, e.wt, e.wtp) for e in back.edges] == [
        (e.src, e.dst, e.wt, e.wtp) for e in five_chain.edges
    ]


def test_dimacs_round_trip_with_wtp(ratio_pair):
    back = parse_graph(to_dimacs(ratio_pair), "dimacs")
    assert [(e.wt, e.wtp) for e in back.edges] == [(1, 1), (2, 1)]


def test_edgelist_round_trip(two_gadget):
    text = to_edgelist(two_gadget)
    back = parse_graph(text, "edgelist")
    assert back.n == two_gadget.n
    assert [(e.src, e.dst, e.wt) for e in back.edges] == [
        (e.src, e.dst, e.wt) for e in two_gadget.edges
    ]


def test_parse_dot_subset():
    g = parse_graph('digraph { a -> b [label="3"]; b -> a [label=-1]; }', "dot")
    assert g.n == 2 and g.m == 2
    assert sorted(e.wt for e in g.edges) == [-1, 3]
    assert g.labels == ["a", "b"]


def test_parse_errors_carry_line_numbers():
    with pytest.raises(ParseError) as exc:
        parse_graph("p mrc 2 1\na 1\n", "dimacs")
    assert exc.value.line == 2
    with pytest.raises(ParseError):
        parse_graph("a 1 2 3\n", "dimacs")  # missing problem line
    with pytest.raises(ParseError) as exc:
        parse_graph("0 1 not_an_int\n", "edgelist")
    assert exc.value.line == 1


def test_parse_any_sniffs_all_three_formats(five_chain):
    assert parse_any(to_dimacs(five_chain)).m == 5
    assert parse_any(to_edgelist(five_chain)).m == 5
    assert parse_any('digraph { x -> y [label="1"]; }').m == 1


def test_self_loop_is_parsed_and_counted():
    g = parse_graph("p mrc 2 2\na 1 1 -4\na 1 2 1\n", "dimacs")
    assert any(e.src == e.dst for e in g.edges)
    scc = tarjan_scc(g)
    loop_comp = scc.comp_of[0]
    assert component_has_cycle(g, scc, loop_comp)


def _reachability(g: WeightedDigraph) -> list[list[bool]]:
    reach = [[False] * g.n for _ in range(g.n)]
    for u in range(g.n):
        reach[u][u] = True
    for e in g.edges:
        reach[e.src][e.dst] = True
    for k in range(g.n):
        for i in range(g.n):
            if reach[i][k]:
                row_k = reach[k]
                row_i = reach[i]
                for j in range(g.n):
                    if row_k[j]:
                        row_i[j] = True
    return reach


def test_tarjan_matches_mutual_reachability():
    for seed in range(80):
        g = small_random(seed)
        scc = tarjan_scc(g)
        reach = _reachability(g)
        for u in range(g.n):
            for v in range(g.n):
                same = scc.comp_of[u] == scc.comp_of[v]
                assert same == (reach[u][v] and reach[v][u]), (seed, u, v)


def test_condensation_is_acyclic_and_consistent():
    for seed in range(40):
        g = small_random(seed)
        scc = tarjan_scc(g)
        k = len(scc.components)
        for ci, members in enumerate(scc.components):
            for u in members:
                assert scc.comp_of[u] == ci
        # DFS for a cycle in the condensation (a set of (a, b) pairs)
        adj = [[] for _ in range(k)]
        for (a, b) in scc.condensation:
            assert a != b
            adj[a].append(b)
        color = [0] * k
        def dfs(c: int) -> bool:
            color[c] = 1
            for d in adj[c]:
                if color[d] == 1 or (color[d] == 0 and dfs(d)):
                    return True
            color[c] = 2
            return False
        assert not any(dfs(c) for c in range(k) if color[c] == 0), seed


def test_propagate_component_values_takes_reachable_minimum():
    # a -> b -> c, singleton components with values 3, 1, 2
    g = WeightedDigraph.from_edges(3, [(0, 1, 0), (1, 2, 0)])
    scc = tarjan_scc(g)
    per = [0] * 3
    for ci, comp in enumerate(scc.components):
        per[ci] = {0: 3, 1: 1, 2: 2}[comp[0]]
    vals = propagate_component_values(g, scc, per)
    assert vals == [1, 1, 2]


def test_propagate_handles_inf_components():
    g = WeightedDigraph.from_edges(3, [(0, 1, 0), (1, 2, 5), (2, 1, -5)])
    scc = tarjan_scc(g)
    per = []
    for ci, comp in enumerate(scc.components):
        per.append(INF if not component_has_cycle(g, scc, ci) else 0)
    vals = propagate_component_values(g, scc, per)
    assert vals == [0, 0, 0]  # node 0 reaches the cycle


def test_induced_subgraph_remaps_edges():
    g = WeightedDigraph.from_edges(5, [(0, 1, 1), (1, 4, 2), (4, 0, 3), (2, 3, 9)])
    sub, old = induced_subgraph(g, [0, 1, 4])
    assert sub.n == 3 and sub.m == 3
    assert sorted(old) == [0, 1, 4]
    back = {(old[e.src], old[e.dst]): e.wt for e in sub.edges}
    assert back == {(0, 1): 1, (1, 4): 2, (4, 0): 3}


def test_induced_subgraph_keeps_labels(five_chain):
    sub, old = induced_subgraph(five_chain, [1, 2])
    assert sorted(sub.labels) == ["v", "w"]


def test_large_parse_is_strict_about_header_count():
    with pytest.raises(ParseError):
        parse_graph("p mrc 3 2\na 1 2 0\n", "dimacs")  # promised 2 arcs, gave 1
