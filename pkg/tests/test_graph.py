import random
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import brute_isomorphic
from tfs.errors import DuplicateEdge, EdgeNotPresent, IndexOutOfRange, NotATree, NotTrimContractible, ParseError, SelfLoop
from tfs.graph import (
    build_graph,
    canonical_code,
    contract_trim_edge,
    cycle_graph,
    double_star,
    is_tree,
    parse_edge_lists,
    path_graph,
    relabel,
    spider,
    star_graph,
    stats,
    subdivide_edge,
    to_dot,
    to_edge_list,
    tree_isomorphism,
    trim,
    trim_by_contraction,
    write_edge_lists,
)
from tfs.trees import free_trees, trees_up_to


def test_build_graph_basics():
    p2 = build_graph(2, [(0, 1)])
    assert (p2.n, p2.m) == (2, 1)
    k13 = build_graph(4, [(0, 1), (0, 2), (0, 3)])
    assert k13.degrees == (3, 1, 1, 1)
    assert k13.adj[0] == (1, 2, 3)


@pytest.mark.parametrize(
    "order, edges, exc",
    [
        (3, [(0, 0)], SelfLoop),
        (3, [(0, 3)], IndexOutOfRange),
        (3, [(-1, 2)], IndexOutOfRange),
        (3, [(0, 1), (1, 0)], DuplicateEdge),
    ],
)
def test_build_graph_rejects(order, edges, exc):
    with pytest.raises(exc):
        build_graph(order, edges)


def test_stats_path_and_star():
    s = stats(path_graph(3))
    assert (s.max_degree, s.min_degree, s.leaf_count, s.diameter) == (2, 1, 2, 2)
    s = stats(star_graph(3))
    assert s.strong_supports == {0}
    assert s.leaf_count == 3


def test_stats_double_star():
    s = stats(double_star(2, 2))
    assert s.strong_supports == {0, 1}
    assert s.leaf_count == 4
    assert s.diameter == 3


def test_stats_disconnected_diameter_absent():
    g = build_graph(4, [(0, 1), (2, 3)])
    assert stats(g).diameter is None


def test_is_tree():
    assert is_tree(path_graph(5))
    assert not is_tree(cycle_graph(4))
    assert not is_tree(build_graph(4, [(0, 1), (2, 3)]))


def test_subdivide_edge():
    p2 = path_graph(2)
    assert brute_isomorphic(subdivide_edge(p2, (0, 1), 1), path_graph(3))
    assert brute_isomorphic(subdivide_edge(p2, (0, 1), 3), path_graph(5))
    assert subdivide_edge(p2, (0, 1), 0).edges == p2.edges
    g = subdivide_edge(star_graph(3), (0, 1), 2)
    # spider with legs 3, 1, 1: degrees 3, 2, 2 and three leaves
    assert sorted(g.degrees, reverse=True) == [3, 2, 2, 1, 1, 1]
    assert brute_isomorphic(g, spider([3, 1, 1]))
    with pytest.raises(EdgeNotPresent):
        subdivide_edge(p2, (0, 2), 1)


def test_contract_trim_edge():
    assert brute_isomorphic(contract_trim_edge(path_graph(3), (0, 1)), path_graph(2))
    assert brute_isomorphic(contract_trim_edge(path_graph(4), (1, 2)), path_graph(3))
    for e in star_graph(3).edges:
        with pytest.raises(NotTrimContractible):
            contract_trim_edge(star_graph(3), e)


def test_trim_examples():
    assert trim(path_graph(9)).edges == ((0, 1),)
    assert brute_isomorphic(trim(spider([2, 2, 2])), star_graph(3))
    s22 = double_star(2, 2)
    assert trim(s22).edges == s22.edges
    with pytest.raises(NotATree):
        trim(cycle_graph(5))


def test_trim_keeps_one_vertex_between_branches():
    # two K_{1,3}-like branch vertices joined by a thread of 4 internal vertices
    g = build_graph(10, [(0, 1), (0, 2), (0, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (7, 9)])
    r = trim(g)
    assert r.n == 7
    assert sorted(r.degrees) == [1, 1, 1, 1, 2, 3, 3]


def test_trim_matches_contraction_definition_and_is_idempotent():
    for t in trees_up_to(11, 2):
        fast = trim(t)
        assert canonical_code(fast) == canonical_code(trim_by_contraction(t))
        assert canonical_code(trim(fast)) == canonical_code(fast)
        assert stats(fast).leaf_count == stats(t).leaf_count
        if max(fast.degrees) >= 3:
            assert all(max(fast.degree(u), fast.degree(v)) >= 3 for u, v in fast.edges)


def test_trim_independent_of_contraction_order():
    rng = random.Random(7)
    for t in trees_up_to(10, 4):
        codes = set()
        for _ in range(4):
            order = [rng.random() for _ in range(t.m)]
            codes.add(canonical_code(trim_by_contraction(t, order)))
        assert codes == {canonical_code(trim(t))}


def test_canonical_code_examples():
    p4 = path_graph(4)
    p4b = build_graph(4, [(2, 0), (0, 3), (3, 1)])
    assert canonical_code(p4) == canonical_code(p4b)
    assert canonical_code(p4) != canonical_code(star_graph(3))
    assert canonical_code(double_star(2, 2)) != canonical_code(path_graph(6))
    with pytest.raises(NotATree):
        canonical_code(cycle_graph(4))


def test_canonical_code_agrees_with_brute_force_isomorphism():
    # labeled copies so equal-code pairs are not trivially identical
    rng = random.Random(3)
    trees = []
    for t in trees_up_to(7, 1):
        perm = list(range(t.n))
        rng.shuffle(perm)
        trees.append(t)
        trees.append(relabel(t, perm))
    for a, b in combinations(trees, 2):
        assert (canonical_code(a) == canonical_code(b)) == brute_isomorphic(a, b)


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=2, max_value=12), st.integers(min_value=0, max_value=10**6), st.randoms())
def test_tree_isomorphism_maps_edges(n, idx, rnd):
    trees = list(free_trees(n))
    t = trees[idx % len(trees)]
    perm = list(range(n))
    rnd.shuffle(perm)
    u = relabel(t, perm)
    iso = tree_isomorphism(t, u)
    assert iso is not None
    assert {tuple(sorted((iso[a], iso[b]))) for a, b in t.edges} == set(u.edges)


def test_edge_list_round_trip():
    graphs = [path_graph(4), star_graph(3), double_star(2, 2)]
    text = write_edge_lists(graphs)
    back = parse_edge_lists(text)
    assert [g.edges for g in back] == [g.edges for g in graphs]
    assert to_edge_list(path_graph(3)) == "3 2\n0 1\n1 2\n"


def test_edge_list_output_is_sorted():
    g = build_graph(3, [(2, 1), (1, 0)])
    assert to_edge_list(g) == "3 2\n0 1\n1 2\n"


@pytest.mark.parametrize("text", ["3 x\n", "3 2\n0 1\n", "2 1\n0 0\n", "2 1\n0 1 2\n", "2 1\n0 1\n1 0\n"])
def test_edge_list_parse_errors(text):
    with pytest.raises(ParseError):
        parse_edge_lists(text)


def test_dot_export_deterministic():
    dot = to_dot(build_graph(3, [(2, 1), (0, 1)]), highlight=[1])
    assert dot.splitlines()[-3:] == ["  0 -- 1;", "  1 -- 2;", "}"]
    assert "1 [style=filled" in dot
