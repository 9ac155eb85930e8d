from itertools import combinations

import pytest

from conftest import brute_closure, brute_min
from tfs.errors import Disconnected, NotATree, TooLarge
from tfs.families import gap_tree
from tfs.forcing import is_total_forcing_set, validate_certificate
from tfs.graph import (
    build_graph,
    complete_graph,
    cycle_graph,
    double_star,
    path_graph,
    star_graph,
    stats,
    subdivide_edge,
    trim,
)
from tfs.solvers import (
    all_minimum_tf_sets,
    forcing_number,
    mandatory_tf_vertices,
    total_forcing_number,
    total_forcing_number_exhaustive,
    tree_forcing_oracle,
)
from tfs.trees import free_trees, trees_up_to


def _brute_all_min_tf(g):
    best, found = None, []
    for k in range(1, g.n + 1):
        for s in combinations(range(g.n), k):
            if any(not any(w in s for w in g.adj[v]) for v in s):
                continue
            if len(brute_closure(g, s)) == g.n:
                found.append(frozenset(s))
        if found:
            return found
    return found


@pytest.mark.parametrize("n", range(2, 11))
def test_paths(n):
    assert forcing_number(path_graph(n)).value == 1
    assert total_forcing_number(path_graph(n)).value == 2


@pytest.mark.parametrize("leaves", range(2, 8))
def test_stars(leaves):
    g = star_graph(leaves)
    assert total_forcing_number(g).value == leaves
    assert forcing_number(g).value == leaves - 1


def test_star_forcing_number_n_minus_2():
    for n in range(4, 10):
        assert forcing_number(star_graph(n - 1)).value == n - 2


def test_double_star_and_two_stars(two_stars):
    assert total_forcing_number(double_star(2, 2)).value == 4
    # (2 * 7 + 1) / 3
    assert total_forcing_number(two_stars).value == 5


def test_gap_tree_small():
    assert forcing_number(gap_tree(3)).value == 3
    assert total_forcing_number(gap_tree(3)).value == 6


@pytest.mark.parametrize("n", range(3, 9))
def test_complete_graphs(n):
    assert total_forcing_number(complete_graph(n)).value == n - 1


def test_cycle_values_match_brute_force():
    for n in range(3, 8):
        g = cycle_graph(n)
        assert forcing_number(g).value == brute_min(g, total=False)
        assert total_forcing_number(g).value == brute_min(g, total=True)


def test_witnesses_validate():
    for t in trees_up_to(9, 2):
        for res in (forcing_number(t), total_forcing_number(t)):
            assert len(res.witness) == res.value
            assert validate_certificate(t, res.witness, res.certificate.sequence)
        assert is_total_forcing_set(t, total_forcing_number(t).witness)


def test_solvers_match_brute_force_on_small_trees():
    for t in trees_up_to(8, 2):
        assert forcing_number(t).value == brute_min(t, total=False)
        ft = brute_min(t, total=True)
        assert total_forcing_number(t).value == ft
        assert total_forcing_number(t, leaf_lower_bound=False, prune=False).value == ft


def test_pruned_and_plain_search_agree():
    for t in trees_up_to(11, 2):
        pruned = total_forcing_number(t, leaf_lower_bound=False).value
        assert pruned == total_forcing_number(t, leaf_lower_bound=False, prune=False).value
        assert pruned == total_forcing_number(t).value


def test_all_minimum_tf_sets_examples():
    assert sorted(map(sorted, all_minimum_tf_sets(path_graph(3)))) == [[0, 1], [1, 2]]
    assert sorted(map(sorted, all_minimum_tf_sets(star_graph(3)))) == [[0, 1, 2], [0, 1, 3], [0, 2, 3]]
    assert all_minimum_tf_sets(path_graph(2)) == [frozenset({0, 1})]
    for t in trees_up_to(7, 2):
        assert set(all_minimum_tf_sets(t)) == set(_brute_all_min_tf(t))


def test_exhaustive_result_carries_all_sets():
    res = total_forcing_number_exhaustive(star_graph(3))
    assert res.value == 3
    assert len(res.exhausted) == 3


def test_mandatory_vertices():
    fixed, optional = mandatory_tf_vertices(double_star(2, 2))
    assert fixed == {0, 1, 3, 5}
    assert optional == {2, 4}


def test_tree_forcing_oracle_examples():
    assert tree_forcing_oracle(path_graph(7)) == 1
    assert tree_forcing_oracle(star_graph(3)) == 2
    assert tree_forcing_oracle(gap_tree(2)) == 2
    with pytest.raises(NotATree):
        tree_forcing_oracle(cycle_graph(4))


def test_tree_forcing_oracle_matches_solver():
    for t in trees_up_to(12, 2):
        assert tree_forcing_oracle(t) == forcing_number(t).value


def test_tree_inequalities_up_to_12():
    for t in trees_up_to(12, 2):
        ft = total_forcing_number(t, leaf_lower_bound=False).value
        f = forcing_number(t).value
        s = stats(t)
        n, delta = t.n, s.max_degree
        assert ft >= f + 1
        assert s.leaf_count <= ft
        assert f <= s.leaf_count - 1
        if n >= 3:
            assert ft * delta <= (delta - 1) * n + 1
            assert ft * (delta + 1) <= delta * n


def test_subdivision_and_trim_invariance():
    for t in trees_up_to(9, 2):
        ft, f = total_forcing_number(t).value, forcing_number(t).value
        r = trim(t)
        assert total_forcing_number(r).value == ft
        assert forcing_number(r).value == f
        for u, v in t.edges:
            if min(t.degree(u), t.degree(v)) <= 2:
                h = subdivide_edge(t, (u, v), 2)
                assert total_forcing_number(h).value == ft
                assert forcing_number(h).value == f


def test_strong_supports_in_every_minimum_set():
    for t in trees_up_to(9, 2):
        s = stats(t)
        for tf in all_minimum_tf_sets(t):
            for v in s.strong_supports:
                assert v in tf
                assert sum(1 for w in t.adj[v] if w in s.leaves and w not in tf) <= 1


def test_errors():
    with pytest.raises(TooLarge):
        forcing_number(path_graph(25))
    with pytest.raises(TooLarge):
        total_forcing_number(path_graph(21))
    with pytest.raises(TooLarge):
        all_minimum_tf_sets(path_graph(13))
    with pytest.raises(Disconnected):
        total_forcing_number(build_graph(4, [(0, 1), (2, 3)]))
    assert forcing_number(path_graph(25), bound=30).value == 1
