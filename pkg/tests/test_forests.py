import pytest

from netlap.core import (
    SignedGraph,
    complete_graph,
    cycle_graph,
    net_laplacian,
    random_cactus,
    random_signed,
    random_tree,
)
from netlap.errors import CapExceededError, InputError
from netlap.exactalg import char_poly, nullity
from netlap.forests import (
    c1_tree_sum,
    coefficient_via_forests,
    forest_char_poly,
    spanning_k_forests,
    spanning_tree_count,
)


def test_triangle_forests(triangle):
    assert forest_char_poly(triangle) == [0, 9, -6, 1]
    trees = list(spanning_k_forests(triangle, 1))
    assert len(trees) == 3
    assert all(f.weight == 3 and f.component_sizes == (3,) for f in trees)
    assert len(list(spanning_k_forests(triangle, 3))) == 1


def test_forests_stream_in_lexicographic_order(bowtie):
    refs = [f.edges for f in spanning_k_forests(bowtie, 2)]
    assert refs == sorted(refs)
    assert all(len(r) == bowtie.n - 2 for r in refs)


def test_single_negative_edge():
    g = SignedGraph(n=2, edges=[(0, 1, -1)])
    assert forest_char_poly(g) == [0, 2, 1]


@pytest.mark.parametrize("n", range(1, 8))
def test_cayley_counts(n):
    assert spanning_tree_count(complete_graph(n)) == n ** (n - 2)


def test_c1_of_the_unbalanced_c4(unbalanced_c4):
    result = c1_tree_sum(unbalanced_c4)
    assert result.sign_sum == -2
    assert result.c1 == 8
    assert result.connected


def test_c1_vanishes_on_the_balanced_c4(balanced_c4):
    result = c1_tree_sum(balanced_c4)
    assert result.sign_sum == 0
    assert result.c1 == 0
    assert result.connected


def test_c1_of_a_disconnected_graph():
    result = c1_tree_sum(SignedGraph(n=3, edges=[(0, 1, 1)]))
    assert result.c1 == 0
    assert not result.connected


def test_k_zero_coefficient():
    assert coefficient_via_forests(SignedGraph(n=0), 0) == 1
    assert coefficient_via_forests(complete_graph(3), 0) == 0


def test_cap_and_range_are_enforced(triangle):
    with pytest.raises(CapExceededError):
        forest_char_poly(triangle, cap=2)
    with pytest.raises(InputError):
        coefficient_via_forests(triangle, 4)
    with pytest.raises(InputError):
        list(spanning_k_forests(triangle, -1))


def _corpus():
    for seed in range(500):
        n = 2 + seed % 7
        yield random_signed(n, seed=seed, edge_prob=0.6)
    for seed in range(20):
        yield random_tree(8, seed=seed)
        yield random_cactus(8, 2, seed=seed, max_cycle_length=4)
    for signs in ([1, 1, -1, -1], [1, -1, 1, -1, 1], [-1, -1, -1]):
        yield cycle_graph(signs)


def test_forest_sums_match_the_exact_char_poly():
    for g in _corpus():
        assert forest_char_poly(g) == list(char_poly(net_laplacian(g)).coeffs), g.to_json()


def test_c1_criterion_on_connected_graphs():
    for seed in range(200):
        g = random_signed(6, seed=seed, edge_prob=0.7)
        result = c1_tree_sum(g)
        if not result.connected:
            continue
        assert (nullity(g) == 1) == (result.c1 != 0), g.to_json()
