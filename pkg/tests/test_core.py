import pytest
from pydantic import ValidationError

from netlap.core import (
    SignedGraph,
    coalesce,
    complete_graph,
    complete_join_neg,
    cycle_graph,
    delete_edge,
    disjoint_union,
    generate,
    induced_subgraph,
    negate,
    negative_count,
    net_degree,
    net_laplacian,
    path_graph,
    positive_count,
    random_cactus,
    random_signed,
    random_tree,
    random_unicyclic,
    sign_of,
    star_graph,
    theta_graph,
    to_dot,
)
from netlap.errors import InputError
from netlap.structure import cactus_cycles, is_cactus, is_connected


def test_edges_are_canonical():
    g = SignedGraph(n=3, edges=[[2, 0, 1], [1, 0, -1]])
    assert g.edges == ((0, 1, -1), (0, 2, 1))
    assert g.m == 2


def test_json_is_byte_stable():
    g = SignedGraph(n=3, edges=[(0, 2, 1), (1, 0, -1)])
    text = g.to_json()
    assert text == '{"edges": [[0, 1, -1], [0, 2, 1]], "n": 3}'
    assert SignedGraph.from_json(text) == g
    assert SignedGraph.from_json(text).to_json() == text


@pytest.mark.parametrize(
    "edges",
    [
        [(0, 0, 1)],
        [(0, 1, 0)],
        [(0, 1, 1), (1, 0, -1)],
        [(0, 5, 1)],
        [(-1, 1, 1)],
        [(0, 1, True)],
        [(0, 1)],
        "01+",
    ],
)
def test_malformed_graphs_are_rejected(edges):
    with pytest.raises(ValidationError):
        SignedGraph(n=3, edges=edges)


def test_net_degree_counts_signs():
    g = star_graph([1, 1, -1])
    assert net_degree(g, 0) == 1
    assert net_degree(g, 3) == -1
    with pytest.raises(InputError):
        net_degree(g, 4)


def test_net_laplacian_of_triangle(triangle):
    L = net_laplacian(triangle)
    assert L.entries == ((2, -1, -1), (-1, 2, -1), (-1, -1, 2))
    assert L.row_sums() == [0, 0, 0]


def test_net_laplacian_rows_sum_to_zero():
    for seed in range(20):
        L = net_laplacian(random_signed(7, seed=seed))
        assert L.is_symmetric()
        assert L.row_sums() == [0] * 7


def test_negation_flips_the_laplacian(bowtie):
    assert net_laplacian(negate(bowtie)) == -net_laplacian(bowtie)
    assert negate(negate(bowtie)) == bowtie


def test_delete_edge_keeps_vertices(triangle):
    h = delete_edge(triangle, 1)
    assert h.n == 3
    assert h.edges == ((0, 1, 1), (1, 2, 1))
    with pytest.raises(InputError):
        delete_edge(triangle, 3)


def test_induced_subgraph_relabels_monotonically(bowtie):
    sub, label = induced_subgraph(bowtie, [0, 3, 4])
    assert label == {0: 0, 3: 1, 4: 2}
    assert sub.n == 3
    assert all(u < v for u, v, _ in sub.edges)


def test_disjoint_union_and_coalescence(triangle, balanced_c4):
    union = disjoint_union(triangle, balanced_c4)
    assert (union.n, union.m) == (7, 7)
    assert not is_connected(union)
    joined = coalesce(triangle, 2, balanced_c4, 1)
    assert (joined.n, joined.m) == (6, 7)
    assert is_connected(joined)


def test_complete_join_neg_has_net_degree_minus_one():
    for k in range(1, 5):
        g = complete_join_neg(k)
        assert g.n == 2 * k
        assert g.m == k * (2 * k - 1)
        assert all(net_degree(g, v) == -1 for v in range(g.n))
    with pytest.raises(InputError):
        complete_join_neg(0)


def test_sign_counts():
    g = cycle_graph([1, -1, -1, 1, 1])
    assert positive_count(g) == 3
    assert negative_count(g) == 2
    assert sign_of(g) == 1
    assert sign_of(g, [g.edge_index(1, 2)]) == -1


def test_random_trees_are_deterministic_trees():
    for seed in range(10):
        t = random_tree(9, seed=seed)
        assert t == random_tree(9, seed=seed)
        assert t.m == 8
        assert is_connected(t)


def test_random_unicyclic_has_one_cycle():
    g = random_unicyclic(8, 5, seed=3)
    assert g.m == g.n == 8
    (cycle,) = cactus_cycles(g)
    assert cycle.length == 5
    with pytest.raises(InputError):
        random_unicyclic(4, 5)


@pytest.mark.parametrize("profile", ["unbalanced", "balanced", "mixed", "random"])
def test_random_cactus_profiles(profile):
    for seed in range(10):
        g = random_cactus(20, 3, seed=seed, profile=profile)
        assert is_connected(g)
        assert is_cactus(g)
        cycles = cactus_cycles(g)
        assert len(cycles) == 3
        balanced = [c.balanced_count for c in cycles]
        if profile == "unbalanced":
            assert not any(balanced)
        elif profile == "balanced":
            assert all(balanced)
        elif profile == "mixed":
            assert any(balanced) and not all(balanced)


def test_random_cactus_rejects_infeasible_requests():
    with pytest.raises(InputError):
        random_cactus(5, 3, profile="balanced")
    with pytest.raises(InputError):
        random_cactus(10, 1, profile="mixed")
    with pytest.raises(InputError):
        random_cactus(10, 1, profile="sideways")


def test_theta_graph_shape(theta222):
    assert (theta222.n, theta222.m) == (5, 6)
    assert not is_cactus(theta222)
    g = theta_graph(1, 3, 3, [[1], [-1, 1, -1], [1, -1, -1]])
    assert (g.n, g.m) == (6, 7)
    with pytest.raises(InputError):
        theta_graph(1, 1, 3)
    with pytest.raises(InputError):
        theta_graph(2, 2, 2, [[1, 1], [1], [1, 1]])


def test_generate_dispatches_and_aliases():
    assert generate("tree", {"n": 6}, seed=1) == random_tree(6, seed=1)
    assert generate("join", {"k": 2}) == complete_join_neg(2)
    assert generate("cycle", {"signs": [1, -1, 1]}) == cycle_graph([1, -1, 1])
    with pytest.raises(InputError):
        generate("hypercube")
    with pytest.raises(InputError):
        generate("random_tree", {"size": 4})


def test_to_dot_styles_edges():
    dot = to_dot(SignedGraph(n=3, edges=[(0, 1, 1), (1, 2, 1), (0, 2, -1)]))
    lines = dot.splitlines()
    assert lines[0] == "graph signed {"
    assert sum(1 for line in lines if line.strip().endswith(";") and "--" not in line) == 3
    assert sum("style=solid" in line for line in lines) == 2
    assert sum("style=dashed" in line for line in lines) == 1


def test_path_and_complete_constructors():
    assert path_graph([1, -1]).edges == ((0, 1, 1), (1, 2, -1))
    assert complete_graph(4, -1).m == 6
