import pytest

from netlap.core import SignedGraph, coalesce, complete_graph, cycle_graph, path_graph, random_cactus, random_tree
from netlap.errors import InputError
from netlap.structure import (
    block_decomposition,
    cactus_cycles,
    component_graphs,
    connected_components,
    cut_edges,
    cut_vertices,
    cyclomatic_number,
    is_cactus,
    is_connected,
    prune_pendant_trees,
    shared_edge_block,
    spanning_tree_edges,
    split_at_cut_vertex,
)


def test_components_of_a_forest_with_isolated_vertex():
    g = SignedGraph(n=5, edges=[(0, 1, 1), (3, 4, -1)])
    assert connected_components(g) == [[0, 1], [2], [3, 4]]
    assert not is_connected(g)
    parts = component_graphs(g)
    assert [p.n for p, _ in parts] == [2, 1, 2]
    assert parts[2][1] == {3: 0, 4: 1}


def test_empty_graph_is_not_connected():
    assert not is_connected(SignedGraph(n=0))
    assert is_connected(SignedGraph(n=1))


def test_bowtie_blocks(bowtie):
    d = block_decomposition(bowtie)
    assert len(d.blocks) == 2
    assert d.cut_vertices == (0,)
    assert all(b.is_cycle for b in d.blocks)
    assert sorted(i for i, _ in d.tree) == [0, 1]
    assert cut_vertices(bowtie) == [0]
    assert cut_edges(bowtie) == []


def test_bridges_of_a_path():
    g = path_graph([1, -1, 1])
    assert cut_edges(g) == [0, 1, 2]
    assert cut_vertices(g) == [1, 2]
    assert all(b.is_bridge for b in block_decomposition(g).blocks)


def test_cyclomatic_number(theta222, bowtie):
    assert cyclomatic_number(theta222) == 2
    assert cyclomatic_number(bowtie) == 2
    assert cyclomatic_number(complete_graph(5)) == 6
    with pytest.raises(InputError):
        cyclomatic_number(SignedGraph(n=2))


def test_cactus_recognition(theta222, bowtie):
    assert is_cactus(bowtie)
    assert not is_cactus(theta222)
    block = shared_edge_block(theta222)
    assert block is not None
    assert block.vertices == (0, 1, 2, 3, 4)
    assert len(block.edges) == 6
    assert is_cactus(random_tree(6, seed=2))


def test_cactus_cycles_walk_from_the_smallest_vertex():
    (cycle,) = cactus_cycles(cycle_graph([1, 1, -1, -1]))
    assert cycle.vertices == (0, 1, 2, 3)
    assert (cycle.m_plus, cycle.m_minus) == (2, 2)
    assert cycle.balanced_count
    assert cycle.length == 4


def test_cactus_cycles_reject_shared_edges(theta222):
    with pytest.raises(InputError, match="not a cactus"):
        cactus_cycles(theta222)


def test_pruning_keeps_the_two_core(bowtie):
    g = coalesce(bowtie, 4, path_graph([1, -1, -1]), 0)
    pruned = prune_pendant_trees(g)
    assert (pruned.n, pruned.m) == (bowtie.n, bowtie.m)


def test_pruning_a_tree_leaves_one_vertex():
    assert prune_pendant_trees(random_tree(7, seed=1)) == SignedGraph(n=1)


def test_split_at_cut_vertex_rebuilds_the_graph(bowtie):
    g1, u, g2, v = split_at_cut_vertex(bowtie, 0)
    assert g1.n + g2.n - 1 == bowtie.n
    assert g1.m + g2.m == bowtie.m
    assert coalesce(g1, u, g2, v).m == bowtie.m
    with pytest.raises(InputError):
        split_at_cut_vertex(bowtie, 1)


def test_spanning_tree_edges():
    for seed in range(10):
        g = random_cactus(12, 3, seed=seed)
        tree = spanning_tree_edges(g)
        assert len(tree) == g.n - 1
        assert len(set(tree)) == len(tree)
