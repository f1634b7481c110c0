import pytest

from netlap.core import SignedGraph, coalesce, complete_graph, complete_join_neg, cycle_graph, theta_graph


@pytest.fixture
def triangle() -> SignedGraph:
    return complete_graph(3)


@pytest.fixture
def balanced_c4() -> SignedGraph:
    return cycle_graph([1, 1, -1, -1])


@pytest.fixture
def unbalanced_c4() -> SignedGraph:
    return cycle_graph([1, 1, 1, -1])


@pytest.fixture
def bowtie() -> SignedGraph:
    """Unbalanced triangle and balanced C4 sharing vertex 0."""
    return coalesce(cycle_graph([1, -1, 1]), 0, cycle_graph([1, 1, -1, -1]), 0)


@pytest.fixture
def join2() -> SignedGraph:
    return complete_join_neg(2)


@pytest.fixture
def theta222() -> SignedGraph:
    return theta_graph(2, 2, 2)


@pytest.fixture
def graph_file(tmp_path):
    def write(g: SignedGraph, name: str = "graph.json") -> str:
        path = tmp_path / name
        path.write_text(g.to_json())
        return str(path)

    return write
