"""
Structural analysis of the underlying graph: components, bridges, cut
vertices, blocks, cyclomatic number and cactus recognition.
"""

import networkx as nx
from pydantic import BaseModel, ConfigDict, Field

from netlap.core import SignedGraph, induced_subgraph
from netlap.errors import InputError


class Block(BaseModel):
    model_config = ConfigDict(frozen=True)

    vertices: tuple[int, ...]
    edges: tuple[int, ...] = Field(description="edge references")

    @property
    def is_bridge(self) -> bool:
        return len(self.edges) == 1

    @property
    def is_cycle(self) -> bool:
        # a 2-connected block with as many edges as vertices is a cycle
        return len(self.edges) >= 3 and len(self.edges) == len(self.vertices)


class BlockDecomposition(BaseModel):
    model_config = ConfigDict(frozen=True)

    blocks: tuple[Block, ...]
    cut_vertices: tuple[int, ...]
    tree: tuple[tuple[int, int], ...] = Field(
        description="block-cut tree as (block index, cut vertex) incidences"
    )


class CycleInfo(BaseModel):
    model_config = ConfigDict(frozen=True)

    vertices: tuple[int, ...] = Field(description="starts at the smallest vertex")
    edges: tuple[int, ...] = Field(description="edge references in walking order")
    m_plus: int
    m_minus: int

    @property
    def length(self) -> int:
        return len(self.edges)

    @property
    def balanced_count(self) -> bool:
        return self.m_plus == self.m_minus


def to_networkx(g: SignedGraph) -> nx.Graph:
    G = nx.Graph()
    G.add_nodes_from(range(g.n))
    for i, (u, v, s) in enumerate(g.edges):
        G.add_edge(u, v, sign=s, ref=i)
    return G


def connected_components(g: SignedGraph) -> list[list[int]]:
    components = [sorted(c) for c in nx.connected_components(to_networkx(g))]
    return sorted(components, key=lambda c: c[0])


def is_connected(g: SignedGraph) -> bool:
    return g.n > 0 and len(connected_components(g)) == 1


def component_graphs(g: SignedGraph) -> list[tuple[SignedGraph, dict[int, int]]]:
    return [induced_subgraph(g, c) for c in connected_components(g)]


def _require_connected(g: SignedGraph, operation: str) -> None:
    if not is_connected(g):
        raise InputError(f"{operation} needs a connected graph")


def cut_edges(g: SignedGraph) -> list[int]:
    G = to_networkx(g)
    return sorted(G.edges[u, v]["ref"] for u, v in nx.bridges(G))


def cut_vertices(g: SignedGraph) -> list[int]:
    return sorted(nx.articulation_points(to_networkx(g)))


def block_decomposition(g: SignedGraph) -> BlockDecomposition:
    _require_connected(g, "block_decomposition")
    G = to_networkx(g)
    blocks = []
    for component in nx.biconnected_component_edges(G):
        refs = tuple(sorted(G.edges[u, v]["ref"] for u, v in component))
        vertices = tuple(sorted({x for edge in component for x in edge}))
        blocks.append(Block(vertices=vertices, edges=refs))
    blocks.sort(key=lambda b: b.edges[0])
    cuts = tuple(sorted(nx.articulation_points(G)))
    cut_set = set(cuts)
    tree = tuple((i, w) for i, block in enumerate(blocks) for w in block.vertices if w in cut_set)
    return BlockDecomposition(blocks=tuple(blocks), cut_vertices=cuts, tree=tree)


def cyclomatic_number(g: SignedGraph) -> int:
    """beta = |E| - |V| + 1 of a connected graph."""
    _require_connected(g, "cyclomatic_number")
    return g.m - g.n + 1


def shared_edge_block(g: SignedGraph) -> Block | None:
    """First block that is neither a bridge nor a cycle, or None for a cactus."""
    for block in block_decomposition(g).blocks:
        if not (block.is_bridge or block.is_cycle):
            return block
    return None


def is_cactus(g: SignedGraph) -> bool:
    _require_connected(g, "is_cactus")
    return shared_edge_block(g) is None


def _walk_cycle(g: SignedGraph, block: Block) -> CycleInfo:
    adjacency: dict[int, list[tuple[int, int]]] = {v: [] for v in block.vertices}
    for ref in block.edges:
        u, v, _ = g.edges[ref]
        adjacency[u].append((v, ref))
        adjacency[v].append((u, ref))
    start = min(block.vertices)
    order = [start]
    refs = []
    current = start
    # head toward the smaller neighbour first
    nxt, ref = min(adjacency[start])
    while True:
        refs.append(ref)
        previous, current = current, nxt
        if current == start:
            break
        order.append(current)
        nxt, ref = next((w, r) for w, r in adjacency[current] if w != previous)
    signs = [g.edges[r][2] for r in refs]
    return CycleInfo(
        vertices=tuple(order),
        edges=tuple(refs),
        m_plus=sum(1 for s in signs if s > 0),
        m_minus=sum(1 for s in signs if s < 0),
    )


def cactus_cycles(g: SignedGraph) -> list[CycleInfo]:
    _require_connected(g, "cactus_cycles")
    decomposition = block_decomposition(g)
    cycles = []
    for block in decomposition.blocks:
        if block.is_bridge:
            continue
        if not block.is_cycle:
            raise InputError(
                f"not a cactus: block on vertices {list(block.vertices)} has "
                f"{len(block.edges)} edges, cycles share an edge"
            )
        cycles.append(_walk_cycle(g, block))
    return cycles


def prune_pendant_trees(g: SignedGraph) -> SignedGraph:
    """
    Strip pendant trees by repeatedly deleting degree-1 vertices. A tree
    collapses to its smallest vertex rather than to the empty graph.
    """
    _require_connected(g, "prune_pendant_trees")
    if g.m == g.n - 1:
        return SignedGraph(n=1)
    core = nx.k_core(to_networkx(g), 2)
    pruned, _ = induced_subgraph(g, core.nodes)
    return pruned


def split_at_cut_vertex(g: SignedGraph, w: int) -> tuple[SignedGraph, int, SignedGraph, int]:
    """
    Write g as a coalescence g1 . g2 at w: g1 is w plus the branch of g - w
    holding w's smallest neighbour, g2 is w plus everything else. Returns
    (g1, u, g2, v) with u, v the images of w.
    """
    if w not in cut_vertices(g):
        raise InputError(f"vertex {w} is not a cut vertex")
    G = to_networkx(g)
    G.remove_node(w)
    anchor = min(x for x, _ in g.neighbors()[w])
    branch = nx.node_connected_component(G, anchor)
    g1, label1 = induced_subgraph(g, branch | {w})
    g2, label2 = induced_subgraph(g, set(range(g.n)) - branch)
    return g1, label1[w], g2, label2[w]


def spanning_tree_edges(g: SignedGraph) -> list[int]:
    """Edge references of a BFS spanning forest, rooted at the smallest vertex of each component."""
    G = to_networkx(g)
    refs = []
    for component in connected_components(g):
        refs.extend(G.edges[u, v]["ref"] for u, v in nx.bfs_edges(G, component[0]))
    return sorted(refs)
