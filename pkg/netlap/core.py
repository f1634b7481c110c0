"""
Signed graphs and the matrices the net Laplacian is built from.

A signed graph is a vertex count plus a list of signed edges (u, v, s) with
u < v and s in {-1, +1}. Graphs are immutable and kept in canonical form
(edges sorted lexicographically), so two equal graphs serialize to the same
bytes.
"""

import json
import random
from typing import Callable, Iterable, Sequence

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from netlap.errors import InputError

Edge = tuple[int, int, int]


class SignedGraph(BaseModel):
    model_config = ConfigDict(frozen=True)

    n: int = Field(ge=0, description="number of vertices, labelled 0..n-1")
    edges: tuple[Edge, ...] = Field(
        default=(), description="signed edges (u, v, s), u < v, lexicographically sorted"
    )

    @field_validator("edges", mode="before")
    @classmethod
    def _canonical_order(cls, value):
        if value is None:
            return ()
        if not isinstance(value, (list, tuple)):
            raise ValueError("edges must be a list of [u, v, s] triples")
        canonical = []
        for edge in value:
            if not isinstance(edge, (list, tuple)) or len(edge) != 3:
                raise ValueError(f"edge {edge!r} must be [u, v, s]")
            if not all(isinstance(x, int) and not isinstance(x, bool) for x in edge):
                raise ValueError(f"edge {edge!r} must hold integers")
            u, v, s = edge
            canonical.append((v, u, s) if u > v else (u, v, s))
        return tuple(sorted(canonical))

    @model_validator(mode="after")
    def _check_simple(self) -> "SignedGraph":
        seen: set[tuple[int, int]] = set()
        for u, v, s in self.edges:
            if s not in (-1, 1):
                raise ValueError(f"edge ({u}, {v}) has sign {s}, expected -1 or 1")
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if u < 0 or v >= self.n:
                raise ValueError(f"edge ({u}, {v}) leaves the vertex range 0..{self.n - 1}")
            if (u, v) in seen:
                raise ValueError(f"duplicate edge ({u}, {v})")
            seen.add((u, v))
        return self

    @property
    def m(self) -> int:
        return len(self.edges)

    def neighbors(self) -> list[list[tuple[int, int]]]:
        """Adjacency lists of (neighbour, sign) pairs."""
        adj: list[list[tuple[int, int]]] = [[] for _ in range(self.n)]
        for u, v, s in self.edges:
            adj[u].append((v, s))
            adj[v].append((u, s))
        return adj

    def edge_index(self, u: int, v: int) -> int:
        a, b = min(u, v), max(u, v)
        for i, (x, y, _) in enumerate(self.edges):
            if (x, y) == (a, b):
                return i
        raise InputError(f"no edge between {u} and {v}")

    def to_json(self) -> str:
        return json.dumps(
            {"edges": [list(e) for e in self.edges], "n": self.n}, sort_keys=True
        )

    @classmethod
    def from_json(cls, text: str) -> "SignedGraph":
        return cls.model_validate(json.loads(text))


class IntMatrix(BaseModel):
    """Dense square matrix of Python integers."""

    model_config = ConfigDict(frozen=True)

    entries: tuple[tuple[int, ...], ...] = Field(description="row-major entries")

    @model_validator(mode="after")
    def _check_square(self) -> "IntMatrix":
        order = len(self.entries)
        for row in self.entries:
            if len(row) != order:
                raise ValueError(f"matrix is not square: row of length {len(row)} in order {order}")
        return self

    @property
    def order(self) -> int:
        return len(self.entries)

    def rows(self) -> list[list[int]]:
        return [list(row) for row in self.entries]

    def is_symmetric(self) -> bool:
        n = self.order
        return all(
            self.entries[i][j] == self.entries[j][i] for i in range(n) for j in range(i + 1, n)
        )

    def trace(self) -> int:
        return sum(self.entries[i][i] for i in range(self.order))

    def row_sums(self) -> list[int]:
        return [sum(row) for row in self.entries]

    def __neg__(self) -> "IntMatrix":
        return IntMatrix.model_construct(entries=tuple(tuple(-x for x in row) for row in self.entries))


def _trusted(n: int, edges: Iterable[Edge]) -> SignedGraph:
    # edges already canonical and valid
    return SignedGraph.model_construct(n=n, edges=tuple(edges))


def _check_vertex(g: SignedGraph, v: int) -> None:
    if not 0 <= v < g.n:
        raise InputError(f"vertex {v} out of range 0..{g.n - 1}")


def net_degree(g: SignedGraph, v: int) -> int:
    """d+(v) - d-(v): positive minus negative neighbours."""
    _check_vertex(g, v)
    return sum(s for a, b, s in g.edges if v in (a, b))


def _net_degrees(g: SignedGraph) -> list[int]:
    degrees = [0] * g.n
    for u, v, s in g.edges:
        degrees[u] += s
        degrees[v] += s
    return degrees


def adjacency_matrix(g: SignedGraph) -> IntMatrix:
    rows = [[0] * g.n for _ in range(g.n)]
    for u, v, s in g.edges:
        rows[u][v] = s
        rows[v][u] = s
    return IntMatrix.model_construct(entries=tuple(tuple(r) for r in rows))


def net_laplacian(g: SignedGraph) -> IntMatrix:
    """L = D - A with D the diagonal of net-degrees; rows sum to zero."""
    rows = [[0] * g.n for _ in range(g.n)]
    for u, v, s in g.edges:
        rows[u][v] = -s
        rows[v][u] = -s
        rows[u][u] += s
        rows[v][v] += s
    return IntMatrix.model_construct(entries=tuple(tuple(r) for r in rows))


def negate(g: SignedGraph) -> SignedGraph:
    return _trusted(g.n, ((u, v, -s) for u, v, s in g.edges))


def check_edge(g: SignedGraph, e: int) -> None:
    if not 0 <= e < g.m:
        raise InputError(f"edge reference {e} out of range 0..{g.m - 1}")


def delete_edge(g: SignedGraph, e: int) -> SignedGraph:
    check_edge(g, e)
    return _trusted(g.n, g.edges[:e] + g.edges[e + 1 :])


def delete_edges(g: SignedGraph, refs: Iterable[int]) -> SignedGraph:
    drop = set(refs)
    for e in drop:
        check_edge(g, e)
    return _trusted(g.n, (edge for i, edge in enumerate(g.edges) if i not in drop))


def induced_subgraph(g: SignedGraph, keep: Iterable[int]) -> tuple[SignedGraph, dict[int, int]]:
    """
    Subgraph induced on `keep`, relabelled to 0..|keep|-1 in increasing order.

    Returns the subgraph and the map from original to new labels.
    """
    kept = sorted(set(keep))
    for v in kept:
        _check_vertex(g, v)
    label = {old: new for new, old in enumerate(kept)}
    # monotone relabelling keeps the edge list sorted
    edges = [(label[u], label[v], s) for u, v, s in g.edges if u in label and v in label]
    return _trusted(len(kept), edges), label


def disjoint_union(*graphs: SignedGraph) -> SignedGraph:
    edges: list[Edge] = []
    offset = 0
    for g in graphs:
        edges.extend((u + offset, v + offset, s) for u, v, s in g.edges)
        offset += g.n
    return _trusted(offset, edges)


def coalesce(g1: SignedGraph, u: int, g2: SignedGraph, v: int) -> SignedGraph:
    """
    Identify vertex u of g1 with vertex v of g2.

    g1 keeps its labels (the merged vertex is u); the other vertices of g2
    follow as g1.n, g1.n + 1, ... in their original order.
    """
    _check_vertex(g1, u)
    _check_vertex(g2, v)

    def relabel(x: int) -> int:
        if x == v:
            return u
        return g1.n + (x if x < v else x - 1)

    edges = list(g1.edges)
    edges.extend((relabel(a), relabel(b), s) for a, b, s in g2.edges)
    return SignedGraph(n=g1.n + g2.n - 1, edges=edges)


def complete_join_neg(k: int) -> SignedGraph:
    """Two all-positive K_k on 0..k-1 and k..2k-1, joined by all negative cross edges."""
    if k < 1:
        raise InputError(f"complete_join_neg needs k >= 1, got {k}")
    edges = []
    for u in range(2 * k):
        for v in range(u + 1, 2 * k):
            same_side = (u < k) == (v < k)
            edges.append((u, v, 1 if same_side else -1))
    return _trusted(2 * k, edges)


def complete_graph(n: int, sign: int = 1) -> SignedGraph:
    return SignedGraph(n=n, edges=[(u, v, sign) for u in range(n) for v in range(u + 1, n)])


def path_graph(signs: Sequence[int]) -> SignedGraph:
    return SignedGraph(n=len(signs) + 1, edges=[(i, i + 1, s) for i, s in enumerate(signs)])


def cycle_graph(signs: Sequence[int]) -> SignedGraph:
    """Cycle 0-1-...-(k-1)-0; signs[i] is the sign of the edge leaving vertex i."""
    k = len(signs)
    if k < 3:
        raise InputError(f"a cycle needs at least 3 edges, got {k}")
    return SignedGraph(n=k, edges=[(i, (i + 1) % k, s) for i, s in enumerate(signs)])


def star_graph(signs: Sequence[int]) -> SignedGraph:
    return SignedGraph(n=len(signs) + 1, edges=[(0, i + 1, s) for i, s in enumerate(signs)])


def sign_of(g: SignedGraph, refs: Iterable[int] | None = None) -> int:
    """Product of the edge signs (of the selected edges, or all of them)."""
    chosen = g.edges if refs is None else [g.edges[i] for i in refs]
    product = 1
    for _, _, s in chosen:
        product *= s
    return product


def positive_count(g: SignedGraph) -> int:
    return sum(1 for *_, s in g.edges if s > 0)


def negative_count(g: SignedGraph) -> int:
    return sum(1 for *_, s in g.edges if s < 0)


# generators


def _draw_sign(rng: random.Random, neg_prob: float) -> int:
    return -1 if rng.random() < neg_prob else 1


def _cycle_signs(rng: random.Random, length: int, balanced: bool | None, neg_prob: float) -> list[int]:
    if balanced is None:
        return [_draw_sign(rng, neg_prob) for _ in range(length)]
    if balanced:
        if length % 2:
            raise InputError(f"a balanced-count cycle needs even length, got {length}")
        negatives = length // 2
    else:
        options = [k for k in range(length + 1) if 2 * k != length]
        negatives = rng.choice(options)
    chosen = set(rng.sample(range(length), negatives))
    return [-1 if i in chosen else 1 for i in range(length)]


def _relabel_randomly(rng: random.Random, n: int, edges: list[Edge]) -> SignedGraph:
    labels = list(range(n))
    rng.shuffle(labels)
    return SignedGraph(n=n, edges=[(labels[u], labels[v], s) for u, v, s in edges])


def random_tree(n: int, seed: int = 0, neg_prob: float = 0.5) -> SignedGraph:
    if n < 1:
        raise InputError(f"a tree needs at least one vertex, got n={n}")
    rng = random.Random(seed)
    edges = [(rng.randrange(i), i, _draw_sign(rng, neg_prob)) for i in range(1, n)]
    return _relabel_randomly(rng, n, edges)


def random_unicyclic(
    n: int,
    cycle_length: int,
    seed: int = 0,
    neg_prob: float = 0.5,
    cycle_signs: Sequence[int] | None = None,
) -> SignedGraph:
    if not 3 <= cycle_length <= n:
        raise InputError(f"cycle length must lie in 3..{n}, got {cycle_length}")
    rng = random.Random(seed)
    if cycle_signs is None:
        signs = [_draw_sign(rng, neg_prob) for _ in range(cycle_length)]
    else:
        if len(cycle_signs) != cycle_length:
            raise InputError(f"{len(cycle_signs)} cycle signs given for a cycle of length {cycle_length}")
        signs = list(cycle_signs)
    edges = [(i, (i + 1) % cycle_length, s) for i, s in enumerate(signs)]
    edges.extend((rng.randrange(i), i, _draw_sign(rng, neg_prob)) for i in range(cycle_length, n))
    return _relabel_randomly(rng, n, edges)


CACTUS_PROFILES = ("random", "unbalanced", "balanced", "mixed")


def random_cactus(
    n: int,
    cycles: int,
    seed: int = 0,
    profile: str = "random",
    neg_prob: float = 0.5,
    max_cycle_length: int = 8,
    bridge_prob: float = 0.3,
) -> SignedGraph:
    """
    Random cactus with exactly `cycles` cycles.

    profile picks the per-cycle sign counts: "balanced" gives every cycle as
    many positive as negative edges, "unbalanced" none, "mixed" at least one
    of each, "random" draws every sign independently. Cycles hang off a
    random earlier vertex, sometimes through a fresh bridge; leftover vertices
    become pendant edges.
    """
    if profile not in CACTUS_PROFILES:
        raise InputError(f"unknown cactus profile {profile!r}, expected one of {CACTUS_PROFILES}")
    if cycles < 0:
        raise InputError(f"cycle count must be non-negative, got {cycles}")
    if profile == "mixed" and cycles < 2:
        raise InputError("a mixed cactus needs at least two cycles")
    rng = random.Random(seed)

    if profile == "balanced":
        kinds: list[bool | None] = [True] * cycles
    elif profile == "unbalanced":
        kinds = [False] * cycles
    elif profile == "mixed":
        kinds = [True, False] + [rng.random() < 0.5 for _ in range(cycles - 2)]
        rng.shuffle(kinds)
    else:
        kinds = [None] * cycles

    min_lengths = [4 if kind else 3 for kind in kinds]
    if any(length > max_cycle_length for length in min_lengths):
        raise InputError(f"max_cycle_length {max_cycle_length} is too short for profile {profile!r}")
    needed = 1 + sum(length - 1 for length in min_lengths)
    if needed > n:
        raise InputError(f"{cycles} cycles with profile {profile!r} need at least {needed} vertices, got n={n}")

    spare = n - needed
    used = 1
    edges: list[Edge] = []
    for kind, min_length in zip(kinds, min_lengths):
        step = 2 if kind else 1
        room = min(spare, max_cycle_length - min_length)
        extra = step * rng.randint(0, room // step)
        spare -= extra
        length = min_length + extra

        anchor = rng.randrange(used)
        if spare > 0 and rng.random() < bridge_prob:
            edges.append((anchor, used, _draw_sign(rng, neg_prob)))
            anchor = used
            used += 1
            spare -= 1

        ring = [anchor] + list(range(used, used + length - 1))
        used += length - 1
        signs = _cycle_signs(rng, length, kind, neg_prob)
        edges.extend((ring[i], ring[(i + 1) % length], s) for i, s in enumerate(signs))

    while used < n:
        edges.append((rng.randrange(used), used, _draw_sign(rng, neg_prob)))
        used += 1
    return _relabel_randomly(rng, n, edges)


def random_signed(n: int, seed: int = 0, edge_prob: float = 0.5, neg_prob: float = 0.5) -> SignedGraph:
    if n < 0:
        raise InputError(f"vertex count must be non-negative, got {n}")
    if not 0.0 <= edge_prob <= 1.0 or not 0.0 <= neg_prob <= 1.0:
        raise InputError("probabilities must lie in [0, 1]")
    rng = random.Random(seed)
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < edge_prob:
                edges.append((u, v, _draw_sign(rng, neg_prob)))
    return _trusted(n, edges)


def theta_graph(a: int, b: int, c: int, signs: Sequence[Sequence[int]] | None = None) -> SignedGraph:
    """
    Terminals 0 and 1 joined by three internally disjoint paths of a, b and c
    edges. signs[i] lists the signs along path i from terminal 0 to terminal 1;
    internal vertices are numbered path by path starting at 2.
    """
    lengths = (a, b, c)
    if any(length < 1 for length in lengths):
        raise InputError(f"theta path lengths must be >= 1, got {lengths}")
    if sum(1 for length in lengths if length == 1) > 1:
        raise InputError(f"at most one theta path may have length 1, got {lengths}")
    if signs is None:
        signs = [[1] * length for length in lengths]
    if len(signs) != 3 or any(len(s) != length for s, length in zip(signs, lengths)):
        raise InputError(f"theta signs must match the path lengths {lengths}")

    edges: list[Edge] = []
    next_vertex = 2
    for length, path_signs in zip(lengths, signs):
        chain = [0] + list(range(next_vertex, next_vertex + length - 1)) + [1]
        next_vertex += length - 1
        edges.extend((chain[i], chain[i + 1], s) for i, s in enumerate(path_signs))
    return SignedGraph(n=next_vertex, edges=edges)


_GENERATORS: dict[str, Callable[..., SignedGraph]] = {
    "random_tree": random_tree,
    "random_unicyclic": random_unicyclic,
    "random_cactus": random_cactus,
    "random_signed": random_signed,
    "theta_graph": theta_graph,
    "cycle": cycle_graph,
    "complete_join_neg": complete_join_neg,
}
_SEEDED = {"random_tree", "random_unicyclic", "random_cactus", "random_signed"}

GENERATOR_KINDS = tuple(_GENERATORS)
GENERATOR_ALIASES = {
    "tree": "random_tree",
    "unicyclic": "random_unicyclic",
    "cactus": "random_cactus",
    "signed": "random_signed",
    "theta": "theta_graph",
    "join": "complete_join_neg",
}


def generate(kind: str, params: dict | None = None, seed: int = 0) -> SignedGraph:
    kind = GENERATOR_ALIASES.get(kind, kind)
    try:
        builder = _GENERATORS[kind]
    except KeyError:
        raise InputError(f"unknown generator {kind!r}, expected one of {GENERATOR_KINDS}") from None
    kwargs = dict(params or {})
    if kind in _SEEDED:
        kwargs["seed"] = seed
    try:
        return builder(**kwargs)
    except TypeError as e:
        raise InputError(f"bad parameters for {kind}: {e}") from e


def to_dot(g: SignedGraph) -> str:
    """Undirected DOT; positive edges solid, negative edges dashed."""
    lines = ["graph signed {"]
    lines.extend(f"  {v};" for v in range(g.n))
    for u, v, s in g.edges:
        style = "solid" if s > 0 else "dashed"
        lines.append(f"  {u} -- {v} [style={style}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
