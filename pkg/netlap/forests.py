"""
Brute-force oracle for the characteristic polynomial of the net Laplacian.

Every coefficient is a signed, weighted count of spanning forests:

    c_k = (-1)**(n-k) * sum over spanning k-component forests F of a(F) * sigma(F)

where a(F) is the product of the component orders and sigma(F) the product of
the edge signs. Isolated vertices are components of order 1.
"""

from typing import Iterator

from pydantic import BaseModel, ConfigDict, Field

from netlap.core import SignedGraph
from netlap.errors import CapExceededError, InputError
from netlap.settings import get_settings


class SpanningForest(BaseModel):
    model_config = ConfigDict(frozen=True)

    edges: tuple[int, ...] = Field(description="edge references, increasing")
    component_sizes: tuple[int, ...] = Field(description="component orders, by smallest vertex")
    sign: int = Field(description="product of the edge signs")
    weight: int = Field(description="product of the component orders")


class TreeSignSum(BaseModel):
    model_config = ConfigDict(frozen=True)

    c1: int = Field(description="coefficient of x in det(xI - L)")
    sign_sum: int = Field(description="sum of the signs of all spanning trees")
    connected: bool


class _RollbackUnionFind:
    # union by size, no path compression, so unions can be undone in LIFO order
    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n
        self.history: list[int] = []

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        self.history.append(rb)
        return True

    def rollback(self) -> None:
        rb = self.history.pop()
        ra = self.parent[rb]
        self.size[ra] -= self.size[rb]
        self.parent[rb] = rb

    def roots(self) -> list[int]:
        return [x for x in range(len(self.parent)) if self.parent[x] == x]


def _check_request(g: SignedGraph, k: int, cap: int | None) -> None:
    limit = get_settings().forest_cap if cap is None else cap
    if g.n > limit:
        raise CapExceededError("spanning forest enumeration", g.n, limit)
    if not 0 <= k <= g.n:
        raise InputError(f"component count k must lie in 0..{g.n}, got {k}")


def _forest_terms(g: SignedGraph, k: int) -> Iterator[tuple[tuple[int, ...], int, _RollbackUnionFind]]:
    """Yield (edge refs, sign, union-find state) for each acyclic edge set of size n-k."""
    target = g.n - k
    m = g.m
    if k < 1 or target > m:
        return
    edges = g.edges
    uf = _RollbackUnionFind(g.n)
    chosen: list[int] = []

    def walk(start: int, sign: int) -> Iterator[tuple[tuple[int, ...], int, _RollbackUnionFind]]:
        if len(chosen) == target:
            yield tuple(chosen), sign, uf
            return
        # leave enough edges to reach the target size
        for i in range(start, m - (target - len(chosen)) + 1):
            u, v, s = edges[i]
            if uf.union(u, v):
                chosen.append(i)
                yield from walk(i + 1, sign * s)
                chosen.pop()
                uf.rollback()

    yield from walk(0, 1)


def _weight(uf: _RollbackUnionFind) -> int:
    weight = 1
    for root in uf.roots():
        weight *= uf.size[root]
    return weight


def spanning_k_forests(g: SignedGraph, k: int, cap: int | None = None) -> Iterator[SpanningForest]:
    """
    Stream every spanning forest of g with exactly k components, in
    lexicographic order of the edge-reference tuples.
    """
    _check_request(g, k, cap)
    for refs, sign, uf in _forest_terms(g, k):
        sizes: dict[int, int] = {}
        for v in range(g.n):
            root = uf.find(v)
            if root not in sizes:
                sizes[root] = uf.size[root]
        yield SpanningForest(
            edges=refs,
            component_sizes=tuple(sizes.values()),
            sign=sign,
            weight=_weight(uf),
        )


def coefficient_via_forests(g: SignedGraph, k: int, cap: int | None = None) -> int:
    _check_request(g, k, cap)
    if k == 0:
        # only the empty graph has a spanning forest with no components
        return 1 if g.n == 0 else 0
    total = sum(sign * _weight(uf) for _, sign, uf in _forest_terms(g, k))
    return total if (g.n - k) % 2 == 0 else -total


def forest_char_poly(g: SignedGraph, cap: int | None = None) -> list[int]:
    """All coefficients c_0 .. c_n from the forest formula."""
    return [coefficient_via_forests(g, k, cap) for k in range(g.n + 1)]


def c1_tree_sum(g: SignedGraph, cap: int | None = None) -> TreeSignSum:
    """c_1 = (-1)**(n-1) * n * (sum of the signs of all spanning trees)."""
    _check_request(g, 1 if g.n else 0, cap)
    sign_sum = sum(sign for _, sign, _ in _forest_terms(g, 1)) if g.n else 0
    connected = g.n > 0 and (sign_sum != 0 or _has_spanning_tree(g))
    c1 = (-1) ** (g.n - 1) * g.n * sign_sum if g.n else 0
    return TreeSignSum(c1=c1, sign_sum=sign_sum, connected=connected)


def _has_spanning_tree(g: SignedGraph) -> bool:
    uf = _RollbackUnionFind(g.n)
    merged = sum(1 for u, v, _ in g.edges if uf.union(u, v))
    return merged == g.n - 1


def spanning_tree_count(g: SignedGraph, cap: int | None = None) -> int:
    _check_request(g, 1 if g.n else 0, cap)
    return sum(1 for _ in _forest_terms(g, 1)) if g.n else 0
