"""Finite simple strongly connected weighted directed graphs.

Vertices are opaque strings kept in first-appearance order; that order
fixes the index of every vertex in kernels, distance matrices and vertex
functions (plain sequences aligned with ``DiGraph.vertices``).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence, Union

from .errors import DuplicateEdge, GraphError, NotAGeodesic, NotStronglyConnected, SelfLoop

Ratio = Fraction
Number = Union[int, Fraction, str]
VertexFunction = Sequence[Fraction]


def as_ratio(value: Number) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings; floats are rejected."""
    if isinstance(value, float):
        raise TypeError("floats are not exact; pass an int, Fraction or 'p/q' string")
    return Fraction(value)


@dataclass(frozen=True)
class DiGraph:
    """Immutable weighted digraph with a dense rational weight matrix.

    Construct through :func:`build_graph`, which validates simplicity and
    strong connectivity; the raw constructor trusts its arguments.
    """

    vertices: tuple[str, ...]
    weights: tuple[tuple[Fraction, ...], ...]
    _index: Mapping[str, int] = field(repr=False, compare=False, hash=False, default=None)

    def __post_init__(self):
        if self._index is None:
            object.__setattr__(self, "_index", {v: i for i, v in enumerate(self.vertices)})

    @property
    def n(self) -> int:
        return len(self.vertices)

    def index(self, vertex: str) -> int:
        try:
            return self._index[vertex]
        except KeyError:
            raise KeyError(f"unknown vertex {vertex!r}") from None

    def weight(self, u: str, v: str) -> Fraction:
        return self.weights[self.index(u)][self.index(v)]

    def has_edge(self, u: str, v: str) -> bool:
        return self.weight(u, v) > 0

    def out_neighbors(self, i: int) -> list[int]:
        return [j for j, w in enumerate(self.weights[i]) if w > 0]

    def in_neighbors(self, i: int) -> list[int]:
        return [j for j in range(self.n) if self.weights[j][i] > 0]

    def edges(self) -> Iterator[tuple[int, int]]:
        """Index pairs ``(i, j)`` with ``i -> j``, row-major."""
        for i, row in enumerate(self.weights):
            for j, w in enumerate(row):
                if w > 0:
                    yield i, j

    def edge_list(self) -> list[tuple[str, str, Fraction]]:
        return [(self.vertices[i], self.vertices[j], self.weights[i][j]) for i, j in self.edges()]

    @property
    def edge_count(self) -> int:
        return sum(1 for _ in self.edges())

    def vertex_weight(self, i: int) -> Fraction:
        """Total outgoing weight of vertex ``i``."""
        return sum(self.weights[i], Fraction(0))

    def is_unweighted(self) -> bool:
        return all(w == 1 for row in self.weights for w in row if w > 0)

    def is_undirected(self) -> bool:
        n = self.n
        return all(self.weights[i][j] == self.weights[j][i] for i in range(n) for j in range(i + 1, n))


def _reachable(adj: list[list[int]], start: int) -> list[bool]:
    seen = [False] * len(adj)
    seen[start] = True
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if not seen[v]:
                seen[v] = True
                queue.append(v)
    return seen


def build_graph(edges: Iterable[Sequence]) -> DiGraph:
    """Build and validate a graph from ``(u, v)`` or ``(u, v, weight)`` tuples.

    Missing weights default to 1. Raises :class:`SelfLoop`,
    :class:`DuplicateEdge`, :class:`NotStronglyConnected`, or
    :class:`GraphError` for non-positive weights and graphs with fewer
    than two vertices.
    """
    order: dict[str, int] = {}
    given: dict[tuple[str, str], Fraction] = {}
    for edge in edges:
        if len(edge) == 2:
            u, v = edge
            w = Fraction(1)
        elif len(edge) == 3:
            u, v, w = edge
            w = as_ratio(w)
        else:
            raise GraphError(f"edge must be (u, v) or (u, v, w), got {edge!r}")
        u, v = str(u), str(v)
        if u == v:
            raise SelfLoop(u)
        if w <= 0:
            raise GraphError(f"edge {u!r} -> {v!r} has non-positive weight {w}")
        if (u, v) in given:
            raise DuplicateEdge(u, v)
        given[(u, v)] = w
        order.setdefault(u, len(order))
        order.setdefault(v, len(order))
    if len(order) < 2:
        raise GraphError("a graph needs at least two vertices")
    n = len(order)
    rows = [[Fraction(0)] * n for _ in range(n)]
    for (u, v), w in given.items():
        rows[order[u]][order[v]] = w
    g = DiGraph(tuple(order), tuple(tuple(r) for r in rows))
    validate_strongly_connected(g)
    return g


def validate_strongly_connected(g: DiGraph) -> None:
    n = g.n
    fwd = [g.out_neighbors(i) for i in range(n)]
    rev = [[] for _ in range(n)]
    for i, js in enumerate(fwd):
        for j in js:
            rev[j].append(i)
    out_reach = _reachable(fwd, 0)
    for j in range(n):
        if not out_reach[j]:
            raise NotStronglyConnected(g.vertices[0], g.vertices[j])
    in_reach = _reachable(rev, 0)
    for j in range(n):
        if not in_reach[j]:
            raise NotStronglyConnected(g.vertices[j], g.vertices[0])


@dataclass(frozen=True)
class DistMatrix:
    """Directed hop distances; ``rows[i][j]`` is d(vertex i, vertex j)."""

    vertices: tuple[str, ...]
    rows: tuple[tuple[int, ...], ...]

    def __getitem__(self, pair: tuple[str, str]) -> int:
        u, v = pair
        return self.rows[self.vertices.index(u)][self.vertices.index(v)]

    @property
    def n(self) -> int:
        return len(self.vertices)

    def rho(self, i: int) -> tuple[int, ...]:
        """Distance function from vertex ``i``: z -> d(i, z)."""
        return self.rows[i]

    def rho_rev(self, i: int) -> tuple[int, ...]:
        """Reverse distance function to vertex ``i``: z -> d(z, i)."""
        return tuple(row[i] for row in self.rows)


def all_pairs_distance(g: DiGraph) -> DistMatrix:
    """Hop-count distances by one BFS per source. Weights are ignored."""
    adj = [g.out_neighbors(i) for i in range(g.n)]
    rows = []
    for s in range(g.n):
        dist = [-1] * g.n
        dist[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for v in adj[u]:
                if dist[v] < 0:
                    dist[v] = dist[u] + 1
                    queue.append(v)
        rows.append(tuple(dist))
    return DistMatrix(g.vertices, tuple(rows))


def diameter(d: DistMatrix) -> int:
    return max(max(row) for row in d.rows)


def is_eulerian(g: DiGraph) -> bool:
    """In-degree equals out-degree at every vertex, counting edges not weights."""
    return all(len(g.out_neighbors(i)) == len(g.in_neighbors(i)) for i in range(g.n))


def is_lipschitz(f: Sequence[Number] | Mapping[str, Number], L: Number, d: DistMatrix) -> bool:
    """One-sided check ``f(y) - f(x) <= L d(x, y)`` over all ordered pairs."""
    if isinstance(f, Mapping):
        f = [f[v] for v in d.vertices]
    vals = [as_ratio(v) for v in f]
    L = as_ratio(L)
    n = d.n
    return all(vals[j] - vals[i] <= L * d.rows[i][j] for i in range(n) for j in range(n))


def geodesic_pairs(d: DistMatrix, x: int, y: int) -> set[tuple[int, int]]:
    """Index pairs (z, w), z != w, lying in this order on a minimal x -> y geodesic."""
    if x == y:
        raise ValueError("geodesic_pairs needs x != y")
    rows = d.rows
    dxy = rows[x][y]
    between = [z for z in range(d.n) if rows[x][z] + rows[z][y] == dxy]
    return {
        (z, w)
        for z in between
        for w in between
        if z != w and rows[x][z] + rows[z][w] + rows[w][y] == dxy
    }


def minimal_geodesics(g: DiGraph, d: DistMatrix, x: int, y: int) -> Iterator[tuple[int, ...]]:
    """Enumerate every minimal geodesic from ``x`` to ``y`` as an index tuple.

    The count can be exponential in general; intended for small graphs.
    """
    rows = d.rows
    target = rows[x][y]
    adj = [g.out_neighbors(i) for i in range(g.n)]

    def walk(path: list[int]) -> Iterator[tuple[int, ...]]:
        u = path[-1]
        if u == y:
            yield tuple(path)
            return
        step = len(path)
        for v in adj[u]:
            if rows[x][v] == step and rows[v][y] == target - step:
                path.append(v)
                yield from walk(path)
                path.pop()

    yield from walk([x])


def check_geodesic(g: DiGraph, d: DistMatrix, path: Sequence[int]) -> None:
    """Raise :class:`NotAGeodesic` unless ``path`` is a minimal geodesic."""
    if len(path) < 2:
        raise NotAGeodesic("a geodesic needs at least two vertices")
    for u, v in zip(path, path[1:]):
        if g.weights[u][v] <= 0:
            raise NotAGeodesic(f"{g.vertices[u]!r} -> {g.vertices[v]!r} is not an edge")
    if d.rows[path[0]][path[-1]] != len(path) - 1:
        raise NotAGeodesic(
            f"path of length {len(path) - 1} but d = {d.rows[path[0]][path[-1]]}"
        )
