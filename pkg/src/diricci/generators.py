"""Example graphs and seeded random strongly connected test graphs."""

from __future__ import annotations

import random

from .errors import GraphError
from .graph import DiGraph, build_graph


def _names(n: int) -> list[str]:
    return [f"x{i}" for i in range(1, n + 1)]


def directed_complete(n: int) -> DiGraph:
    """Unweighted directed complete graph on x1..xn.

    x_i -> x_j for every j other than i and i-1 (indices mod n): the
    bidirected complete graph with one Hamiltonian cycle's reversal
    removed, so consecutive vertices are joined one way only. For n = 3
    this is the directed 3-cycle. The structure is pinned by the known
    values: diameter 2, H = H_rev = -(1 + 1/(2(n-2))) at every vertex and
    the table of kappa(x1, xi).
    """
    if n < 3:
        raise GraphError(f"directed complete graph needs n >= 3, got {n}")
    v = _names(n)
    return build_graph(
        (v[i], v[j]) for i in range(n) for j in range(n) if j != i and j != (i - 1) % n
    )


def directed_cycle(n: int) -> DiGraph:
    if n < 2:
        raise GraphError(f"directed cycle needs n >= 2, got {n}")
    v = _names(n)
    return build_graph((v[i], v[(i + 1) % n]) for i in range(n))


TRIFORCE_EDGES = (
    # outer hexagon x1 -> x2 -> ... -> x6 -> x1 (listed first to fix vertex order)
    ("x1", "x2"), ("x2", "x3"), ("x3", "x4"), ("x4", "x5"), ("x5", "x6"), ("x6", "x1"),
    # central triangle
    ("x2", "x6"), ("x6", "x4"), ("x4", "x2"),
)


def triforce() -> DiGraph:
    """Unweighted directed triforce on x1..x6.

    Corners x1, x3, x5; midpoints x2 (between x1 and x3), x4 (x3-x5) and
    x6 (x5-x1). Each corner triangle is a directed 3-cycle and the
    orientations are chosen so the central triangle x2 -> x6 -> x4 -> x2
    is also a directed cycle. Pinned by: mean-kernel rows of x1 and x2,
    diameter 4 (d(x1, x5)), H = H_rev = -3/2 everywhere, kappa = 3/4 on
    every edge.
    """
    return build_graph(TRIFORCE_EDGES)


def random_strongly_connected(n: int, density: float, seed: int) -> DiGraph:
    """Random Hamiltonian cycle plus Bernoulli(density) extra edges, unit weights.

    Uses :class:`random.Random` seeded with ``seed``, so the graph is the
    same on every platform for a fixed (n, density, seed).
    """
    if n < 3 or not 0 <= density <= 1:
        raise GraphError(f"bad parameters n={n}, density={density}")
    rng = random.Random(seed)
    order = list(range(n))
    rng.shuffle(order)
    edges = {(order[k], order[(k + 1) % n]) for k in range(n)}
    for i in range(n):
        for j in range(n):
            if i != j and (i, j) not in edges and rng.random() < density:
                edges.add((i, j))
    v = _names(n)
    # vertex order follows x1..xn regardless of edge order
    rows = sorted(edges)
    g = build_graph([(v[i], v[j]) for i, j in rows])
    return _reorder(g, v)


def _reorder(g: DiGraph, order: list[str]) -> DiGraph:
    idx = [g.index(v) for v in order]
    weights = tuple(tuple(g.weights[i][j] for j in idx) for i in idx)
    return DiGraph(tuple(order), weights)


def from_name(spec: str) -> DiGraph:
    """Parse generator names: ``kn:5``, ``triforce``, ``cycle:4``, ``random:n,density,seed``."""
    name, _, arg = spec.partition(":")
    try:
        if name == "kn":
            return directed_complete(int(arg))
        if name == "triforce" and not arg:
            return triforce()
        if name == "cycle":
            return directed_cycle(int(arg))
        if name == "random":
            n, density, seed = arg.split(",")
            return random_strongly_connected(int(n), float(density), int(seed))
    except ValueError as exc:
        raise GraphError(f"bad generator argument in {spec!r}: {exc}") from None
    raise GraphError(f"unknown generator {spec!r}")
