"""Exact 1-Wasserstein distance under the directed hop metric.

The primal is solved with the transportation simplex (northwest-corner
start, u-v potentials, stepping-stone cycles) restricted to the supports
of the two measures. Entering and leaving cells are chosen by Bland's
smallest-index rule, which rules out cycling on degenerate bases.

``kantorovich_bruteforce`` is an independent check through the dual: it
enumerates integer-valued 1-Lipschitz potentials.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import EpsOutOfRange, TooLarge
from .graph import DistMatrix, Number, as_ratio
from .markov import Kernel

ZERO = Fraction(0)
BRUTEFORCE_MAX_N = 8


@dataclass(frozen=True)
class Coupling:
    """Joint measure ``plan[i][j]`` moving mass from vertex i to vertex j."""

    vertices: tuple[str, ...]
    plan: tuple[tuple[Fraction, ...], ...]

    def first_marginal(self) -> tuple[Fraction, ...]:
        return tuple(sum(row, ZERO) for row in self.plan)

    def second_marginal(self) -> tuple[Fraction, ...]:
        return tuple(sum(col, ZERO) for col in zip(*self.plan))

    def cost(self, d: DistMatrix) -> Fraction:
        return sum(
            (p * d.rows[i][j] for i, row in enumerate(self.plan) for j, p in enumerate(row) if p),
            ZERO,
        )

    def support(self) -> dict[tuple[str, str], Fraction]:
        return {
            (self.vertices[i], self.vertices[j]): p
            for i, row in enumerate(self.plan)
            for j, p in enumerate(row)
            if p
        }


def dirac(n: int, i: int) -> tuple[Fraction, ...]:
    return tuple(Fraction(1) if k == i else ZERO for k in range(n))


def check_measure(nu: Sequence[Fraction]) -> None:
    if any(p < 0 for p in nu) or sum(nu) != 1:
        raise ValueError("not a probability vector")


def smoothed_measure(Pm: Kernel, x: int, eps: Number) -> tuple[Fraction, ...]:
    """(1 - eps) delta_x + eps Pm(x, .)."""
    eps = as_ratio(eps)
    if not 0 <= eps <= 1:
        raise EpsOutOfRange(f"eps must lie in [0, 1], got {eps}")
    row = Pm.rows[x]
    return tuple(eps * p + (1 - eps if k == x else ZERO) for k, p in enumerate(row))


def _northwest_corner(supply, demand):
    m, k = len(supply), len(demand)
    a, b = list(supply), list(demand)
    flow: dict[tuple[int, int], Fraction] = {}
    i = j = 0
    while True:
        q = min(a[i], b[j])
        flow[(i, j)] = q
        a[i] -= q
        b[j] -= q
        if i == m - 1 and j == k - 1:
            return flow
        if (a[i] == 0 and i < m - 1) or j == k - 1:
            i += 1
        else:
            j += 1


def _tree_path(basic, m: int, start_row: int, end_col: int) -> list[tuple[int, int]]:
    """Cells on the basis-tree path from row node ``start_row`` to column node ``end_col``."""
    # nodes: rows 0..m-1, columns m..m+k-1
    adj: dict[int, list[int]] = {}
    for i, j in basic:
        adj.setdefault(i, []).append(m + j)
        adj.setdefault(m + j, []).append(i)
    parent = {start_row: None}
    queue = deque([start_row])
    target = m + end_col
    while queue:
        u = queue.popleft()
        if u == target:
            break
        for v in adj.get(u, ()):
            if v not in parent:
                parent[v] = u
                queue.append(v)
    nodes = [target]
    while parent[nodes[-1]] is not None:
        nodes.append(parent[nodes[-1]])
    nodes.reverse()
    cells = []
    for u, v in zip(nodes, nodes[1:]):
        cells.append((u, v - m) if u < m else (v, u - m))
    return cells


def transportation_simplex(
    supply: Sequence[Fraction], demand: Sequence[Fraction], cost: Sequence[Sequence[int]]
) -> tuple[Fraction, dict[tuple[int, int], Fraction]]:
    """Minimum-cost plan for a balanced transportation problem.

    ``supply`` and ``demand`` must be strictly positive with equal totals.
    Returns the optimal cost and the basic flows keyed by (row, column).
    """
    m, k = len(supply), len(demand)
    if sum(supply) != sum(demand):
        raise ValueError("unbalanced transportation problem")
    flow = _northwest_corner(supply, demand)
    while True:
        # potentials u_i + v_j = c_ij on the basis tree, rooted at u_0 = 0
        u: list = [None] * m
        v: list = [None] * k
        u[0] = 0
        pending = list(flow)
        while pending:
            rest = []
            for i, j in pending:
                if u[i] is not None and v[j] is None:
                    v[j] = cost[i][j] - u[i]
                elif v[j] is not None and u[i] is None:
                    u[i] = cost[i][j] - v[j]
                elif u[i] is None and v[j] is None:
                    rest.append((i, j))
            if len(rest) == len(pending):
                raise RuntimeError("transportation basis is not a spanning tree")
            pending = rest
        entering = None
        for i in range(m):
            for j in range(k):
                if (i, j) not in flow and cost[i][j] - u[i] - v[j] < 0:
                    entering = (i, j)
                    break
            if entering:
                break
        if entering is None:
            total = sum((q * cost[i][j] for (i, j), q in flow.items()), ZERO)
            return total, flow
        ei, ej = entering
        path = _tree_path(flow, m, ei, ej)
        minus = path[0::2]
        plus = path[1::2]
        theta = min(flow[c] for c in minus)
        leaving = min((c for c in minus if flow[c] == theta), key=lambda c: c[0] * k + c[1])
        for c in minus:
            flow[c] -= theta
        for c in plus:
            flow[c] += theta
        del flow[leaving]
        flow[entering] = theta


def wasserstein(
    nu0: Sequence[Number], nu1: Sequence[Number], d: DistMatrix
) -> tuple[Fraction, Coupling]:
    """Exact W(nu0, nu1) and one optimal coupling."""
    nu0 = [as_ratio(p) for p in nu0]
    nu1 = [as_ratio(p) for p in nu1]
    check_measure(nu0)
    check_measure(nu1)
    src = [i for i, p in enumerate(nu0) if p]
    dst = [j for j, p in enumerate(nu1) if p]
    cost = [[d.rows[i][j] for j in dst] for i in src]
    value, flow = transportation_simplex([nu0[i] for i in src], [nu1[j] for j in dst], cost)
    n = d.n
    plan = [[ZERO] * n for _ in range(n)]
    for (a, b), q in flow.items():
        plan[src[a]][dst[b]] += q
    return value, Coupling(d.vertices, tuple(tuple(r) for r in plan))


def lipschitz_extension(values: dict[int, int], d: DistMatrix) -> list[int]:
    """Largest 1-Lipschitz extension z -> min_u f(u) + d(u, z) of a partial function."""
    return [min(f + d.rows[u][z] for u, f in values.items()) for z in range(d.n)]


def enumerate_lipschitz(
    order: Sequence[int], fixed: dict[int, int], d: DistMatrix
):
    """Yield every integer 1-Lipschitz assignment on ``order`` extending ``fixed``.

    Yields the same dict object, mutated in place; copy to keep it.
    """
    rows = d.rows
    f = dict(fixed)
    free = [z for z in order if z not in fixed]

    def rec(k: int):
        if k == len(free):
            yield f
            return
        z = free[k]
        lo = max(val - rows[z][u] for u, val in f.items())
        hi = min(val + rows[u][z] for u, val in f.items())
        for val in range(lo, hi + 1):
            f[z] = val
            yield from rec(k + 1)
        del f[z]

    yield from rec(0)


def kantorovich_bruteforce(
    nu0: Sequence[Number], nu1: Sequence[Number], d: DistMatrix
) -> tuple[Fraction, tuple[int, ...]]:
    """Maximise sum f (nu1 - nu0) over integer 1-Lipschitz f by enumeration.

    Only the values of f on the union S of the two supports enter the
    objective, and any 1-Lipschitz function on S extends to the whole
    vertex set (``lipschitz_extension``), so the search runs over S. The
    returned maximiser is the extension, shifted so that f(first vertex)
    is 0; its values then lie in [-diam, diam] automatically.
    """
    n = d.n
    if n > BRUTEFORCE_MAX_N:
        raise TooLarge(n, BRUTEFORCE_MAX_N)
    nu0 = [as_ratio(p) for p in nu0]
    nu1 = [as_ratio(p) for p in nu1]
    check_measure(nu0)
    check_measure(nu1)
    delta = [b - a for a, b in zip(nu0, nu1)]
    support = [z for z in range(n) if nu0[z] or nu1[z]]
    # scale to integers so the inner loop avoids Fraction arithmetic
    scale = math.lcm(*(q.denominator for q in delta))
    weight = [(z, int(delta[z] * scale)) for z in support if delta[z]]
    best = None
    best_f = None
    for f in enumerate_lipschitz(support, {support[0]: 0}, d):
        val = sum(c * f[z] for z, c in weight)
        if best is None or val > best:
            best, best_f = val, dict(f)
    ext = lipschitz_extension(best_f, d)
    shift = ext[0]
    return Fraction(best, scale), tuple(v - shift for v in ext)
