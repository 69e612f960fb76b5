"""Random-walk kernels of a digraph and the Chung Laplacian, in exact arithmetic."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import NotEulerian, NotUnweighted, SingularSystem
from .graph import DiGraph, Number, as_ratio, is_eulerian

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class Kernel:
    """Row-stochastic rational matrix indexed by graph vertex order."""

    vertices: tuple[str, ...]
    rows: tuple[tuple[Fraction, ...], ...]

    def __getitem__(self, pair: tuple[str, str]) -> Fraction:
        u, v = pair
        return self.rows[self.vertices.index(u)][self.vertices.index(v)]

    def row(self, vertex: str) -> dict[str, Fraction]:
        """Nonzero entries of one row keyed by vertex name."""
        r = self.rows[self.vertices.index(vertex)]
        return {self.vertices[j]: p for j, p in enumerate(r) if p}

    def is_stochastic(self) -> bool:
        return all(p >= 0 for r in self.rows for p in r) and all(sum(r) == 1 for r in self.rows)


def transition_kernel(g: DiGraph) -> Kernel:
    """P(x, y) = mu_xy / mu(x)."""
    rows = []
    for i in range(g.n):
        total = g.vertex_weight(i)
        rows.append(tuple(w / total for w in g.weights[i]))
    return Kernel(g.vertices, tuple(rows))


def solve_linear(a: list[list[Fraction]], b: list[Fraction]) -> list[Fraction]:
    """Solve a square system by Gauss-Jordan elimination over the rationals.

    Raises :class:`SingularSystem` when no pivot is available.
    """
    n = len(a)
    m = [list(row) + [rhs] for row, rhs in zip(a, b)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            raise SingularSystem(f"no pivot in column {col}")
        m[col], m[pivot] = m[pivot], m[col]
        prow = m[col]
        inv = 1 / prow[col]
        prow[:] = [v * inv for v in prow]
        for r in range(n):
            if r != col and m[r][col] != 0:
                factor = m[r][col]
                m[r] = [v - factor * pv for v, pv in zip(m[r], prow)]
    return [row[n] for row in m]


def perron_measure(P: Kernel) -> tuple[Fraction, ...]:
    """Stationary probability vector of ``P`` from one exact linear solve.

    Solves (P^T - I) m = 0 with the last equation (redundant, since the
    columns of P^T - I sum to zero) replaced by sum(m) = 1.
    """
    n = len(P.rows)
    a = [[P.rows[y][x] - (ONE if x == y else ZERO) for y in range(n)] for x in range(n)]
    b = [ZERO] * n
    a[-1] = [ONE] * n
    b[-1] = ONE
    m = solve_linear(a, b)
    if any(v <= 0 for v in m):
        raise SingularSystem("stationary solution is not strictly positive")
    return tuple(m)


def reverse_kernel(P: Kernel, m: Sequence[Fraction]) -> Kernel:
    """Time reversal: rev(x, y) = m(y) P(y, x) / m(x)."""
    n = len(P.rows)
    rows = tuple(tuple(m[y] * P.rows[y][x] / m[x] for y in range(n)) for x in range(n))
    rev = Kernel(P.vertices, rows)
    if not all(sum(r) == 1 for r in rows):
        raise SingularSystem("reverse kernel is not stochastic; m is not stationary for P")
    return rev


def mean_kernel(P: Kernel, P_rev: Kernel) -> Kernel:
    rows = tuple(
        tuple((a + b) / 2 for a, b in zip(ra, rb)) for ra, rb in zip(P.rows, P_rev.rows)
    )
    return Kernel(P.vertices, rows)


def mean_kernel_of(g: DiGraph) -> tuple[Kernel, tuple[Fraction, ...]]:
    """Convenience: the mean kernel of ``g`` together with its Perron measure."""
    P = transition_kernel(g)
    m = perron_measure(P)
    return mean_kernel(P, reverse_kernel(P, m)), m


def eulerian_mean_kernel(g: DiGraph) -> Kernel:
    """Closed-form mean kernel of an unweighted Eulerian graph.

    1/deg(x) towards neighbours joined both ways, 1/(2 deg(x)) towards
    neighbours joined one way, where deg is the out-degree.
    """
    if not g.is_unweighted():
        raise NotUnweighted("closed-form mean kernel needs unit weights")
    if not is_eulerian(g):
        raise NotEulerian("closed-form mean kernel needs in-degree == out-degree")
    n = g.n
    rows = []
    for x in range(n):
        deg = len(g.out_neighbors(x))
        row = []
        for y in range(n):
            fwd = g.weights[x][y] > 0
            back = g.weights[y][x] > 0
            if fwd and back:
                row.append(Fraction(1, deg))
            elif fwd or back:
                row.append(Fraction(1, 2 * deg))
            else:
                row.append(ZERO)
        rows.append(tuple(row))
    return Kernel(g.vertices, tuple(rows))


def laplacian_apply(Pm: Kernel, f: Sequence[Number]) -> tuple[Fraction, ...]:
    """(L f)(x) = f(x) - sum_y Pm(x, y) f(y)."""
    vals = [as_ratio(v) for v in f]
    out = []
    for x, row in enumerate(Pm.rows):
        acc = vals[x]
        for p, v in zip(row, vals):
            if p:
                acc -= p * v
        out.append(acc)
    return tuple(out)
