"""Dense two-phase primal simplex over the rationals with Bland's rule.

Solves ``min c.x`` subject to ``A_ub x <= b_ub``, ``A_eq x = b_eq`` and
``x >= 0``. Pivoting runs on ``gmpy2.mpq`` when available (about ten times
faster than :class:`fractions.Fraction`), results come back as Fractions.
Bland's smallest-index rule (for both the entering and the leaving
variable) guarantees termination on degenerate problems.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import InfeasibleProblem, UnboundedProblem

try:
    from gmpy2 import mpq as Q
except ImportError:  # pragma: no cover
    Q = Fraction

ZERO = Q(0)
ONE = Q(1)


def _exact(q) -> Fraction:
    return Fraction(int(q.numerator), int(q.denominator))


@dataclass(frozen=True)
class LPResult:
    value: Fraction
    x: tuple[Fraction, ...]
    pivots: int


class _Tableau:
    def __init__(self, rows: list[list[Fraction]], basis: list[int], ncols: int):
        self.rows = rows
        self.basis = basis
        self.ncols = ncols
        self.pivots = 0

    def pivot(self, r: int, col: int, obj: list[Fraction]) -> None:
        prow = self.rows[r]
        inv = 1 / prow[col]
        if inv != 1:
            prow[:] = [v * inv if v else v for v in prow]
        nz = [j for j, v in enumerate(prow) if v]
        for i, row in enumerate(self.rows):
            if i != r:
                f = row[col]
                if f:
                    for j in nz:
                        row[j] -= f * prow[j]
        f = obj[col]
        if f:
            for j in nz:
                obj[j] -= f * prow[j]
        self.basis[r] = col
        self.pivots += 1

    def price(self, cost: Sequence[Fraction]) -> list[Fraction]:
        """Objective row (reduced costs, then minus the objective value)."""
        obj = list(cost) + [ZERO]
        for row, b in zip(self.rows, self.basis):
            cb = obj[b]
            if cb:
                obj = [o - cb * v for o, v in zip(obj, row)]
        return obj

    def run(self, obj: list[Fraction], allowed: int) -> None:
        """Iterate to optimality over columns ``< allowed`` (Bland's rule)."""
        rhs = self.ncols
        while True:
            col = next((j for j in range(allowed) if obj[j] < 0), None)
            if col is None:
                return
            best = None
            best_ratio = None
            for i, row in enumerate(self.rows):
                a = row[col]
                if a > 0:
                    ratio = row[rhs] / a
                    if (
                        best is None
                        or ratio < best_ratio
                        or (ratio == best_ratio and self.basis[i] < self.basis[best])
                    ):
                        best, best_ratio = i, ratio
            if best is None:
                raise UnboundedProblem(f"objective unbounded along column {col}")
            self.pivot(best, col, obj)


def minimize(
    c: Sequence,
    A_ub: Sequence[Sequence] = (),
    b_ub: Sequence = (),
    A_eq: Sequence[Sequence] = (),
    b_eq: Sequence = (),
) -> LPResult:
    """Exact optimum of a linear program with nonnegative variables.

    Raises :class:`InfeasibleProblem` or :class:`UnboundedProblem`.
    """
    nv = len(c)
    n_ub = len(A_ub)
    if len(b_ub) != n_ub or len(b_eq) != len(A_eq):
        raise ValueError("constraint matrix and right-hand side lengths differ")

    needs_art = [Q(b) < 0 for b in b_ub] + [True] * len(A_eq)
    n_art = sum(needs_art)
    ncols = nv + n_ub + n_art
    rows: list[list[Fraction]] = []
    basis: list[int] = []
    art = nv + n_ub
    for k, (a, b) in enumerate(zip(list(A_ub) + list(A_eq), list(b_ub) + list(b_eq))):
        row = [Q(v) for v in a] + [ZERO] * (ncols - nv) + [Q(b)]
        if len(a) != nv:
            raise ValueError(f"row {k} has {len(a)} coefficients, expected {nv}")
        if k < n_ub:
            row[nv + k] = ONE
        flip = row[-1] < 0
        if flip:
            row = [-v for v in row]
        if needs_art[k]:
            row[art] = ONE
            basis.append(art)
            art += 1
        else:
            basis.append(nv + k)
        rows.append(row)

    tab = _Tableau(rows, basis, ncols)
    first_art = nv + n_ub
    if n_art:
        obj = tab.price([ZERO] * first_art + [ONE] * n_art)
        tab.run(obj, ncols)
        if obj[ncols] != 0:
            raise InfeasibleProblem(f"phase-one optimum {-obj[ncols]} > 0")
        # drive zero-valued artificials out of the basis, dropping redundant rows
        r = 0
        while r < len(tab.rows):
            if tab.basis[r] >= first_art:
                row = tab.rows[r]
                col = next((j for j in range(first_art) if row[j] != 0), None)
                if col is None:
                    del tab.rows[r]
                    del tab.basis[r]
                    continue
                tab.pivot(r, col, obj)
            r += 1

    cost = [Q(v) for v in c] + [ZERO] * (ncols - nv)
    obj = tab.price(cost)
    tab.run(obj, first_art)
    x = [Fraction(0)] * nv
    for row, b in zip(tab.rows, tab.basis):
        if b < nv:
            x[b] = _exact(row[ncols])
    return LPResult(-_exact(obj[ncols]), tuple(x), tab.pivots)


def maximize(c: Sequence, **constraints) -> LPResult:
    res = minimize([-Q(v) for v in c], **constraints)
    return LPResult(-res.value, res.x, res.pivots)
