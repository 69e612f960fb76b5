"""Spectrum of the Chung Laplacian through its measure-symmetrisation.

The mean kernel is reversible with respect to the Perron measure m, so
S = D^(1/2) (I - Pm) D^(-1/2), D = diag(m), is real symmetric with the
same eigenvalues as L. This is the only floating-point module: square
roots of m end the exact pipeline.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import NoConvergence, PreconditionFailed
from .markov import Kernel

OFF_DIAGONAL_TOL = 1e-14
MAX_SWEEPS = 100


def jacobi_eigh(a: np.ndarray, tol: float = OFF_DIAGONAL_TOL, max_sweeps: int = MAX_SWEEPS):
    """Eigen-decomposition of a real symmetric matrix by cyclic Jacobi rotations.

    Sweeps over all (p, q), p < q, until the Frobenius norm of the
    off-diagonal part drops below ``tol``. Returns (eigenvalues,
    eigenvectors as columns), unsorted.
    """
    a = np.array(a, dtype=float)
    n = a.shape[0]
    v = np.eye(n)
    mask = ~np.eye(n, dtype=bool)
    for _ in range(max_sweeps):
        off = float(np.sqrt(np.sum(a[mask] ** 2)))
        if off < tol:
            return np.diag(a).copy(), v
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                ap = a[:, p].copy()
                aq = a[:, q].copy()
                a[:, p] = c * ap - s * aq
                a[:, q] = s * ap + c * aq
                ap = a[p, :].copy()
                aq = a[q, :].copy()
                a[p, :] = c * ap - s * aq
                a[q, :] = s * ap + c * aq
                a[p, q] = a[q, p] = 0.0
                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
    raise NoConvergence(f"Jacobi did not reach off-diagonal norm {tol} in {max_sweeps} sweeps")


@dataclass(frozen=True)
class Spectrum:
    """Sorted eigenvalues of L with eigenvectors of L (columns, not S)."""

    eigenvalues: tuple[float, ...]
    eigenvectors: np.ndarray

    @property
    def lambda1(self) -> float:
        return self.eigenvalues[1]


def symmetrized(Pm: Kernel, m: Sequence[Fraction]) -> np.ndarray:
    """S(x, y) = delta(x, y) - sqrt(m(x) / m(y)) Pm(x, y), after an exact reversibility check."""
    n = len(m)
    rows = Pm.rows
    for x in range(n):
        for y in range(x + 1, n):
            if m[x] * rows[x][y] != m[y] * rows[y][x]:
                raise PreconditionFailed(
                    f"mean kernel is not reversible at ({Pm.vertices[x]}, {Pm.vertices[y]})"
                )
    root = [math.sqrt(float(v)) for v in m]
    s = np.eye(n)
    for x in range(n):
        for y, p in enumerate(rows[x]):
            if p:
                s[x, y] -= root[x] / root[y] * float(p)
    # symmetric up to rounding; average to make it exact in floating point
    return (s + s.T) / 2


def spectrum(Pm: Kernel, m: Sequence[Fraction]) -> Spectrum:
    s = symmetrized(Pm, m)
    vals, vecs = jacobi_eigh(s)
    order = np.argsort(vals)
    vals = vals[order]
    # S u = lam u  <=>  L (D^(-1/2) u) = lam D^(-1/2) u
    inv_root = np.array([1.0 / math.sqrt(float(v)) for v in m])
    vecs = vecs[:, order] * inv_root[:, None]
    return Spectrum(tuple(float(v) for v in vals), vecs)


def lambda1(s: Spectrum) -> float:
    return s.lambda1


def laplacian_matrix(Pm: Kernel) -> np.ndarray:
    return np.eye(len(Pm.rows)) - np.array([[float(p) for p in r] for r in Pm.rows])


def residuals(Pm: Kernel, s: Spectrum) -> list[float]:
    """max |L v - lam v| for each eigenpair, with v scaled to unit sup norm."""
    L = laplacian_matrix(Pm)
    out = []
    for k, lam in enumerate(s.eigenvalues):
        v = s.eigenvectors[:, k]
        v = v / np.max(np.abs(v))
        out.append(float(np.max(np.abs(L @ v - lam * v))))
    return out
