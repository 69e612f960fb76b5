"""Comparison theorems and the maximal-diameter rigidity battery.

Everything here is an exact rational comparison except the eigenvalue
check, which uses ``EIGEN_TOL``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from . import lp
from .curvature import Geometry, RicciReport
from .errors import NotApplicable, PreconditionFailed, SamePair
from .graph import check_geodesic, geodesic_pairs
from .markov import laplacian_apply
from .spectral import spectrum

EIGEN_TOL = 1e-9
ZERO = Fraction(0)


@dataclass(frozen=True)
class BonnetMyers:
    bound: Fraction
    diam: int
    holds: bool
    equality: bool


def bonnet_myers(K: Fraction, Lambda: Fraction, diam: int) -> BonnetMyers:
    """diam <= Lambda / K, for K > 0."""
    if K <= 0:
        raise NotApplicable(f"diameter bound needs K > 0, got K = {K}")
    bound = Lambda / K
    return BonnetMyers(bound=bound, diam=diam, holds=diam <= bound, equality=diam == bound)


def pairwise_diameter_violations(report: RicciReport) -> list[tuple[int, int]]:
    """Pairs with kappa > 0 where d(x, y) > H(x, y) / kappa(x, y)."""
    rows = report.dist.rows
    return [
        (x, y)
        for (x, y), k in report.kappa.items()
        if k > 0 and rows[x][y] * k > report.mixed(x, y)
    ]


def pairwise_diameter_check(report: RicciReport) -> bool:
    return not pairwise_diameter_violations(report)


def laplacian_comparison_residual(
    geo: Geometry, x: int, K: Optional[Fraction] = None
) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]]:
    """r = L rho_x - K rho_x - H_x and r_rev = L rho_rev_x - K rho_rev_x - H_rev_x.

    Both are nonnegative everywhere by the Laplacian comparison theorem.
    """
    if K is None:
        K = geo.K()
    rho = geo.dist.rho(x)
    rho_rev = geo.dist.rho_rev(x)
    H, H_rev = geo.mean.H[x], geo.mean.H_rev[x]
    L_rho = laplacian_apply(geo.Pm, rho)
    L_rev = laplacian_apply(geo.Pm, rho_rev)
    r = tuple(a - K * b - H for a, b in zip(L_rho, rho))
    r_rev = tuple(a - K * b - H_rev for a, b in zip(L_rev, rho_rev))
    return r, r_rev


@dataclass(frozen=True)
class Suspension:
    """The three conditions for being spherically suspended with given poles."""

    poles: tuple[str, str]
    covered: bool
    constant_curvature: bool
    extremal_mean: bool

    @property
    def passed(self) -> bool:
        return self.covered and self.constant_curvature and self.extremal_mean


def is_spherically_suspended(geo: Geometry, x, y) -> Suspension:
    """Check the suspension conditions for poles (x, y).

    Condition 2 is checked on geodesic pairs: (z, w) sits in this order
    on some minimal x -> y geodesic iff d(x,z) + d(z,w) + d(w,y) = d(x,y),
    which avoids enumerating geodesics.
    """
    x, y = geo.index(x), geo.index(y)
    if x == y:
        raise SamePair(geo.name(x))
    rows = geo.dist.rows
    dxy = rows[x][y]
    K = geo.K()
    covered = all(rows[x][z] + rows[z][y] == dxy for z in range(geo.n))
    constant = all(geo.kappa(z, w) == K for z, w in sorted(geodesic_pairs(geo.dist, x, y)))
    extremal = geo.mean.mixed(x, y) == geo.Lambda
    return Suspension((geo.name(x), geo.name(y)), covered, constant, extremal)


def diameter_poles(geo: Geometry) -> list[tuple[int, int]]:
    rows = geo.dist.rows
    return [(x, y) for x in range(geo.n) for y in range(geo.n) if rows[x][y] == geo.diam]


def eigenfunction_defect(geo: Geometry, x: int, K: Optional[Fraction] = None) -> tuple[Fraction, ...]:
    """L f - K f for f = rho_x + H_x / K; identically zero at maximal diameter."""
    if K is None:
        K = geo.K()
    if K <= 0:
        raise NotApplicable("eigenfunction candidate needs K > 0")
    f = [r + geo.mean.H[x] / K for r in geo.dist.rho(x)]
    Lf = laplacian_apply(geo.Pm, f)
    return tuple(a - K * b for a, b in zip(Lf, f))


@dataclass
class RigidityVerdict:
    """Outcome of the maximal-diameter battery.

    When the graph is not of maximal diameter no rigidity claim applies and
    the per-pole fields stay empty.
    """

    K: Fraction
    Lambda: Fraction
    diam: int
    bound: Optional[Fraction]
    is_maximal: bool
    lambda1: float
    poles: list[tuple[str, str]] = field(default_factory=list)
    suspension: list[Suspension] = field(default_factory=list)
    laplacian_equality: Optional[bool] = None
    pole_identity: Optional[bool] = None
    eigenfunction_exact: Optional[bool] = None
    eigen_equality: Optional[bool] = None

    @property
    def checks(self) -> dict[str, bool]:
        if not self.is_maximal:
            return {}
        return {
            "suspension": all(s.passed for s in self.suspension),
            "laplacian_equality": bool(self.laplacian_equality),
            "pole_identity": bool(self.pole_identity),
            "eigenfunction_exact": bool(self.eigenfunction_exact),
            "eigen_equality": bool(self.eigen_equality),
        }

    @property
    def passed(self) -> bool:
        """True unless the graph is maximal and some rigidity check fails."""
        return all(self.checks.values())


def cheng_verify(geo: Geometry) -> RigidityVerdict:
    K, Lambda, diam = geo.K(), geo.Lambda, geo.diam
    lam1 = spectrum(geo.Pm, geo.m).lambda1
    bound = Lambda / K if K > 0 else None
    maximal = K > 0 and diam == bound
    verdict = RigidityVerdict(K=K, Lambda=Lambda, diam=diam, bound=bound, is_maximal=maximal, lambda1=lam1)
    if not maximal:
        return verdict
    poles = diameter_poles(geo)
    verdict.poles = [(geo.name(x), geo.name(y)) for x, y in poles]
    verdict.suspension = [is_spherically_suspended(geo, x, y) for x, y in poles]
    lap_ok = True
    identity_ok = True
    eig_ok = True
    for x, y in poles:
        r, _ = laplacian_comparison_residual(geo, x, K)
        _, r_rev = laplacian_comparison_residual(geo, y, K)
        lap_ok &= not any(r) and not any(r_rev)
        identity_ok &= geo.kappa(x, y) == K and geo.mean.mixed(x, y) == K * diam == Lambda
        eig_ok &= not any(eigenfunction_defect(geo, x, K))
    verdict.laplacian_equality = lap_ok
    verdict.pole_identity = identity_ok
    verdict.eigenfunction_exact = eig_ok
    verdict.eigen_equality = abs(lam1 - float(K)) <= EIGEN_TOL
    return verdict


def _spread_lp(geo: Geometry):
    """Constraint block for superharmonic g = f + 1 with g in [0, 2]."""
    n = geo.n
    A_ub, b_ub = [], []
    for x, prow in enumerate(geo.Pm.rows):
        # -(L g)(x) <= 0; L kills constants so the shift is harmless
        A_ub.append([p - (1 if z == x else 0) for z, p in enumerate(prow)])
        b_ub.append(0)
    for z in range(n):
        A_ub.append([1 if k == z else 0 for k in range(n)])
        b_ub.append(2)

    def solve(u: int, v: int) -> Fraction:
        c = [0] * n
        c[v] += 1
        c[u] -= 1
        return lp.maximize(c, A_ub=A_ub, b_ub=b_ub).value

    return solve


def superharmonic_spread(geo: Geometry) -> Fraction:
    """max over vertex pairs (u, v) of max f(v) - f(u), f superharmonic with values in [-1, 1].

    Screens with a reference vertex r first: if f(v) - f(r) and f(r) - f(u)
    both have maximum 0 for all u, v then every feasible f is constant and
    the spread is exactly 0 without solving all n(n-1) pair problems.
    """
    n = geo.n
    solve = _spread_lp(geo)
    r = 0
    screen = [solve(r, v) for v in range(1, n)] + [solve(u, r) for u in range(1, n)]
    if not any(screen):
        return ZERO
    return max(solve(u, v) for u in range(n) for v in range(n) if u != v)


def _require_maximal_pole(geo: Geometry, x: int, y: int) -> None:
    K = geo.K()
    if not (K > 0 and geo.diam * K == geo.Lambda):
        raise PreconditionFailed("graph is not of maximal diameter")
    if geo.dist.rows[x][y] != geo.diam:
        raise PreconditionFailed(f"d({geo.name(x)}, {geo.name(y)}) is not the diameter")


def pole_sum_harmonicity(geo: Geometry, x, y) -> tuple[Fraction, ...]:
    """L(rho_x + rho_rev_y) for a diameter pair of a maximal-diameter graph."""
    x, y = geo.index(x), geo.index(y)
    _require_maximal_pole(geo, x, y)
    f = [a + b for a, b in zip(geo.dist.rho(x), geo.dist.rho_rev(y))]
    return laplacian_apply(geo.Pm, f)


def subconstant_check(geo: Geometry, geodesic: Sequence) -> bool:
    """If kappa(x, y) = K at the ends of a minimal geodesic, kappa = K on every sub-pair."""
    path = [geo.index(v) for v in geodesic]
    check_geodesic(geo.graph, geo.dist, path)
    K = geo.K()
    if geo.kappa(path[0], path[-1]) != K:
        raise PreconditionFailed("kappa at the geodesic ends differs from K")
    return all(
        geo.kappa(path[a], path[b]) == K
        for a in range(len(path))
        for b in range(a + 1, len(path))
    )
