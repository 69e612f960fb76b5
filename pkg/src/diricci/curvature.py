"""Ricci curvature and asymptotic mean curvatures of directed graphs.

``ricci`` is the primary route: one exact LP per pair over unit-gradient
1-Lipschitz potentials. ``ricci_bruteforce`` (integer potentials) and
``ricci_eps_limit`` (transport at shrinking idleness) are kept as
independent checks and must agree with it exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from . import lp
from .errors import NoStabilization, SamePair, TooLarge
from .graph import (
    DiGraph,
    DistMatrix,
    Number,
    all_pairs_distance,
    as_ratio,
    check_geodesic,
    diameter,
)
from .markov import Kernel, mean_kernel, perron_measure, reverse_kernel, transition_kernel
from .transport import BRUTEFORCE_MAX_N, enumerate_lipschitz, smoothed_measure, wasserstein

ZERO = Fraction(0)


class Geometry:
    """Everything curvature computations need about one graph, computed once.

    Holds the hop distances, the transition, reverse and mean kernels and
    the Perron measure, and memoises Ricci curvatures per ordered pair.
    Vertex arguments of the methods below are indices into ``graph.vertices``.
    """

    def __init__(self, graph: DiGraph):
        self.graph = graph
        self.dist = all_pairs_distance(graph)
        self.diam = diameter(self.dist)
        self.P = transition_kernel(graph)
        self.m = perron_measure(self.P)
        self.P_rev = reverse_kernel(self.P, self.m)
        self.Pm = mean_kernel(self.P, self.P_rev)
        self._kappa: dict[tuple[int, int], Fraction] = {}
        self._mean: Optional[MeanCurvatures] = None

    @property
    def n(self) -> int:
        return self.graph.n

    def index(self, vertex: str | int) -> int:
        return vertex if isinstance(vertex, int) else self.graph.index(vertex)

    def name(self, i: int) -> str:
        return self.graph.vertices[i]

    def kappa(self, x: int, y: int) -> Fraction:
        key = (x, y)
        if key not in self._kappa:
            self._kappa[key] = ricci(self, x, y)
        return self._kappa[key]

    @property
    def mean(self) -> "MeanCurvatures":
        if self._mean is None:
            self._mean = mean_curvature(self.Pm, self.dist)
        return self._mean

    @property
    def Lambda(self) -> Fraction:
        return self.mean.Lambda

    def K(self) -> Fraction:
        """Minimum of kappa over edges."""
        return min(self.kappa(i, j) for i, j in self.graph.edges())


def _geometry(obj: DiGraph | Geometry) -> Geometry:
    return obj if isinstance(obj, Geometry) else Geometry(obj)


@dataclass(frozen=True)
class MeanCurvatures:
    """H(x) = (L rho_x)(x) and H_rev(x) = (L rho_rev_x)(x), per vertex."""

    H: tuple[Fraction, ...]
    H_rev: tuple[Fraction, ...]

    def mixed(self, x: int, y: int) -> Fraction:
        return -(self.H[x] + self.H_rev[y])

    @property
    def Lambda(self) -> Fraction:
        # the mixed curvature separates, so its max over pairs splits
        return -min(self.H) - min(self.H_rev)


def mean_curvature(Pm: Kernel, d: DistMatrix) -> MeanCurvatures:
    rows = d.rows
    H = []
    H_rev = []
    for x, prow in enumerate(Pm.rows):
        H.append(-sum((p * rows[x][y] for y, p in enumerate(prow) if p), ZERO))
        H_rev.append(-sum((p * rows[y][x] for y, p in enumerate(prow) if p), ZERO))
    return MeanCurvatures(tuple(H), tuple(H_rev))


def _pair(geo: Geometry, x, y) -> tuple[int, int]:
    x, y = geo.index(x), geo.index(y)
    if x == y:
        raise SamePair(geo.name(x))
    return x, y


def kappa_eps(geo: DiGraph | Geometry, x, y, eps: Number) -> Fraction:
    """1 - W(nu_x^eps, nu_y^eps) / d(x, y)."""
    geo = _geometry(geo)
    x, y = _pair(geo, x, y)
    eps = as_ratio(eps)
    w, _ = wasserstein(smoothed_measure(geo.Pm, x, eps), smoothed_measure(geo.Pm, y, eps), geo.dist)
    return 1 - w / geo.dist.rows[x][y]


def _ricci_lp(geo: Geometry, x: int, y: int) -> tuple[Fraction, tuple[Fraction, ...]]:
    """Solve the potential LP for kappa(x, y); returns (kappa, optimal f).

    Gauge f(x) = 0. Variables g(z) = f(z) + d(z, x) >= 0 for z != x.
    Lipschitz with respect to a path metric only needs checking along
    edges, so there is one inequality per edge not entering x (edges into
    x give g(z) >= 0, already implied). The objective
    grad_xy L f = (d + sum_z (Pm(x,z) - Pm(y,z)) f(z)) / d.
    """
    n = geo.n
    rows = geo.dist.rows
    dxy = rows[x][y]
    col = {z: k for k, z in enumerate(z for z in range(n) if z != x)}
    back = [rows[z][x] for z in range(n)]
    px, py = geo.Pm.rows[x], geo.Pm.rows[y]

    c = [ZERO] * (n - 1)
    const = Fraction(dxy)
    for z, k in col.items():
        cz = px[z] - py[z]
        if cz:
            c[k] = cz / dxy
            const -= cz * back[z]
    const /= dxy

    A_ub, b_ub = [], []
    for z, w in geo.graph.edges():
        if w == x:
            continue
        row = [0] * (n - 1)
        row[col[w]] = 1
        if z != x:
            row[col[z]] = -1
        A_ub.append(row)
        b_ub.append(1 + back[w] - back[z])
    eq = [0] * (n - 1)
    eq[col[y]] = 1
    res = lp.minimize(c, A_ub=A_ub, b_ub=b_ub, A_eq=[eq], b_eq=[dxy + back[y]])
    f = [ZERO] * n
    for z, k in col.items():
        f[z] = res.x[k] - back[z]
    return res.value + const, tuple(f)


def ricci(geo: DiGraph | Geometry, x, y) -> Fraction:
    """Exact kappa(x, y) = min of grad_xy L f over unit-gradient 1-Lipschitz f."""
    geo = _geometry(geo)
    x, y = _pair(geo, x, y)
    return _ricci_lp(geo, x, y)[0]


def ricci_potential(geo: DiGraph | Geometry, x, y) -> tuple[Fraction, ...]:
    """An optimal potential behind :func:`ricci`, normalised by f(x) = 0."""
    geo = _geometry(geo)
    x, y = _pair(geo, x, y)
    return _ricci_lp(geo, x, y)[1]


def ricci_bruteforce(geo: DiGraph | Geometry, x, y) -> Fraction:
    """kappa(x, y) by enumerating integer potentials.

    The constraint system (differences bounded by integers) is totally
    unimodular, so the LP minimum is attained at an integer potential.
    The objective reads f only on x, y and their mean-kernel neighbours;
    a 1-Lipschitz function there extends to all of V, so only that set is
    enumerated.
    """
    geo = _geometry(geo)
    x, y = _pair(geo, x, y)
    if geo.n > BRUTEFORCE_MAX_N:
        raise TooLarge(geo.n, BRUTEFORCE_MAX_N)
    dxy = geo.dist.rows[x][y]
    px, py = geo.Pm.rows[x], geo.Pm.rows[y]
    support = [z for z in range(geo.n) if z in (x, y) or px[z] or py[z]]
    coef = {z: px[z] - py[z] for z in support if px[z] != py[z]}
    best = None
    for f in enumerate_lipschitz(support, {x: 0, y: dxy}, geo.dist):
        val = sum((cz * f[z] for z, cz in coef.items()), ZERO)
        if best is None or val < best:
            best = val
    return (dxy + best) / dxy


def ricci_eps_limit(geo: DiGraph | Geometry, x, y, k_min: int = 4, k_max: int = 20) -> Fraction:
    """kappa(x, y) as the limit of kappa_eps / eps along eps = 2^-k.

    kappa_eps is concave and piecewise linear in eps with kappa_0 = 0, so
    the ratio is exactly constant on the first linear piece; two equal
    consecutive ratios certify that piece has been reached.
    """
    geo = _geometry(geo)
    x, y = _pair(geo, x, y)
    prev = None
    for k in range(k_min, k_max + 1):
        eps = Fraction(1, 2**k)
        ratio = kappa_eps(geo, x, y, eps) / eps
        if ratio == prev:
            return ratio
        prev = ratio
    raise NoStabilization(f"kappa_eps/eps did not stabilise by k={k_max}")


@dataclass(frozen=True)
class RicciReport:
    """Curvature summary of one graph.

    ``kappa`` is keyed by index pairs. ``K`` is the minimum over edges and
    ``min_all_pairs`` the minimum over every computed pair.
    """

    vertices: tuple[str, ...]
    kappa: dict[tuple[int, int], Fraction]
    K: Fraction
    Lambda: Fraction
    mean: MeanCurvatures
    dist: DistMatrix
    diam: int
    min_all_pairs: Fraction

    def kappa_of(self, u: str, v: str) -> Fraction:
        return self.kappa[(self.vertices.index(u), self.vertices.index(v))]

    def mixed(self, x: int, y: int) -> Fraction:
        return self.mean.mixed(x, y)


def curvature_report(geo: DiGraph | Geometry, pairs: str = "all") -> RicciReport:
    """Ricci curvature over all ordered pairs (or only edges), plus K and Lambda."""
    geo = _geometry(geo)
    n = geo.n
    if pairs == "all":
        todo: Iterable[tuple[int, int]] = [(i, j) for i in range(n) for j in range(n) if i != j]
    elif pairs == "edges":
        todo = list(geo.graph.edges())
    else:
        raise ValueError(f"pairs must be 'all' or 'edges', got {pairs!r}")
    kappa = {p: geo.kappa(*p) for p in todo}
    K = min(kappa[e] for e in geo.graph.edges())
    return RicciReport(
        vertices=geo.graph.vertices,
        kappa=kappa,
        K=K,
        Lambda=geo.Lambda,
        mean=geo.mean,
        dist=geo.dist,
        diam=geo.diam,
        min_all_pairs=min(kappa.values()),
    )


def chain_inequality_check(
    geo: DiGraph | Geometry, geodesic: Sequence, a: int, b: int
) -> bool:
    """Check the chain inequality for the sub-segment (x_a, x_b) of a minimal geodesic.

    kappa(x, y) d(x, y) >= sum_{i<a} kappa(x_i, x_{i+1}) + kappa(x_a, x_b) (b - a)
                           + sum_{i>=b} kappa(x_i, x_{i+1})
    The three cases (interior, b at the end, a at the start) are the same
    formula with an empty sum.
    """
    geo = _geometry(geo)
    path = [geo.index(v) for v in geodesic]
    check_geodesic(geo.graph, geo.dist, path)
    length = len(path) - 1
    if not 0 <= a < b <= length:
        raise ValueError(f"need 0 <= a < b <= {length}, got a={a}, b={b}")
    lhs = geo.kappa(path[0], path[-1]) * length
    rhs = geo.kappa(path[a], path[b]) * (b - a)
    rhs += sum((geo.kappa(path[i], path[i + 1]) for i in range(a)), ZERO)
    rhs += sum((geo.kappa(path[i], path[i + 1]) for i in range(b, length)), ZERO)
    return lhs >= rhs
