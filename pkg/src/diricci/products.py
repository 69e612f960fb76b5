"""(alpha, beta)-weighted Cartesian products and their closed-form curvature.

Product vertices are named ``"(u,u')"`` and ordered lexicographically by
(left index, right index), so vertex (i, j) has index ``i * n_right + j``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .curvature import Geometry, MeanCurvatures
from .errors import NotApplicable, SamePair
from .graph import DiGraph, Number, as_ratio, validate_strongly_connected

ZERO = Fraction(0)


@dataclass(frozen=True)
class ProductSpec:
    left: DiGraph
    right: DiGraph
    alpha: Fraction
    beta: Fraction

    def __post_init__(self):
        object.__setattr__(self, "alpha", as_ratio(self.alpha))
        object.__setattr__(self, "beta", as_ratio(self.beta))
        if self.alpha <= 0 or self.beta <= 0:
            raise ValueError("alpha and beta must be positive")

    @property
    def left_share(self) -> Fraction:
        """beta / (alpha + beta), the weight on left-factor quantities."""
        return self.beta / (self.alpha + self.beta)

    @property
    def right_share(self) -> Fraction:
        return self.alpha / (self.alpha + self.beta)

    def index(self, i: int, j: int) -> int:
        return i * self.right.n + j


def product_name(u: str, v: str) -> str:
    return f"({u},{v})"


def cartesian_product(spec: ProductSpec) -> DiGraph:
    """Weight beta mu'(x') mu_xy on left moves, alpha mu(x) mu'_x'y' on right moves."""
    left, right = spec.left, spec.right
    n1, n2 = left.n, right.n
    mu1 = [left.vertex_weight(i) for i in range(n1)]
    mu2 = [right.vertex_weight(j) for j in range(n2)]
    names = tuple(product_name(u, v) for u in left.vertices for v in right.vertices)
    N = n1 * n2
    rows = [[ZERO] * N for _ in range(N)]
    for i in range(n1):
        for j in range(n2):
            a = spec.index(i, j)
            for k in range(n1):
                w = left.weights[i][k]
                if w:
                    rows[a][spec.index(k, j)] = spec.beta * mu2[j] * w
            for k in range(n2):
                w = right.weights[j][k]
                if w:
                    rows[a][spec.index(i, k)] = spec.alpha * mu1[i] * w
    g = DiGraph(names, tuple(tuple(r) for r in rows))
    validate_strongly_connected(g)
    return g


def predicted_distance(left: Geometry, right: Geometry, x: tuple[int, int], y: tuple[int, int]) -> int:
    return left.dist.rows[x[0]][y[0]] + right.dist.rows[x[1]][y[1]]


def predicted_ricci(
    spec: ProductSpec, left: Geometry, right: Geometry, x: tuple[int, int], y: tuple[int, int]
) -> Fraction:
    """Closed-form product curvature from the factor curvatures.

    ``x`` and ``y`` are (left index, right index) pairs.
    """
    (a, a2), (b, b2) = x, y
    if x == y:
        raise SamePair(product_name(left.name(a), right.name(a2)))
    if a != b and a2 != b2:
        d1 = left.dist.rows[a][b]
        d2 = right.dist.rows[a2][b2]
        total = d1 + d2
        return (
            spec.left_share * Fraction(d1, total) * left.kappa(a, b)
            + spec.right_share * Fraction(d2, total) * right.kappa(a2, b2)
        )
    if a != b:
        return spec.left_share * left.kappa(a, b)
    return spec.right_share * right.kappa(a2, b2)


def predicted_mean_curvatures(spec: ProductSpec, left: MeanCurvatures, right: MeanCurvatures) -> MeanCurvatures:
    """Per-vertex H and H_rev of the product as convex combinations of the factors'."""
    s, t = spec.left_share, spec.right_share
    H = tuple(s * h1 + t * h2 for h1 in left.H for h2 in right.H)
    H_rev = tuple(s * h1 + t * h2 for h1 in left.H_rev for h2 in right.H_rev)
    return MeanCurvatures(H, H_rev)


def predicted_mixed_curvature(
    spec: ProductSpec, left: MeanCurvatures, right: MeanCurvatures, x: tuple[int, int], y: tuple[int, int]
) -> Fraction:
    return spec.left_share * left.mixed(x[0], y[0]) + spec.right_share * right.mixed(x[1], y[1])


@dataclass(frozen=True)
class ProductConstants:
    diam: int
    Lambda: Fraction
    K: Fraction


def predicted_constants(spec: ProductSpec, left: Geometry, right: Geometry) -> ProductConstants:
    return ProductConstants(
        diam=left.diam + right.diam,
        Lambda=spec.left_share * left.Lambda + spec.right_share * right.Lambda,
        K=min(spec.left_share * left.K(), spec.right_share * right.K()),
    )


def is_maximal(geo: Geometry) -> bool:
    """Positive K and diam == Lambda / K, evaluated directly."""
    K = geo.K()
    return K > 0 and geo.diam * K == geo.Lambda


@dataclass(frozen=True)
class ProductEquivalence:
    """Both sides of the maximal-diameter product criterion.

    ``lhs``: both factors maximal and alpha D Lambda' == beta D' Lambda.
    ``rhs``: the product graph itself is maximal (computed from scratch).
    """

    lhs: bool
    rhs: bool
    factor_balance: tuple[Fraction, Fraction]

    @property
    def agree(self) -> bool:
        return self.lhs == self.rhs


def maxdiam_product_equivalence(
    spec: ProductSpec,
    left: Optional[Geometry] = None,
    right: Optional[Geometry] = None,
    product: Optional[Geometry] = None,
) -> ProductEquivalence:
    left = left or Geometry(spec.left)
    right = right or Geometry(spec.right)
    if left.K() <= 0 or right.K() <= 0:
        raise NotApplicable("both factors need positive K")
    product = product or Geometry(cartesian_product(spec))
    balance = (spec.alpha * left.diam * right.Lambda, spec.beta * right.diam * left.Lambda)
    lhs = is_maximal(left) and is_maximal(right) and balance[0] == balance[1]
    return ProductEquivalence(lhs=lhs, rhs=is_maximal(product), factor_balance=balance)


def make_spec(left: DiGraph, right: DiGraph, alpha: Number = 1, beta: Number = 1) -> ProductSpec:
    return ProductSpec(left, right, as_ratio(alpha), as_ratio(beta))
