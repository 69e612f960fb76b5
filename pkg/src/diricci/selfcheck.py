"""Embedded fixture suite behind ``diricci selfcheck``.

Each criterion returns a :class:`CriterionResult`; :func:`run_all` runs
them in order and shares the corpus geometries between criteria 6 to 8.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .corpus import random_corpus
from .curvature import (
    Geometry,
    chain_inequality_check,
    curvature_report,
    ricci_bruteforce,
    ricci_eps_limit,
)
from .generators import directed_complete, triforce
from .graph import minimal_geodesics
from .products import (
    cartesian_product,
    make_spec,
    maxdiam_product_equivalence,
    predicted_constants,
    predicted_ricci,
)
from .rigidity import (
    EIGEN_TOL,
    cheng_verify,
    laplacian_comparison_residual,
    pairwise_diameter_check,
    superharmonic_spread,
)
from .spectral import spectrum
from .transport import Coupling, kantorovich_bruteforce, smoothed_measure, wasserstein

F = Fraction


@dataclass(frozen=True)
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        tail = f" ({self.detail})" if self.detail else ""
        return f"[{status}] criterion {self.number}: {self.title}{tail}"


def complete_kappa_table(n: int) -> dict[int, Fraction]:
    """Expected kappa(x1, x_i) over the edges x1 -> x_i, i = 2..n-1 (1-based)."""
    if n == 3:
        return {2: F(3, 2)}
    if n == 4:
        return {2: F(1), 3: F(3, 2)}
    if n == 5:
        return {2: F(1), 3: F(7, 6), 4: F(7, 6)}
    high = 1 + F(1, 2 * (n - 2))
    return {i: high if i in (3, n - 1) else F(1) for i in range(2, n)}


class SelfcheckContext:
    """Lazily built geometries shared across criteria."""

    def __init__(self):
        self._geo: dict[str, Geometry] = {}
        self._reports: dict[str, object] = {}

    def geometry(self, key: str, build: Callable) -> Geometry:
        if key not in self._geo:
            self._geo[key] = Geometry(build())
        return self._geo[key]

    def report(self, key: str, geo: Geometry):
        if key not in self._reports:
            self._reports[key] = curvature_report(geo)
        return self._reports[key]

    def corpus(self) -> list[tuple[str, Geometry]]:
        return [(name, self.geometry(name, lambda g=g: g)) for name, g in random_corpus()]

    def fixtures(self) -> list[tuple[str, Geometry]]:
        k3 = lambda: directed_complete(3)  # noqa: E731
        out = [(f"kn:{n}", self.geometry(f"kn:{n}", lambda n=n: directed_complete(n))) for n in range(3, 8)]
        out.append(("triforce", self.geometry("triforce", triforce)))
        sq = lambda: cartesian_product(make_spec(k3(), k3()))  # noqa: E731
        out.append(("kn:3 x kn:3", self.geometry("kn:3 x kn:3", sq)))
        out.append((
            "(kn:3 x kn:3) x_(1,2) kn:3",
            self.geometry(
                "(kn:3 x kn:3) x_(1,2) kn:3",
                lambda: cartesian_product(make_spec(sq(), k3(), 1, 2)),
            ),
        ))
        out.append((
            "kn:3 x_(2,1) triforce",
            self.geometry("kn:3 x_(2,1) triforce", lambda: cartesian_product(make_spec(k3(), triforce(), 2, 1))),
        ))
        return out


def _fail(msgs: list[str]) -> str:
    return "; ".join(msgs[:3]) + (f"; ... {len(msgs) - 3} more" if len(msgs) > 3 else "")


def criterion_1(ctx: SelfcheckContext) -> CriterionResult:
    geo = ctx.geometry("kn:3", lambda: directed_complete(3))
    bad = []
    if any(geo.kappa(x, y) != F(3, 2) for x, y in geo.graph.edges()):
        bad.append("edge kappa != 3/2")
    if (geo.diam, geo.Lambda, geo.K()) != (2, 3, F(3, 2)):
        bad.append(f"(diam, Lambda, K) = {(geo.diam, geo.Lambda, geo.K())}")
    if geo.Lambda / geo.K() != geo.diam:
        bad.append("Lambda / K != diam")
    verdict = cheng_verify(geo)
    if not (verdict.is_maximal and verdict.passed):
        bad.append(f"rigidity checks {verdict.checks}")
    if abs(verdict.lambda1 - 1.5) > EIGEN_TOL:
        bad.append(f"lambda1 = {verdict.lambda1}")
    return CriterionResult(1, "K3: kappa = 3/2, maximal, rigid, lambda1 = 3/2", not bad, _fail(bad))


def criterion_2(ctx: SelfcheckContext) -> CriterionResult:
    bad = []
    for n in range(4, 8):
        geo = ctx.geometry(f"kn:{n}", lambda n=n: directed_complete(n))
        for i, want in complete_kappa_table(n).items():
            got = geo.kappa(0, i - 1)
            if got != want:
                bad.append(f"n={n}: kappa(x1,x{i}) = {got} != {want}")
        H = -(1 + F(1, 2 * (n - 2)))
        if any(h != H for h in geo.mean.H) or any(h != H for h in geo.mean.H_rev):
            bad.append(f"n={n}: mean curvature")
        if (geo.Lambda, geo.diam, geo.K()) != (2 + F(1, n - 2), 2, 1):
            bad.append(f"n={n}: (Lambda, diam, K) = {(geo.Lambda, geo.diam, geo.K())}")
        if geo.diam * geo.K() == geo.Lambda:
            bad.append(f"n={n}: unexpected diameter equality")
    return CriterionResult(2, "Kn tables, n = 4..7", not bad, _fail(bad))


def criterion_3(ctx: SelfcheckContext) -> CriterionResult:
    geo = ctx.geometry("triforce", triforce)
    bad = []
    x = {f"x{i}": i - 1 for i in range(1, 7)}
    row1 = {x["x2"]: F(1, 2), x["x6"]: F(1, 2)}
    row2 = {x[v]: F(1, 4) for v in ("x1", "x3", "x4", "x6")}
    for src, want in ((x["x1"], row1), (x["x2"], row2)):
        got = {z: p for z, p in enumerate(geo.Pm.rows[src]) if p}
        if got != want:
            bad.append(f"mean kernel row {geo.name(src)}")
    if any(h != F(-3, 2) for h in geo.mean.H + geo.mean.H_rev):
        bad.append("mean curvature != -3/2")
    if (geo.Lambda, geo.diam) != (3, 4):
        bad.append(f"(Lambda, diam) = {(geo.Lambda, geo.diam)}")
    edges = list(geo.graph.edges())
    if len(edges) != 9 or any(geo.kappa(a, b) != F(3, 4) for a, b in edges) or geo.K() != F(3, 4):
        bad.append("edge kappa != 3/4")
    verdict = cheng_verify(geo)
    if not (verdict.is_maximal and verdict.passed):
        bad.append(f"rigidity checks {verdict.checks}")
    if abs(verdict.lambda1 - 0.75) > EIGEN_TOL:
        bad.append(f"lambda1 = {verdict.lambda1}")
    return CriterionResult(3, "triforce: kernel rows, H, Lambda, diam, kappa = 3/4, rigid", not bad, _fail(bad))


def triforce_witnesses(eps: Fraction) -> list[tuple[tuple[str, str], dict, dict]]:
    """(pair, coupling, potential) certificates for W on the triforce edge x1 -> x2.

    The coupling needs mass eps/2 on (x2, x2) to have the right marginals;
    that cell costs nothing.
    """
    q = eps / 4
    return [
        (
            ("x1", "x2"),
            {("x1", "x2"): 1 - eps - eps / 2, ("x2", "x2"): eps / 2, ("x1", "x1"): q,
             ("x1", "x3"): q, ("x6", "x4"): q, ("x6", "x6"): q},
            {"x3": 2, "x2": 1, "x6": -1},
        ),
    ]


def check_triforce_witnesses(geo: Geometry, eps: Fraction) -> list[str]:
    """Compare W against the coupling (upper bound) and the potential (lower bound)."""
    bad = []
    names = geo.graph.vertices
    target = 1 - F(3, 4) * eps
    for (u, v), coupling, potential in triforce_witnesses(eps):
        nu0 = smoothed_measure(geo.Pm, geo.index(u), eps)
        nu1 = smoothed_measure(geo.Pm, geo.index(v), eps)
        w, _ = wasserstein(nu0, nu1, geo.dist)
        plan = tuple(tuple(coupling.get((a, b), F(0)) for b in names) for a in names)
        pi = Coupling(names, plan)
        if pi.first_marginal() != nu0 or pi.second_marginal() != nu1:
            bad.append(f"{u}->{v}: coupling marginals")
        f = [potential.get(z, 0) for z in names]
        lipschitz = all(f[b] - f[a] <= 1 for a, b in geo.graph.edges())
        dual = sum((fz * (b - a) for fz, a, b in zip(f, nu0, nu1)), F(0))
        if not lipschitz:
            bad.append(f"{u}->{v}: potential not 1-Lipschitz")
        if not (dual <= w <= pi.cost(geo.dist)) or not (w == target == dual == pi.cost(geo.dist)):
            bad.append(f"{u}->{v} eps={eps}: W = {w}, coupling {pi.cost(geo.dist)}, dual {dual}")
    return bad


def criterion_4(ctx: SelfcheckContext) -> CriterionResult:
    geo = ctx.geometry("triforce", triforce)
    bad = []
    for eps in (F(1, 10), F(1, 64)):
        bad += check_triforce_witnesses(geo, eps)
    return CriterionResult(4, "triforce W = 1 - 3 eps / 4 with primal and dual witnesses", not bad, _fail(bad))


def criterion_5(ctx: SelfcheckContext) -> CriterionResult:
    bad = []
    k3 = ctx.geometry("kn:3", lambda: directed_complete(3))
    spec = make_spec(k3.graph, k3.graph)
    sq = ctx.geometry("kn:3 x kn:3", lambda: cartesian_product(spec))
    if (sq.diam, sq.Lambda, sq.K()) != (4, 3, F(3, 4)):
        bad.append(f"K3xK3 constants {(sq.diam, sq.Lambda, sq.K())}")
    pred = predicted_constants(spec, k3, k3)
    if (pred.diam, pred.Lambda, pred.K) != (4, 3, F(3, 4)):
        bad.append("K3xK3 closed-form constants")
    nr = k3.n
    for a in range(sq.n):
        for b in range(sq.n):
            if a != b:
                want = predicted_ricci(spec, k3, k3, divmod(a, nr), divmod(b, nr))
                if sq.kappa(a, b) != want:
                    bad.append(f"kappa{(sq.name(a), sq.name(b))} = {sq.kappa(a, b)} != {want}")
    spec2 = make_spec(sq.graph, k3.graph, 1, 2)
    it = ctx.geometry("(kn:3 x kn:3) x_(1,2) kn:3", lambda: cartesian_product(spec2))
    if (it.diam, it.Lambda, it.K()) != (6, 3, F(1, 2)):
        bad.append(f"iterated constants {(it.diam, it.Lambda, it.K())}")
    eq = maxdiam_product_equivalence(spec2, sq, k3, it)
    if not (eq.lhs and eq.rhs):
        bad.append(f"iterated equivalence lhs={eq.lhs} rhs={eq.rhs}")
    return CriterionResult(5, "product fixtures match the closed forms", not bad, _fail(bad))


def criterion_6(ctx: SelfcheckContext) -> CriterionResult:
    bad = []
    half = F(1, 2)
    pairs = 0
    for name, geo in ctx.corpus():
        for x in range(geo.n):
            for y in range(geo.n):
                if x == y:
                    continue
                pairs += 1
                a, b, c = geo.kappa(x, y), ricci_bruteforce(geo, x, y), ricci_eps_limit(geo, x, y)
                if not a == b == c:
                    bad.append(f"{name} ({x},{y}): lp {a}, brute {b}, eps {c}")
                nu0 = smoothed_measure(geo.Pm, x, half)
                nu1 = smoothed_measure(geo.Pm, y, half)
                w, _ = wasserstein(nu0, nu1, geo.dist)
                k, _ = kantorovich_bruteforce(nu0, nu1, geo.dist)
                if w != k:
                    bad.append(f"{name} ({x},{y}): primal {w} != dual {k}")
    return CriterionResult(6, "oracle equivalence on the random corpus", not bad, _fail(bad) or f"{pairs} pairs")


def theorem_violations(name: str, geo: Geometry, report) -> list[str]:
    """All comparison-theorem checks of criterion 7 for one graph."""
    bad = []
    n, m, rows = geo.n, geo.m, geo.Pm.rows
    if any(m[x] * rows[x][y] != m[y] * rows[y][x] for x in range(n) for y in range(n)):
        bad.append(f"{name}: detailed balance")
    K = geo.K()
    for x in range(n):
        r, r_rev = laplacian_comparison_residual(geo, x, K)
        if min(r + r_rev) < 0:
            bad.append(f"{name}: Laplacian comparison at {geo.name(x)}")
    if not pairwise_diameter_check(report):
        bad.append(f"{name}: pairwise diameter comparison")
    for x in range(n):
        for y in range(n):
            if x == y:
                continue
            length = geo.dist.rows[x][y]
            for path in minimal_geodesics(geo.graph, geo.dist, x, y):
                for a in range(length):
                    for b in range(a + 1, length + 1):
                        if (a, b) != (0, length) and not chain_inequality_check(geo, path, a, b):
                            bad.append(f"{name}: chain inequality on {path} at ({a},{b})")
    if report.min_all_pairs < K:
        bad.append(f"{name}: min kappa {report.min_all_pairs} < K {K}")
    if K > 0:
        lam1 = spectrum(geo.Pm, geo.m).lambda1
        if lam1 < float(K) - EIGEN_TOL:
            bad.append(f"{name}: lambda1 {lam1} < K {K}")
    spread = superharmonic_spread(geo)
    if spread != 0:
        bad.append(f"{name}: superharmonic spread {spread}")
    return bad


def criterion_7(ctx: SelfcheckContext) -> CriterionResult:
    bad = []
    for name, geo in ctx.corpus():
        bad += theorem_violations(name, geo, ctx.report(name, geo))
    return CriterionResult(7, "comparison theorems on the random corpus", not bad, _fail(bad))


def criterion_8(ctx: SelfcheckContext) -> CriterionResult:
    bad = []
    maximal = []
    for name, geo in ctx.corpus() + ctx.fixtures():
        verdict = cheng_verify(geo)
        if not verdict.is_maximal:
            continue
        maximal.append(name)
        failed = [k for k, ok in verdict.checks.items() if not ok]
        if failed:
            bad.append(f"{name}: {failed}")
        if abs(verdict.lambda1 - float(verdict.K)) > EIGEN_TOL:
            bad.append(f"{name}: lambda1 {verdict.lambda1} vs K {verdict.K}")
    if not maximal:
        bad.append("no maximal-diameter graph found")
    return CriterionResult(
        8, "rigidity on every maximal-diameter graph", not bad, _fail(bad) or f"{len(maximal)} graphs"
    )


CRITERIA = (criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7, criterion_8)


def run_all(ctx: Optional[SelfcheckContext] = None) -> list[CriterionResult]:
    ctx = ctx or SelfcheckContext()
    results = []
    for criterion in CRITERIA:
        try:
            results.append(criterion(ctx))
        except Exception as exc:  # a crash is a failed criterion, not a traceback
            number = CRITERIA.index(criterion) + 1
            results.append(CriterionResult(number, criterion.__name__, False, f"{type(exc).__name__}: {exc}"))
    return results
