from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from diricci.curvature import Geometry, curvature_report
from diricci.errors import NotApplicable, NotAGeodesic, PreconditionFailed, SamePair
from diricci.generators import directed_cycle, random_strongly_connected
from diricci.graph import minimal_geodesics
from diricci.markov import laplacian_apply
from diricci.rigidity import (
    bonnet_myers,
    cheng_verify,
    diameter_poles,
    eigenfunction_defect,
    is_spherically_suspended,
    laplacian_comparison_residual,
    pairwise_diameter_check,
    pairwise_diameter_violations,
    pole_sum_harmonicity,
    subconstant_check,
    superharmonic_spread,
)

from conftest import geometry, weighted_graphs


def test_bonnet_myers_examples():
    tri = geometry("triforce")
    bm = bonnet_myers(tri.K(), tri.Lambda, tri.diam)
    assert (bm.bound, bm.holds, bm.equality) == (4, True, True)
    k3 = geometry("kn:3")
    assert bonnet_myers(k3.K(), k3.Lambda, k3.diam).bound == 2
    k5 = geometry("kn:5")
    bm = bonnet_myers(k5.K(), k5.Lambda, k5.diam)
    assert (bm.bound, bm.diam, bm.holds, bm.equality) == (F(7, 3), 2, True, False)
    with pytest.raises(NotApplicable):
        bonnet_myers(F(0), F(3), 2)


@pytest.mark.parametrize("name", ["triforce", "kn:3", "kn:4", "kn:5", "kn:6", "kn:7"])
def test_pairwise_diameter_fixtures(name):
    assert pairwise_diameter_check(curvature_report(geometry(name)))


def test_laplacian_comparison_triforce():
    tri = geometry("triforce")
    for x in range(6):
        r, r_rev = laplacian_comparison_residual(tri, x)
        assert min(r) >= 0 and min(r_rev) >= 0
        assert r[x] == 0 and r_rev[x] == 0
    r, _ = laplacian_comparison_residual(tri, 0)
    _, r_rev = laplacian_comparison_residual(tri, 4)
    assert not any(r) and not any(r_rev)


def test_suspension_examples():
    tri = geometry("triforce")
    s = is_spherically_suspended(tri, "x1", "x5")
    assert (s.covered, s.constant_curvature, s.extremal_mean) == (True, True, True)
    k3 = geometry("kn:3")
    for x, y in diameter_poles(k3):
        assert is_spherically_suspended(k3, x, y).passed
    k5 = geometry("kn:5")
    s = is_spherically_suspended(k5, "x1", "x5")
    assert s.covered and not s.passed
    with pytest.raises(SamePair):
        is_spherically_suspended(tri, "x2", "x2")


@pytest.mark.parametrize("n", range(4, 8))
def test_complete_graphs_covered_but_not_suspended(n):
    geo = geometry(f"kn:{n}")
    s = is_spherically_suspended(geo, "x1", f"x{n}")
    assert s.covered and not s.passed


def test_cheng_verify():
    for name in ("triforce", "kn:3"):
        v = cheng_verify(geometry(name))
        assert v.is_maximal and v.passed
        assert set(v.checks) == {
            "suspension", "laplacian_equality", "pole_identity", "eigenfunction_exact", "eigen_equality",
        }
    v = cheng_verify(geometry("kn:6"))
    assert not v.is_maximal and v.checks == {} and v.poles == [] and v.passed
    v = cheng_verify(Geometry(directed_cycle(4)))
    assert v.K == 0 and v.bound is None and not v.is_maximal


def test_triforce_poles():
    tri = geometry("triforce")
    assert sorted((tri.name(x), tri.name(y)) for x, y in diameter_poles(tri)) == [
        ("x1", "x5"), ("x3", "x1"), ("x5", "x3"),
    ]


def test_eigenfunction_defect():
    tri = geometry("triforce")
    for x, _ in diameter_poles(tri):
        assert not any(eigenfunction_defect(tri, x))
    # midpoints are not poles and the identity fails there
    assert any(eigenfunction_defect(tri, 1))
    with pytest.raises(NotApplicable):
        eigenfunction_defect(Geometry(directed_cycle(4)), 0)


def test_superharmonic_spread_examples():
    assert superharmonic_spread(geometry("triforce")) == 0
    assert superharmonic_spread(geometry("kn:3")) == 0


def test_pole_sum_harmonicity():
    tri = geometry("triforce")
    assert pole_sum_harmonicity(tri, "x1", "x5") == (0,) * 6
    k3 = geometry("kn:3")
    for x, y in diameter_poles(k3):
        assert not any(pole_sum_harmonicity(k3, x, y))
    with pytest.raises(PreconditionFailed):
        pole_sum_harmonicity(tri, "x1", "x2")
    with pytest.raises(PreconditionFailed):
        pole_sum_harmonicity(geometry("kn:5"), "x1", "x5")
    assert laplacian_apply(tri.Pm, [3] * 6) == (0,) * 6


def test_subconstant():
    tri = geometry("triforce")
    for path in minimal_geodesics(tri.graph, tri.dist, 0, 4):
        assert subconstant_check(tri, path)
    k3 = geometry("kn:3")
    assert subconstant_check(k3, ["x1", "x2", "x3"])
    k5 = geometry("kn:5")
    with pytest.raises(PreconditionFailed):
        subconstant_check(k5, ["x1", "x3"])  # kappa = 7/6 > K = 1
    with pytest.raises(NotAGeodesic):
        subconstant_check(tri, ["x1", "x3"])


@settings(max_examples=25, deadline=None)
@given(weighted_graphs(max_n=6))
def test_comparison_theorems_on_weighted_graphs(g):
    geo = Geometry(g)
    report = curvature_report(geo)
    assert pairwise_diameter_violations(report) == []
    for x in range(g.n):
        r, r_rev = laplacian_comparison_residual(geo, x)
        assert min(r) >= 0 and min(r_rev) >= 0
        assert r[x] == 0 == r_rev[x]
    assert superharmonic_spread(geo) == 0
    if geo.K() > 0:
        bm = bonnet_myers(geo.K(), geo.Lambda, geo.diam)
        assert bm.holds


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([0.0, 0.3, 0.6, 1.0]), st.integers(3, 6))
def test_maximal_graphs_are_rigid(seed, density, n):
    geo = Geometry(random_strongly_connected(n, density, seed))
    v = cheng_verify(geo)
    assert v.passed
    if v.is_maximal:
        for x, y in diameter_poles(geo):
            s = is_spherically_suspended(geo, x, y)
            harmonic = not any(pole_sum_harmonicity(geo, x, y))
            constant = len({a + b for a, b in zip(geo.dist.rho(x), geo.dist.rho_rev(y))}) == 1
            assert s.covered == harmonic == constant == True  # noqa: E712
