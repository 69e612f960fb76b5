import math
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings

from diricci.curvature import Geometry
from diricci.errors import NoConvergence, PreconditionFailed
from diricci.generators import directed_cycle
from diricci.markov import Kernel
from diricci.spectral import jacobi_eigh, lambda1, residuals, spectrum, symmetrized

from conftest import geometry, weighted_graphs


def test_three_cycle():
    geo = geometry("kn:3")
    s = spectrum(geo.Pm, geo.m)
    assert np.allclose(s.eigenvalues, [0, 1.5, 1.5], atol=1e-10)


def test_fixture_gaps():
    tri = geometry("triforce")
    assert abs(lambda1(spectrum(tri.Pm, tri.m)) - 0.75) <= 1e-9
    k3 = geometry("kn:3")
    assert abs(spectrum(k3.Pm, k3.m).lambda1 - 1.5) <= 1e-9
    c4 = Geometry(directed_cycle(4))
    assert abs(spectrum(c4.Pm, c4.m).lambda1 - (1 - math.cos(math.pi / 2))) <= 1e-9


def test_ground_state_is_constant():
    tri = geometry("triforce")
    s = spectrum(tri.Pm, tri.m)
    v = s.eigenvectors[:, 0]
    assert np.allclose(v / v[0], 1.0, atol=1e-10)


def test_jacobi_matches_numpy():
    rng = np.random.default_rng(7)
    for n in (1, 2, 5, 9):
        a = rng.normal(size=(n, n))
        a = (a + a.T) / 2
        vals, vecs = jacobi_eigh(a)
        assert np.allclose(np.sort(vals), np.linalg.eigvalsh(a), atol=1e-12)
        assert np.allclose(a @ vecs, vecs * vals, atol=1e-12)
        assert np.allclose(vecs.T @ vecs, np.eye(n), atol=1e-12)


def test_jacobi_sweep_limit():
    a = np.array([[1.0, 2.0], [2.0, -1.0]])
    with pytest.raises(NoConvergence):
        jacobi_eigh(a, max_sweeps=0)


def test_irreversible_kernel_rejected():
    P = Kernel(("a", "b", "c"), ((0, F(1), 0), (0, 0, F(1)), (F(1), 0, 0)))
    with pytest.raises(PreconditionFailed):
        symmetrized(P, (F(1, 3),) * 3)


@settings(max_examples=30, deadline=None)
@given(weighted_graphs(max_n=7))
def test_spectrum_invariants(g):
    geo = Geometry(g)
    s = spectrum(geo.Pm, geo.m)
    vals = s.eigenvalues
    assert list(vals) == sorted(vals)
    assert abs(vals[0]) <= 1e-10
    assert vals[1] > 1e-10
    assert abs(sum(vals) - g.n) <= 1e-9
    assert max(residuals(geo.Pm, s)) <= 1e-8
    S = symmetrized(geo.Pm, geo.m)
    assert np.allclose(vals, np.linalg.eigvalsh(S), atol=1e-10)
    K = geo.K()
    if K > 0:
        assert s.lambda1 >= float(K) - 1e-9
