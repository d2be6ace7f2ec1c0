import math

import numpy as np
import pytest

from steplike import Interaction, StepPotential
from steplike.errors import DomainError, GridMismatch, NoConvergence, NumericalError, ResolutionError
from steplike.fd_oracle import (
    build,
    decay_margin,
    oracle_eigenvalue_extrapolated,
    oracle_eigenvalue_near,
    oracle_eigenvalues_in_window,
    oracle_residual,
    oracle_resolvent_norm,
    richardson,
)
from steplike.resolvent_kernel import SampledFunction, apply_resolvent

FREE = StepPotential(0, 0)
ZERO = Interaction(0)


def test_build_free():
    d = build(FREE, ZERO, 20, 0.01)
    assert d.n == 4001
    assert np.all(d.diagonal == 2 / 0.01**2)
    assert d.off_diagonal == -1 / 0.01**2
    x = np.random.default_rng(1).normal(size=d.n)
    assert np.allclose(d.matvec(x), d.dense() @ x)


def test_build_step(pm_i):
    d = build(pm_i, ZERO, 5, 0.01)
    m = d.origin_index
    assert d.grid[m] == 0
    assert d.diagonal[m + 1] - d.diagonal[m - 1] == pytest.approx(2j)
    assert d.diagonal[m] - 2 / 0.01**2 == 0


def test_build_lumped_delta(pm_i):
    d = build(pm_i, Interaction(-1), 5, 0.01)
    d0 = build(pm_i, ZERO, 5, 0.01)
    assert d.diagonal[d.origin_index] - d0.diagonal[d0.origin_index] == pytest.approx(-100)


def test_build_preconditions(pm_i):
    with pytest.raises(ResolutionError):
        build(pm_i, ZERO, 30, 0.05, tau_max=1e4)
    build(pm_i, ZERO, 30, 0.01, tau_max=1e4)
    with pytest.raises(ResolutionError):
        build(pm_i, ZERO, 30, 0.01, z_list=[100])
    with pytest.raises(ResolutionError):
        build(pm_i, ZERO, 1, 2)
    assert decay_margin(pm_i, 100, 800) < 1e-8


def test_factor_singular():
    d = build(FREE, ZERO, 1, 0.5)
    # eigenvalues of the 3-node Dirichlet Laplacian are (2 +- sqrt 2)/h^2 and 2/h^2
    with pytest.raises(NumericalError):
        d.factor(2 / 0.25).solve(np.ones(5, dtype=complex))


def test_norm_self_adjoint():
    d = build(FREE, ZERO, 30, 0.005)
    assert oracle_resolvent_norm(d, -1) == pytest.approx(1, rel=5e-3)


@pytest.mark.parametrize("method", ["lanczos", "inverse"])
def test_norm_w_region(pm_i, method):
    d = build(pm_i, ZERO, 30, 0.01)
    assert oracle_resolvent_norm(d, 2 + 3j, method=method) == pytest.approx(0.5, rel=0.01)


@pytest.mark.slow
def test_norm_strip(pm_i):
    z = 50
    d = build(pm_i, ZERO, 800, 0.02, tau_max=50, z_list=[z])
    assert oracle_resolvent_norm(d, z) == pytest.approx(100, rel=0.1)


def test_norm_matches_dense_svd(pm_i):
    d = build(pm_i, Interaction(0.5 - 1j), 4, 0.05)
    a = d.dense() - (1.5 + 0.2j) * np.eye(d.n)
    smin = np.linalg.svd(a, compute_uv=False)[-1]
    assert oracle_resolvent_norm(d, 1.5 + 0.2j) == pytest.approx(1 / smin, rel=1e-9)
    assert oracle_resolvent_norm(d, 1.5 + 0.2j, method="inverse") == pytest.approx(1 / smin, rel=1e-6)


def test_no_convergence(pm_i):
    d = build(pm_i, ZERO, 30, 0.01)
    with pytest.raises(NoConvergence):
        oracle_resolvent_norm(d, 5, max_iter=3)
    with pytest.raises(ValueError):
        oracle_resolvent_norm(d, 5, method="bogus")


def test_self_adjoint_regression(rng):
    v = StepPotential(0.5, -0.3)
    d = build(v, Interaction(1.5), 5, 0.05)
    ev = np.linalg.eigvalsh(d.dense().real)
    for _ in range(20):
        z = complex(rng.uniform(-2, 10), rng.uniform(0.05, 2))
        expected = 1 / np.min(np.abs(ev - z))
        assert oracle_resolvent_norm(d, z) == pytest.approx(expected, rel=1e-8)


@pytest.mark.parametrize(
    "z, half_width, spacing",
    # strip points decay fast; outside the numerical range the extremal
    # quasi-modes are wide and need a longer interval
    [(50, 400, 0.02), (100 + 0.5j, 400, 0.02), (-1 + 0.5j, 120, 0.01), (2 + 3j, 120, 0.01)],
)
def test_truncation_insensitivity(pm_i, z, half_width, spacing):
    a = oracle_resolvent_norm(build(pm_i, ZERO, half_width, spacing), z)
    b = oracle_resolvent_norm(build(pm_i, ZERO, 2 * half_width, spacing), z)
    assert abs(a / b - 1) < 1e-3


def test_eigenvalue_delta_well():
    e = oracle_eigenvalue_near(build(FREE, Interaction(-2), 20, 0.002), -1.2)
    assert e == pytest.approx(-1, abs=5e-3)


def test_eigenvalue_extrapolated(pm_i):
    e = oracle_eigenvalue_extrapolated(pm_i, Interaction(-1), 0.75)
    assert abs(e - 0.75) < 1e-3


def test_eigenvalue_order(pm_i):
    errs = []
    hs = (8e-3, 4e-3, 2e-3)
    for h in hs:
        errs.append(abs(oracle_eigenvalue_near(build(pm_i, Interaction(-1), 30, h), 0.75) - 0.75))
    orders = [math.log2(errs[i] / errs[i + 1]) for i in range(2)]
    assert min(orders) >= 1 - 0.1


def test_window_empty_outside_omega(pm_i):
    d = build(pm_i, Interaction(1), 40, 0.02)
    assert oracle_eigenvalues_in_window(d).size == 0


def test_window_finds_eigenvalue(pm_i):
    d = build(pm_i, Interaction(-1), 40, 0.02)
    found = oracle_eigenvalues_in_window(d)
    assert found.size == 1 and abs(found[0] - 0.75) < 0.01


def test_window_matches_dense(pm_i):
    d = build(pm_i, Interaction(-0.5 + 0.2j), 10, 0.05)
    ev = np.linalg.eigvals(d.dense())
    assert np.allclose(
        np.sort_complex(oracle_eigenvalues_in_window(d, radius=50, ray_margin=0)),
        np.sort_complex(ev[np.abs(ev) < 50]),
    )


def test_richardson():
    # c0 + c2 h^2 sampled at h and h/2
    assert richardson(1 + 4 * 0.01, 1 + 0.01) == pytest.approx(1)
    assert richardson(1 + 0.2, 1 + 0.1, order=1) == pytest.approx(1)


def test_residual():
    d = build(FREE, ZERO, 20, 1e-3)
    f = SampledFunction.from_callable(lambda x: np.exp(-x * x), 20, 1e-3)
    u = apply_resolvent(FREE, ZERO, -1, f)
    assert oracle_residual(d, u, f, -1) < 1e-4
    assert oracle_residual(d, u.with_values(np.zeros(d.n)), f, -1) == pytest.approx(1)
    other = SampledFunction.from_callable(lambda x: np.exp(-x * x), 10, 1e-3)
    with pytest.raises(GridMismatch):
        oracle_residual(d, other, other, -1)
    with pytest.raises(DomainError):
        oracle_residual(d, u, f.with_values(np.zeros(d.n)), -1)
