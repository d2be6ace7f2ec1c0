import cmath
import math

import numpy as np
import pytest

from steplike import Interaction, StepPotential
from steplike.errors import EigenvalueHit, QuadratureDomain, SpectrumPoint
from steplike.fd_oracle import build, oracle_residual
from steplike.resolvent_kernel import (
    SampledFunction,
    apply_resolvent,
    kernel_coeffs,
    kernel_eval,
    kernel_matrix,
    schur_row_bound,
    uniform_grid,
)

FREE = StepPotential(0, 0)


def test_grid_has_origin_node():
    x = uniform_grid(1.0, 0.1)
    assert x.size == 21 and x[10] == 0 and x[-1] == pytest.approx(1.0)


def test_sampled_function_validation():
    with pytest.raises(ValueError):
        SampledFunction(np.array([0.0, 0.2, 0.3]), np.zeros(3), 0.1)
    with pytest.raises(ValueError):
        SampledFunction(np.array([0.0, 0.1]), np.array([0, np.nan]), 0.1)


def test_coeffs_free():
    c = kernel_coeffs(FREE, Interaction(0), -1)
    assert c.k_pp == 0 and c.k_mm == 0 and c.k_pm == 0.5


def test_coeffs_pm_i(pm_i):
    c = kernel_coeffs(pm_i, Interaction(0), 0)
    assert abs(c.k_pp) == pytest.approx(0.5)
    assert c.k_pm == pytest.approx(1 / math.sqrt(2))


def test_eigenvalue_hit(pm_i):
    with pytest.raises(EigenvalueHit):
        kernel_coeffs(pm_i, Interaction(-1), 0.75)
    with pytest.raises(SpectrumPoint):
        kernel_coeffs(pm_i, Interaction(0), 3 + 1j)


def test_free_kernel_values():
    assert kernel_eval(FREE, Interaction(0), -1, 1, -1) == pytest.approx(math.exp(-2) / 2)
    v, z = 1 + 2j, -0.5 + 1j
    k = cmath.sqrt(v - z)
    for x, y in [(0.3, -1.2), (2.0, 1.0), (-0.4, -3.0), (0.0, 0.0)]:
        got = kernel_eval(StepPotential(v, v), Interaction(0), z, x, y)
        assert got == pytest.approx(cmath.exp(-k * abs(x - y)) / (2 * k), rel=1e-13)


@pytest.mark.parametrize("alpha", [0, 0.5j, -2, 1 + 1j])
def test_symmetry_and_continuity(pm_i, rng, alpha):
    inter = Interaction(alpha)
    c = kernel_coeffs(pm_i, inter, 3 + 0.2j)
    pts = rng.uniform(-5, 5, size=(200, 2))
    xs, ys = pts[:100, 0], pts[100:, 1]
    # 10^4 pairs
    assert np.max(np.abs(kernel_matrix(c, xs, ys) - kernel_matrix(c, ys, xs).T)) == 0
    for x, y in pts[:200]:
        assert kernel_eval(pm_i, inter, 3 + 0.2j, x, y) == kernel_eval(pm_i, inter, 3 + 0.2j, y, x)
    # continuity across y = 0
    for x in (-1.3, 0.7):
        left = kernel_eval(pm_i, inter, 3 + 0.2j, x, -1e-12)
        right = kernel_eval(pm_i, inter, 3 + 0.2j, x, 0.0)
        assert left == pytest.approx(right, abs=1e-10)


def test_matrix_matches_scalar(pm_i):
    c = kernel_coeffs(pm_i, Interaction(-0.5 + 1j), 2 - 0.3j)
    x = np.linspace(-2, 2, 9)
    m = kernel_matrix(c, x, x)
    for i, a in enumerate(x):
        for j, b in enumerate(x):
            assert m[i, j] == pytest.approx(kernel_eval(pm_i, Interaction(-0.5 + 1j), 2 - 0.3j, a, b), rel=1e-14)


def test_alpha_continuity(pm_i):
    base = kernel_coeffs(pm_i, Interaction(0), 2 + 0.3j)
    errs = []
    alphas = [1e-2, 1e-3, 1e-4]
    for a in alphas:
        c = kernel_coeffs(pm_i, Interaction(a * (1 + 1j)), 2 + 0.3j)
        errs.append(abs(c.k_pp - base.k_pp) + abs(c.k_mm - base.k_mm) + abs(c.k_pm - base.k_pm))
    slope = np.polyfit(np.log(alphas), np.log(errs), 1)[0]
    assert slope == pytest.approx(1, abs=0.05)


@pytest.mark.parametrize("alpha, z", [(0, -1), (0, 0.4 + 0.1j), (0.5j, 3), (-1 + 0.3j, 1.5 - 0.4j)])
def test_schur_row_bound(pm_i, alpha, z):
    inter = Interaction(alpha)
    c = kernel_coeffs(pm_i, inter, z)
    y = uniform_grid(60, 1e-3)
    w = np.full(y.size, 1e-3)
    w[0] = w[-1] = 5e-4
    for x in (-2.0, 0.0, 1.5):
        row = np.dot(np.abs(kernel_matrix(c, np.array([x]), y)[0]), w)
        assert np.isfinite(row)
        assert row <= schur_row_bound(pm_i, inter, z, x) * (1 + 1e-6)


def test_schur_row_bound_exact_for_free():
    # with no reflection the triangle bound is attained
    c = kernel_coeffs(FREE, Interaction(0), -1)
    y = uniform_grid(60, 1e-3)
    w = np.full(y.size, 1e-3)
    w[0] = w[-1] = 5e-4
    for x in (-2.0, 0.0, 1.5):
        row = np.dot(np.abs(kernel_matrix(c, np.array([x]), y)[0]), w)
        assert row == pytest.approx(schur_row_bound(FREE, Interaction(0), -1, x), rel=1e-6)


def gaussian(x):
    return np.exp(-x * x)


def test_manufactured_free():
    # f = -g'' + g for g = exp(-x^2), so (L + 1)^{-1} f = g
    f = SampledFunction.from_callable(lambda x: (3 - 4 * x * x) * gaussian(x), 20, 1e-3)
    u = apply_resolvent(FREE, Interaction(0), -1, f)
    assert np.max(np.abs(u.values - gaussian(u.grid))) < 1e-6


def test_zero_input(pm_i):
    f = SampledFunction.from_callable(lambda x: 0 * x, 10, 0.01)
    u = apply_resolvent(pm_i, Interaction(0), 0, f)
    assert np.all(u.values == 0)


def test_support_check(pm_i):
    f = SampledFunction.from_callable(lambda x: np.ones_like(x), 10, 0.01)
    with pytest.raises(QuadratureDomain):
        apply_resolvent(pm_i, Interaction(0), 0, f)


@pytest.mark.parametrize("alpha", [0, -1 + 1j])
def test_sweep_matches_direct(pm_i, alpha):
    f = SampledFunction.from_callable(lambda x: gaussian(x - 0.7) * (1 + 1j * x), 12, 0.02)
    a = apply_resolvent(pm_i, Interaction(alpha), 1 + 0.2j, f)
    b = apply_resolvent(pm_i, Interaction(alpha), 1 + 0.2j, f, method="direct")
    assert np.max(np.abs(a.values - b.values)) < 1e-12 * np.max(np.abs(b.values))


def test_bump_residual_second_order(pm_i):
    def bump(x):
        return np.exp(-4 * (x - 0.5) ** 2)

    res = []
    for h in (4e-3, 2e-3):
        f = SampledFunction.from_callable(bump, 15, h)
        u = apply_resolvent(pm_i, Interaction(0), 0, f)
        disc = build(pm_i, Interaction(0), 15, h)
        r = disc.matvec(u.values) - f.values
        # the interface node is only first order because u''' jumps there
        r[disc.origin_index] = 0
        res.append(np.max(np.abs(r[1:-1])))
    assert res[1] < 1e-5
    assert math.log2(res[0] / res[1]) == pytest.approx(2, abs=0.3)


@pytest.mark.parametrize("alpha, limit", [(0, 1e-4), (-1 + 0.5j, 1e-2), (2, 1e-2)])
def test_resolvent_identity(pm_i, alpha, limit):
    inter = Interaction(alpha)
    z = -1 + 0.2j
    f = SampledFunction.from_callable(lambda x: gaussian(x + 0.3) * np.cos(2 * x), 20, 1e-3)
    u = apply_resolvent(pm_i, inter, z, f)
    disc = build(pm_i, inter, 20, 1e-3, z_list=[z])
    assert oracle_residual(disc, u, f, z) < limit
