"""Resolvent integral kernel and its quadrature application.

For z off the spectrum the resolvent is an integral operator whose kernel
splits into a convolution part ``exp(-k|x - y|)/(2k)`` on each half-line and a
separable reflection/transmission part with coefficients ``K++``, ``K--`` and
``K+-``.  With a point interaction of coupling alpha the same shape holds with
``k+ + k- + alpha`` in the denominators.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import EigenvalueHit, QuadratureDomain
from .potential import NO_INTERACTION, Interaction, StepPotential, as_interaction, as_point
from .scalar_core import WaveNumbers, wavenumber_sum, wavenumbers


@dataclass(frozen=True)
class KernelCoeffs:
    """Coefficients of the resolvent kernel at a fixed z.

    ``k_pp`` and ``k_mm`` multiply the reflected terms on each half-line,
    ``k_pm = 1/denom`` the transmitted term, and ``denom = k+ + k- + alpha``.
    """

    k_pp: complex
    k_mm: complex
    k_pm: complex
    denom: complex
    k: WaveNumbers


@dataclass(frozen=True)
class SampledFunction:
    """Complex samples on the uniform grid ``x_i = (i - m) h``, ``i = 0..2m``."""

    grid: np.ndarray
    values: np.ndarray
    spacing: float

    def __post_init__(self):
        grid = np.asarray(self.grid, dtype=float)
        values = np.asarray(self.values, dtype=complex)
        if grid.ndim != 1 or grid.shape != values.shape:
            raise ValueError("grid and values must be 1-D and the same length")
        if grid.size >= 2:
            steps = np.diff(grid)
            if np.any(steps <= 0):
                raise ValueError("grid must be strictly increasing")
            if np.max(np.abs(steps - self.spacing)) > 1e-9 * self.spacing:
                raise ValueError("grid is not uniform with the declared spacing")
        if not np.all(np.isfinite(values)):
            raise ValueError("values must be finite")
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "values", values)

    @classmethod
    def from_callable(cls, func, half_width: float, spacing: float) -> SampledFunction:
        x = uniform_grid(half_width, spacing)
        return cls(x, np.asarray(func(x), dtype=complex) * np.ones_like(x), spacing)

    def with_values(self, values) -> SampledFunction:
        return SampledFunction(self.grid, values, self.spacing)

    @property
    def origin_index(self) -> int:
        return self.grid.size // 2


def uniform_grid(half_width: float, spacing: float) -> np.ndarray:
    """Symmetric grid with ``2 floor(L/h) + 1`` nodes; the origin is a node."""
    if not (half_width > 0 and spacing > 0):
        raise ValueError("half-width and spacing must be positive")
    m = int(np.floor(half_width / spacing * (1 + 1e-12)))
    return (np.arange(2 * m + 1) - m) * spacing


def eigenvalue_hit_tolerance(alpha: complex) -> float:
    """Threshold on ``|k+ + k- + alpha|`` below which z counts as the eigenvalue."""
    return 1e-12 * (1 + abs(alpha))


def kernel_coeffs(
    potential: StepPotential, interaction: Interaction, z
) -> KernelCoeffs:
    """Kernel coefficients at z.

    Raises
    ------
    EigenvalueHit
        If ``|k+ + k- + alpha|`` is below :func:`eigenvalue_hit_tolerance`.
    SpectrumPoint
        If z lies on the essential spectrum.
    """
    alpha = as_interaction(interaction).alpha
    k = wavenumbers(potential, z)
    denom = wavenumber_sum(potential, k) + alpha
    if abs(denom) < eigenvalue_hit_tolerance(alpha):
        raise EigenvalueHit(f"z={as_point(z).z} is the point-interaction eigenvalue")
    kp, km = k.k_plus, k.k_minus
    k_pp = (kp - km - alpha) / (2 * kp * denom)
    k_mm = -(kp - km + alpha) / (2 * km * denom)
    return KernelCoeffs(k_pp, k_mm, 1 / denom, denom, k)


def kernel_from_coeffs(c: KernelCoeffs, x: float, y: float) -> complex:
    """Kernel value at (x, y) from precomputed coefficients; zero counts as the + side."""
    kp, km = c.k.k_plus, c.k.k_minus
    if x >= 0 and y >= 0:
        return cmath.exp(-kp * abs(x - y)) / (2 * kp) + c.k_pp * cmath.exp(-kp * (x + y))
    if x < 0 and y < 0:
        return cmath.exp(-km * abs(x - y)) / (2 * km) + c.k_mm * cmath.exp(km * (x + y))
    pos, neg = (x, y) if x >= 0 else (y, x)
    return c.k_pm * cmath.exp(-kp * pos + km * neg)


def kernel_eval(
    potential: StepPotential, interaction: Interaction, z, x: float, y: float
) -> complex:
    """Resolvent kernel at (x, y); a zero coordinate counts as the + side."""
    return kernel_from_coeffs(kernel_coeffs(potential, interaction, z), float(x), float(y))


def kernel_matrix(c: KernelCoeffs, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Vectorized kernel on the outer grid ``x[:, None], y[None, :]``."""
    kp, km = c.k.k_plus, c.k.k_minus
    X = np.asarray(x, dtype=float)[:, None]
    Y = np.asarray(y, dtype=float)[None, :]
    xp, yp = X >= 0, Y >= 0
    out = np.empty(np.broadcast_shapes(X.shape, Y.shape), dtype=complex)
    pp = xp & yp
    mm = ~xp & ~yp
    mixed = ~(pp | mm)
    Xb, Yb = np.broadcast_arrays(X, Y)
    a, b = Xb[pp], Yb[pp]
    out[pp] = np.exp(-kp * np.abs(a - b)) / (2 * kp) + c.k_pp * np.exp(-kp * (a + b))
    a, b = Xb[mm], Yb[mm]
    out[mm] = np.exp(-km * np.abs(a - b)) / (2 * km) + c.k_mm * np.exp(km * (a + b))
    a, b = Xb[mixed], Yb[mixed]
    pos, neg = np.maximum(a, b), np.minimum(a, b)
    out[mixed] = c.k_pm * np.exp(-kp * pos + km * neg)
    return out


def trapezoid_weights(n: int, h: float) -> np.ndarray:
    """Trapezoid-rule weights for ``n`` equally spaced samples."""
    w = np.full(n, h)
    if n:
        w[0] = w[-1] = h / 2
    return w


def _check_support(f: SampledFunction, rel: float = 1e-12) -> None:
    v = np.abs(f.values)
    peak = v.max(initial=0.0)
    if peak > 0 and max(v[0], v[-1]) > rel * peak:
        raise QuadratureDomain("sampled function does not vanish at the grid ends")


def apply_resolvent(
    potential: StepPotential,
    interaction: Interaction,
    z,
    f: SampledFunction,
    method: str = "sweep",
) -> SampledFunction:
    """Composite-trapezoid approximation of ``(L - z)^{-1} f`` on f's grid.

    The kinks of the kernel at y = 0 and y = x fall on grid nodes, so the
    panels never straddle them.  ``method="sweep"`` evaluates the sum
    ``sum_j w_j R(x_i, y_j) f_j`` in O(N) using ``exp(-k |x_i - x_j|) =
    r^|i - j|`` with ``r = exp(-k h)``; ``method="direct"`` forms each row of
    the kernel explicitly (O(N^2), for checking).
    """
    coeffs = kernel_coeffs(potential, interaction, z)
    _check_support(f)
    h = f.spacing
    x = f.grid
    n = x.size
    g = trapezoid_weights(n, h) * f.values
    if method == "direct":
        u = np.empty(n, dtype=complex)
        for i in range(n):
            u[i] = np.dot(kernel_matrix(coeffs, x[i : i + 1], x)[0], g)
        return f.with_values(u)
    if method != "sweep":
        raise ValueError(f"unknown method {method!r}")

    kp, km = coeffs.k.k_plus, coeffs.k.k_minus
    pos = x >= 0
    xp, xm = x[pos], x[~pos]
    gp, gm = g[pos], g[~pos]
    # separable parts: one inner product per half-line
    s_plus = np.dot(np.exp(-kp * xp), gp)
    s_minus = np.dot(np.exp(km * xm), gm)
    u = np.empty(n, dtype=complex)
    conv_p = kernels.decay_sweep(cmath.exp(-kp * h), gp) / (2 * kp)
    conv_m = kernels.decay_sweep(cmath.exp(-km * h), gm) / (2 * km)
    u[pos] = conv_p + np.exp(-kp * xp) * (coeffs.k_pp * s_plus + coeffs.k_pm * s_minus)
    u[~pos] = conv_m + np.exp(km * xm) * (coeffs.k_mm * s_minus + coeffs.k_pm * s_plus)
    return f.with_values(u)


def schur_row_bound(potential: StepPotential, interaction: Interaction, z, x: float) -> float:
    """Closed-form bound on ``int |R(x, y)| dy`` from the triangle inequality.

    Integrates the modulus of each kernel term separately, so it dominates the
    true row integral.
    """
    c = kernel_coeffs(potential, interaction, z)
    kp, km = c.k.k_plus, c.k.k_minus
    ap, am = kp.real, km.real
    if x >= 0:
        conv = (2 - np.exp(-ap * x)) / (2 * abs(kp) * ap)
        sep = abs(c.k_pp) * np.exp(-ap * x) / ap + abs(c.k_pm) * np.exp(-ap * x) / am
    else:
        conv = (2 - np.exp(am * x)) / (2 * abs(km) * am)
        sep = abs(c.k_mm) * np.exp(am * x) / am + abs(c.k_pm) * np.exp(am * x) / ap
    return float(conv + sep)


__all__ = [
    "KernelCoeffs",
    "SampledFunction",
    "uniform_grid",
    "kernel_coeffs",
    "kernel_eval",
    "kernel_matrix",
    "apply_resolvent",
    "trapezoid_weights",
    "schur_row_bound",
]
