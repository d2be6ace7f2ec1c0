"""Wavenumbers on the principal branch and the maximum of a quadratic form on the circle.

The wavenumbers are ``k(z) = sqrt(V - z)`` on each half-line.  Off the two
spectral rays ``[V+, oo)`` and ``[V-, oo)`` both have positive real part, which
is what makes the resolvent kernel decay.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import DegenerateDelta, DomainError, SpectrumPoint
from .potential import SpectralPoint, StepPotential, as_point


@dataclass(frozen=True)
class WaveNumbers:
    """Pair of decay constants for the two half-lines."""

    k_plus: complex
    k_minus: complex

    @property
    def re_k_plus(self) -> float:
        return self.k_plus.real

    @property
    def re_k_minus(self) -> float:
        return self.k_minus.real


@dataclass(frozen=True)
class CircleOptimum:
    """Maximum of a quadratic form on the unit circle and an angle attaining it."""

    max_value: float
    argmax_angle: float


def principal_sqrt(w: complex) -> complex:
    """Principal square root returning ``i*sqrt(|w|)`` on the negative axis.

    ``cmath.sqrt`` follows the sign of a signed zero imaginary part, so
    ``-4 - 0j`` would give ``-2j``.  Adding ``+0.0`` folds ``-0.0`` to ``+0.0``.
    """
    w = complex(w)
    return cmath.sqrt(complex(w.real, w.imag + 0.0))


def on_ray(v: complex, z: complex) -> bool:
    """True when ``v - z`` lies on (-oo, 0], i.e. z is on the ray [v, oo)."""
    w = v - z
    return w.imag == 0 and w.real <= 0


def wavenumbers(potential: StepPotential, z, strict: bool = True) -> WaveNumbers:
    """Principal-branch wavenumbers ``k± = sqrt(V± - z)``.

    Parameters
    ----------
    potential : StepPotential
    z : SpectralPoint or complex
    strict : bool
        Raise ``SpectrumPoint`` when z sits on a spectral ray.  With
        ``strict=False`` the value on the cut is returned (Re k = 0).
    """
    z = as_point(z).z
    if strict:
        for v in (potential.v_plus, potential.v_minus):
            if on_ray(v, z):
                raise SpectrumPoint(f"z={z} lies on the spectral ray from {v}")
    return WaveNumbers(principal_sqrt(potential.v_plus - z), principal_sqrt(potential.v_minus - z))


def wavenumber_sum(potential: StepPotential, k: WaveNumbers) -> complex:
    """``k+ + k-`` without cancellation.

    Inside the strip k+ and k- are close to ``±i sqrt(tau)`` and their sum is
    small; ``k+^2 - k-^2 = V+ - V-`` gives it as a quotient instead.
    """
    diff = k.k_plus - k.k_minus
    direct = k.k_plus + k.k_minus
    if abs(diff) > abs(direct):
        return potential.jump / diff
    return direct


def wavenumbers_asymptotic(potential: StepPotential, z) -> WaveNumbers:
    """Two-term expansion of the wavenumbers for large Re z.

    Each side gets
    ``sgn(Im V - delta) * (i sqrt(tau) + ((Im V - delta) - i Re V) / (2 sqrt(tau)))``,
    whose real part is the leading term ``|Im V - delta| / (2 sqrt(tau))`` of
    Re k.  The remainder is O(tau^-3/2).
    """
    p = as_point(z)
    tau, delta = p.tau, p.delta
    if tau <= 0:
        raise DomainError("expansion needs tau > 0")
    out = []
    root = math.sqrt(tau)
    for v in (potential.v_plus, potential.v_minus):
        gap = v.imag - delta
        if gap == 0:
            raise DegenerateDelta(f"Im z={delta} equals Im V={v.imag}")
        sign = 1.0 if gap > 0 else -1.0
        out.append(sign * (1j * root + complex(gap, -v.real) / (2 * root)))
    return WaveNumbers(out[0], out[1])


def max_quadratic_on_circle(a: float, b: float, c: float) -> CircleOptimum:
    """Maximum of ``a x^2 + b x y + c y^2`` over the unit circle.

    The form equals ``(a + c)/2 + ((a - c) cos 2t + b sin 2t)/2`` at
    ``(cos t, sin t)``, so the maximum is ``(a + c + hypot(a - c, b)) / 2``
    reached where ``(cos 2t, sin 2t)`` is parallel to ``(a - c, b)``.
    When ``a == c`` and ``b == 0`` every angle is optimal and 0 is returned.
    """
    a, b, c = float(a), float(b), float(c)
    radius = math.hypot(a - c, b)
    value = 0.5 * (a + c + radius)
    if radius == 0:
        return CircleOptimum(value, 0.0)
    angle = 0.5 * math.atan2(b, a - c)
    return CircleOptimum(value, angle % (2 * math.pi))


def quadratic_form(a: float, b: float, c: float, theta: float) -> float:
    """``a cos^2 + b cos sin + c sin^2`` at angle ``theta``."""
    x, y = math.cos(theta), math.sin(theta)
    return a * x * x + b * x * y + c * y * y


__all__ = [
    "SpectralPoint",
    "WaveNumbers",
    "CircleOptimum",
    "principal_sqrt",
    "wavenumbers",
    "wavenumber_sum",
    "wavenumbers_asymptotic",
    "max_quadratic_on_circle",
    "quadratic_form",
]
