"""Spectral geometry, operator classification and the point-interaction eigenvalue.

The spectrum of the operator is the union of the two horizontal rays
``[V+, oo)`` and ``[V-, oo)``.  Its numerical range is the convex hull of
those rays, i.e. the region swept by the rays starting on the segment
``[V-, V+]``.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass
from typing import Optional

from .errors import DegenerateImV, DeltaOutsideStrip, DomainError, NotInOmega, WrongModel
from .potential import (
    NO_INTERACTION,
    Interaction,
    SpectralPoint,
    StepPotential,
    as_interaction,
    as_point,
)


@dataclass(frozen=True)
class OperatorClass:
    """Structural symmetries of the operator, as flags."""

    normal: bool
    self_adjoint: bool
    t_self_adjoint: bool
    p_self_adjoint: bool
    pt_symmetric: bool


@dataclass(frozen=True)
class EigenResult:
    """Discrete eigenvalue of the operator with point interaction.

    ``eigenfunction_rates`` holds ``(r_neg, r_pos)`` such that the
    eigenfunction is ``exp(r_neg x)`` for x <= 0 and ``exp(r_pos x)`` for
    x >= 0; ``Re r_neg > 0`` and ``Re r_pos < 0``.
    """

    in_omega: bool
    eigenvalue: Optional[complex] = None
    eigenfunction_rates: Optional[tuple[complex, complex]] = None


def distance_to_ray(v: complex, z: complex) -> float:
    """Distance from z to the horizontal ray ``[v, oo)``."""
    if z.real <= v.real:
        return abs(z - v)
    return abs(z.imag - v.imag)


def spectrum_distance(potential: StepPotential, z) -> float:
    """Distance from z to the essential spectrum, the union of the two rays ``[V+-, oo)``."""
    z = as_point(z).z
    return min(distance_to_ray(potential.v_plus, z), distance_to_ray(potential.v_minus, z))


def _distance_to_segment(a: complex, b: complex, z: complex) -> float:
    d = b - a
    n2 = d.real * d.real + d.imag * d.imag
    if n2 == 0:
        return abs(z - a)
    w = z - a
    s = (w.real * d.real + w.imag * d.imag) / n2
    s = min(1.0, max(0.0, s))
    return abs(z - (a + s * d))


def in_numerical_range_closure(potential: StepPotential, z) -> bool:
    """Whether z lies in the closed convex hull of the two spectral rays."""
    z = as_point(z).z
    vp, vm = potential.v_plus, potential.v_minus
    lo, hi = sorted((vp.imag, vm.imag))
    if not lo <= z.imag <= hi:
        return False
    if lo == hi:
        return z.real >= min(vp.real, vm.real)
    s = (z.imag - vm.imag) / (vp.imag - vm.imag)
    edge = vm.real + s * (vp.real - vm.real)
    return z.real >= edge


def numerical_range_distance(potential: StepPotential, z) -> float:
    """Distance from z to the closed numerical range (0 inside)."""
    z = as_point(z).z
    if in_numerical_range_closure(potential, z):
        return 0.0
    vp, vm = potential.v_plus, potential.v_minus
    return min(distance_to_ray(vp, z), distance_to_ray(vm, z), _distance_to_segment(vm, vp, z))


def in_w_region(potential: StepPotential, z, tol: float) -> bool:
    """z outside the closed numerical range with equal distances to it and to the spectrum."""
    if not tol > 0:
        raise ValueError("tol must be positive")
    nd = numerical_range_distance(potential, z)
    if nd <= 0:
        return False
    sd = spectrum_distance(potential, z)
    return abs(sd - nd) <= tol * sd


def in_extended_equality_region(z, potential: Optional[StepPotential] = None) -> bool:
    """Region ``Re z < 0, |Im z| >= 1/(Re z)^2`` of the model V+ = i, V- = -i.

    On this set the resolvent norm also equals 1/dist(z, spectrum).  The
    optional ``potential`` is checked to be that model.
    """
    if potential is not None and not potential.is_pm_i:
        raise WrongModel("the extended equality region is only known for V+ = i, V- = -i")
    z = as_point(z).z
    if z.real >= 0:
        return False
    return abs(z.imag) >= 1.0 / (z.real * z.real)


def classify(potential: StepPotential, interaction: Interaction = NO_INTERACTION) -> OperatorClass:
    """Normality, self-adjointness and the T, P and PT symmetry flags.

    With a point interaction the P-type flags need the mirror relation
    ``V- = conj(V+)`` and a purely imaginary coupling.
    """
    alpha = as_interaction(interaction).alpha
    vp, vm = potential.v_plus, potential.v_minus
    mirror = vp.real == vm.real and vp.imag == -vm.imag
    if alpha == 0:
        normal = vp.imag == vm.imag
        self_adjoint = vp.imag == 0 and vm.imag == 0
        p_sa = mirror
    else:
        self_adjoint = vp.imag == 0 and vm.imag == 0 and alpha.imag == 0
        normal = self_adjoint
        p_sa = mirror and alpha.real == 0
    return OperatorClass(
        normal=normal,
        self_adjoint=self_adjoint,
        t_self_adjoint=True,
        p_self_adjoint=p_sa,
        pt_symmetric=p_sa,
    )


def sector_vertex(potential: StepPotential, interaction: Interaction = NO_INTERACTION) -> float:
    """Real vertex of a sector containing the numerical range of the operator with coupling."""
    alpha = as_interaction(interaction).alpha
    vp, vm = potential.v_plus, potential.v_minus
    return (
        min(vp.real, vm.real)
        - max(abs(vp.imag), abs(vm.imag))
        - (abs(alpha.real) + abs(alpha.imag)) ** 2
    )


def in_omega(potential: StepPotential, interaction: Interaction) -> bool:
    """Coupling test ``|<V+ - V-, alpha>| < -|alpha|^2 Re alpha`` (real inner product)."""
    alpha = as_interaction(interaction).alpha
    if alpha == 0:
        return False
    jump = potential.jump
    inner = jump.real * alpha.real + jump.imag * alpha.imag
    return abs(inner) < -(abs(alpha) ** 2) * alpha.real


def in_omega_dual(potential: StepPotential, interaction: Interaction) -> bool:
    """Equivalent test: both eigenfunction exponents must give decay."""
    alpha = as_interaction(interaction).alpha
    if alpha == 0:
        return False
    ratio = potential.jump / (2 * alpha)
    return (-alpha / 2 - ratio).real > 0 and (-alpha / 2 + ratio).real > 0


def eigen_result(potential: StepPotential, interaction: Interaction) -> EigenResult:
    """Closed-form discrete eigenvalue and eigenfunction exponents.

    Returns ``EigenResult(False)`` when the coupling admits no eigenvalue.
    """
    alpha = as_interaction(interaction).alpha
    if not in_omega(potential, interaction):
        return EigenResult(False)
    jump = potential.jump
    z = (potential.v_plus + potential.v_minus) / 2 - jump * jump / (4 * alpha * alpha) - alpha * alpha / 4
    ratio = jump / (2 * alpha)
    r_pos = alpha / 2 + ratio
    r_neg = -(alpha / 2 - ratio)
    return EigenResult(True, z, (r_neg, r_pos))


def eigenfunction_sample(potential: StepPotential, interaction: Interaction, x: float) -> complex:
    """Eigenfunction normalized to 1 at the origin."""
    res = eigen_result(potential, interaction)
    if not res.in_omega:
        raise NotInOmega(f"alpha={as_interaction(interaction).alpha} gives no eigenvalue")
    r_neg, r_pos = res.eigenfunction_rates
    return cmath.exp(r_pos * x) if x >= 0 else cmath.exp(r_neg * x)


def pseudospectrum_inclusion(
    potential: StepPotential,
    eps: float,
    eps_prime: float,
    m_threshold: float,
    z,
) -> bool:
    """Sufficient test for z to lie in the eps-pseudospectrum.

    True when z is eps-close to the spectrum, or when it lies in the strip far
    enough to the right that the leading resolvent growth exceeds
    ``1/(eps (1 - eps_prime))``.  ``m_threshold`` is the caller's bound beyond
    which the asymptotic regime is trusted.
    """
    if potential.is_im_constant:
        raise DegenerateImV("Im V+ = Im V-: pseudospectra are trivial, use dist(z, spectrum) < eps")
    if not 0 < eps_prime < 1 or not eps > 0:
        raise ValueError("need eps > 0 and 0 < eps_prime < 1")
    p = as_point(z)
    if spectrum_distance(potential, p) < eps:
        return True
    lo, hi = sorted((potential.v_plus.imag, potential.v_minus.imag))
    if not (p.tau > m_threshold and lo < p.delta < hi):
        return False
    threshold = (
        abs(potential.jump)
        * abs(potential.v_plus.imag - p.delta)
        * abs(potential.v_minus.imag - p.delta)
        / (2 * abs(potential.im_gap))
        / (eps * (1 - eps_prime))
    )
    return p.tau > threshold


def strip_contains(potential: StepPotential, delta: float) -> bool:
    """Whether ``delta`` lies strictly between ``Im V-`` and ``Im V+``."""
    lo, hi = sorted((potential.v_plus.imag, potential.v_minus.imag))
    return lo < delta < hi


def strip_gaps(potential: StepPotential, z) -> tuple[float, float]:
    """Distances ``|Im V± - Im z|``, validating that z is in the open right half of the strip."""
    p = as_point(z)
    if potential.is_im_constant:
        raise DegenerateImV("Im V+ = Im V-: no strip")
    if not strip_contains(potential, p.delta):
        raise DeltaOutsideStrip(f"Im z={p.delta} not strictly between Im V+ and Im V-")
    if p.tau <= 0:
        raise DomainError("asymptotic formulas need Re z > 0")
    return abs(potential.v_plus.imag - p.delta), abs(potential.v_minus.imag - p.delta)


__all__ = [
    "StepPotential",
    "Interaction",
    "SpectralPoint",
    "OperatorClass",
    "EigenResult",
    "spectrum_distance",
    "numerical_range_distance",
    "in_numerical_range_closure",
    "in_w_region",
    "in_extended_equality_region",
    "classify",
    "sector_vertex",
    "in_omega",
    "in_omega_dual",
    "eigen_result",
    "eigenfunction_sample",
    "pseudospectrum_inclusion",
    "strip_contains",
    "strip_gaps",
]
