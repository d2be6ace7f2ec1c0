"""Bounds and asymptotics for the resolvent norm.

The resolvent splits into a separable part R1 (rank two in structure, one
exponential profile per half-line) and a convolution part R2.  R1 has a
two-sided bound from a 2x2 quadratic-form maximization, R2 an upper bound
from the Schur test; the triangle inequality combines them.  Outside the
numerical range the distance bounds ``1/dist(z, spectrum) <= ||R|| <=
1/dist(z, Num)`` are used as well.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .operator_model import (
    in_extended_equality_region,
    in_w_region,
    numerical_range_distance,
    spectrum_distance,
    strip_contains,
    strip_gaps,
)
from .potential import NO_INTERACTION, Interaction, StepPotential, as_interaction, as_point
from .resolvent_kernel import kernel_coeffs
from .scalar_core import max_quadratic_on_circle, wavenumbers

# relative tolerance for deciding that the two distances are equal
W_REGION_TOL = 1e-9


class Regime(str, enum.Enum):
    """Where z lies: inside the strip, outside the numerical range, or neither."""

    INSIDE_STRIP = "inside_strip"
    OUTSIDE_NUM_RANGE = "outside_num_range"
    GENERIC = "generic"


@dataclass(frozen=True)
class R1BoundTerms:
    """Coefficients of the quadratic form bounding the squared kernel norm.

    ``a`` and ``c`` come from the reflected terms on the + and - half-lines,
    ``d`` from the transmitted term, ``b`` bounds their interaction and
    ``b_tilde`` is its signed counterpart with ``|b_tilde| <= b``.
    """

    a: float
    b: float
    c: float
    d: float
    b_tilde: float


@dataclass(frozen=True)
class NormBracket:
    """Certified interval ``lower <= ||(L - z)^{-1}|| <= upper``."""

    lower: float
    upper: float
    regime: Regime = Regime.GENERIC


def r1_bound_terms(potential: StepPotential, interaction: Interaction, z) -> R1BoundTerms:
    """Terms bounding the norm of the separable part of the resolvent kernel.

    Raises
    ------
    SpectrumPoint
        If z lies on the essential spectrum.
    EigenvalueHit
        If z is the point-interaction eigenvalue.
    """
    c = kernel_coeffs(potential, interaction, z)
    ap, am = c.k.re_k_plus, c.k.re_k_minus
    pp, mm, pm = abs(c.k_pp), abs(c.k_mm), abs(c.k_pm)
    root = 2 * math.sqrt(ap * am)
    a = pp * pp / (4 * ap * ap)
    cc = mm * mm / (4 * am * am)
    d = pm * pm / (4 * ap * am)
    b = pm / root * (pp / ap + mm / am)
    cross_p = (c.k_pp * c.k_pm.conjugate()).real
    cross_m = (c.k_mm * c.k_pm.conjugate()).real
    b_tilde = (cross_p / ap + cross_m / am) / root
    return R1BoundTerms(a, b, cc, d, b_tilde)


def r1_norm_bracket(terms: R1BoundTerms) -> NormBracket:
    """Two-sided bound on the separable part from the circle maximum."""
    base = terms.d
    upper = math.sqrt(max_quadratic_on_circle(terms.a, terms.b, terms.c).max_value + base)
    lower = math.sqrt(max_quadratic_on_circle(terms.a, terms.b_tilde, terms.c).max_value + base)
    return NormBracket(min(lower, upper), upper, Regime.GENERIC)


def r2_norm_upper(potential: StepPotential, z) -> float:
    """Schur-test bound on the convolution part."""
    k = wavenumbers(potential, z)
    return 1 / (abs(k.k_plus) * k.re_k_plus) + 1 / (abs(k.k_minus) * k.re_k_minus)


def resolvent_norm_bracket(
    potential: StepPotential, interaction: Interaction, z
) -> NormBracket:
    """Two-sided bound on the resolvent norm at z.

    The kernel estimate gives ``r1 -+ r2``.  Without a point interaction and
    outside the numerical range this is tightened to
    ``[1/dist(z, spectrum), 1/dist(z, numerical range)]``, and collapses to
    ``1/dist(z, spectrum)`` where that value is known to be exact.

    Returns
    -------
    NormBracket
        ``lower <= upper`` always, tagged with the regime of z.
    """
    p = as_point(z)
    alpha = as_interaction(interaction).alpha
    r1 = r1_norm_bracket(r1_bound_terms(potential, interaction, p))
    r2 = r2_norm_upper(potential, p)
    lower = max(0.0, r1.lower - r2)
    upper = r1.upper + r2
    regime = Regime.INSIDE_STRIP if strip_contains(potential, p.delta) and p.tau > 0 else Regime.GENERIC
    if alpha == 0:
        nd = numerical_range_distance(potential, p)
        if nd > 0:
            sd = spectrum_distance(potential, p)
            regime = Regime.OUTSIDE_NUM_RANGE
            exact = in_w_region(potential, p, W_REGION_TOL) or (
                potential.is_pm_i and in_extended_equality_region(p)
            )
            if exact:
                return NormBracket(1 / sd, 1 / sd, regime)
            lower = max(lower, 1 / sd)
            upper = min(upper, 1 / nd)
    return NormBracket(min(lower, upper), upper, regime)


def resolvent_norm_asymptotic(
    potential: StepPotential, interaction: Interaction, z
) -> float:
    """Leading term of the resolvent norm as Re z -> +oo inside the strip.

    Grows like ``tau`` without interaction and like ``sqrt(tau)/|alpha|`` with it.
    """
    p = as_point(z)
    alpha = as_interaction(interaction).alpha
    gp, gm = strip_gaps(potential, p)
    gap = abs(potential.im_gap)
    if alpha == 0:
        return 2 * gap / abs(potential.jump) * p.tau / (gp * gm)
    return gap * math.sqrt(p.tau) / (abs(alpha) * gp * gm)


__all__ = [
    "Regime",
    "R1BoundTerms",
    "NormBracket",
    "r1_bound_terms",
    "r1_norm_bracket",
    "r2_norm_upper",
    "resolvent_norm_bracket",
    "resolvent_norm_asymptotic",
]
