"""Optimal pseudomodes inside the strip.

On each half-line the pseudomode combines the decaying solution
``exp(∓k x)`` of ``(L - z) u = 0`` with its conjugate-rate partner
``exp(∓conj(k) x)``.  The partner is not a solution; ``(L - z)`` maps it to
``2i (Im V - Im z)`` times itself, which is small in norm compared to the
pseudomode when Re k is small.  The four coefficients are tied together by
continuity at 0 and the derivative jump ``alpha * Psi(0)``.
"""
from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass

from .errors import DegenerateImV
from .operator_model import strip_gaps
from .potential import Interaction, StepPotential, as_interaction, as_point
from .resolvent_kernel import kernel_coeffs
from .scalar_core import WaveNumbers


@dataclass(frozen=True)
class PseudomodeCoeffs:
    """``Psi = n1 e^{k- x} + n2 e^{conj(k-) x}`` (x < 0), ``p1 e^{-k+ x} + p2 e^{-conj(k+) x}`` (x > 0)."""

    n1: complex
    n2: complex
    p1: complex
    p2: complex
    k: WaveNumbers
    alpha: complex
    degenerate: bool = False

    @property
    def scale(self) -> float:
        return max(abs(self.n1), abs(self.n2), abs(self.p1), abs(self.p2))


def pseudomode_family(
    potential: StepPotential, interaction: Interaction, z, n2: complex, p2: complex
) -> PseudomodeCoeffs:
    """Complete the partner amplitudes ``(n2, p2)`` to a function in the operator domain."""
    alpha = as_interaction(interaction).alpha
    c = kernel_coeffs(potential, interaction, z)
    kp, km = c.k.k_plus, c.k.k_minus
    p1 = -((kp.conjugate() + km + alpha) * p2 + (km.conjugate() - km) * n2) / c.denom
    n1 = p1 + p2 - n2
    return PseudomodeCoeffs(n1, n2, p1, p2, c.k, alpha)


def pseudomode_coeffs(
    potential: StepPotential, interaction: Interaction, z
) -> PseudomodeCoeffs:
    """Coefficients of the optimal pseudomode.

    ``n2 = -|Im V+ - delta|`` and ``p2 = |Im V- - delta|``.  When
    Im V+ = Im V- there is no strip and the result is the zero function,
    flagged with ``degenerate=True``.
    """
    p = as_point(z)
    alpha = as_interaction(interaction).alpha
    gp = abs(potential.v_plus.imag - p.delta)
    gm = abs(potential.v_minus.imag - p.delta)
    c = kernel_coeffs(potential, interaction, p)
    kp, km = c.k.k_plus, c.k.k_minus
    n1 = ((kp + km.conjugate() + alpha) * gp + (kp - kp.conjugate()) * gm) / c.denom
    p1 = (-(km - km.conjugate()) * gp - (kp.conjugate() + km + alpha) * gm) / c.denom
    degenerate = potential.is_im_constant
    if degenerate:
        warnings.warn("Im V+ = Im V-: pseudomode degenerates to zero", RuntimeWarning, stacklevel=2)
        n1 = p1 = 0j
        gp = gm = 0.0
    return PseudomodeCoeffs(n1, complex(-gp), p1, complex(gm), c.k, alpha, degenerate)


def pseudomode_eval(coeffs: PseudomodeCoeffs, x: float) -> complex:
    """Value of the pseudomode at x; the origin uses the + side."""
    kp, km = coeffs.k.k_plus, coeffs.k.k_minus
    if x > 0:
        return coeffs.p1 * cmath.exp(-kp * x) + coeffs.p2 * cmath.exp(-kp.conjugate() * x)
    if x < 0:
        return coeffs.n1 * cmath.exp(km * x) + coeffs.n2 * cmath.exp(km.conjugate() * x)
    return coeffs.p1 + coeffs.p2


def pseudomode_norm_squared(coeffs: PseudomodeCoeffs) -> float:
    """Exact ``||Psi||^2``.

    On x > 0, ``|p1 e^{-kx} + p2 e^{-conj(k) x}|^2`` integrates to
    ``(|p1|^2 + |p2|^2)/(2 Re k) + 2 Re(p1 conj(p2) / (2k))`` because the
    cross term is ``p1 conj(p2) e^{-2kx}``.  The x < 0 side is the mirror image.
    """
    kp, km = coeffs.k.k_plus, coeffs.k.k_minus
    plus = (abs(coeffs.p1) ** 2 + abs(coeffs.p2) ** 2) / (2 * kp.real) + (
        coeffs.p1 * coeffs.p2.conjugate() / kp
    ).real
    minus = (abs(coeffs.n1) ** 2 + abs(coeffs.n2) ** 2) / (2 * km.real) + (
        coeffs.n1 * coeffs.n2.conjugate() / km
    ).real
    return plus + minus


def image_norm_squared(potential: StepPotential, coeffs: PseudomodeCoeffs, z) -> float:
    """Exact ``||(L - z) Psi||^2``; only the partner terms survive."""
    delta = as_point(z).delta
    kp, km = coeffs.k.k_plus, coeffs.k.k_minus
    gp = potential.v_plus.imag - delta
    gm = potential.v_minus.imag - delta
    return 4 * gm * gm * abs(coeffs.n2) ** 2 / (2 * km.real) + 4 * gp * gp * abs(coeffs.p2) ** 2 / (
        2 * kp.real
    )


def quotient_of(potential: StepPotential, coeffs: PseudomodeCoeffs, z) -> float:
    """``||(L - z) Psi|| / ||Psi||`` for the pseudomode with the given coefficients."""
    return math.sqrt(image_norm_squared(potential, coeffs, z) / pseudomode_norm_squared(coeffs))


def pseudomode_quotient_exact(potential: StepPotential, interaction: Interaction, z) -> float:
    """``||(L - z) Psi|| / ||Psi||`` for the optimal pseudomode, in closed form."""
    if potential.is_im_constant:
        raise DegenerateImV("Im V+ = Im V-: the pseudomode vanishes")
    coeffs = pseudomode_coeffs(potential, interaction, z)
    return quotient_of(potential, coeffs, z)


def pseudomode_quotient_asymptotic(
    potential: StepPotential, interaction: Interaction, z
) -> float:
    """Leading-order quotient for large Re z inside the strip.

    Decays like ``1/tau`` without a point interaction and like
    ``1/sqrt(tau)`` with one.

    Raises
    ------
    DegenerateImV, DeltaOutsideStrip
        If there is no strip or Im z is not strictly inside it.
    """
    p = as_point(z)
    alpha = as_interaction(interaction).alpha
    gp, gm = strip_gaps(potential, p)
    gap = abs(potential.im_gap)
    if alpha == 0:
        return abs(potential.jump) / (2 * gap) * gp * gm / p.tau
    return abs(alpha) / gap * gp * gm / math.sqrt(p.tau)


def optimal_ratio(potential: StepPotential, z) -> float:
    """Ratio ``n2/p2`` of the optimal pseudomode."""
    p = as_point(z)
    return -abs(potential.v_plus.imag - p.delta) / abs(potential.v_minus.imag - p.delta)


def check_domain_conditions(coeffs: PseudomodeCoeffs, alpha: complex | None = None) -> tuple[float, float]:
    """Continuity and derivative-jump residuals relative to the coefficient scale.

    ``alpha`` overrides the coupling stored with the coefficients.
    """
    a = coeffs.alpha if alpha is None else complex(alpha)
    scale = coeffs.scale or 1.0
    kp, km = coeffs.k.k_plus, coeffs.k.k_minus
    cont = coeffs.n1 + coeffs.n2 - coeffs.p1 - coeffs.p2
    right = -kp * coeffs.p1 - kp.conjugate() * coeffs.p2
    left = km * coeffs.n1 + km.conjugate() * coeffs.n2
    jump = right - left - a * (coeffs.p1 + coeffs.p2)
    return abs(cont) / scale, abs(jump) / scale


__all__ = [
    "PseudomodeCoeffs",
    "pseudomode_coeffs",
    "pseudomode_family",
    "pseudomode_eval",
    "pseudomode_norm_squared",
    "image_norm_squared",
    "quotient_of",
    "pseudomode_quotient_exact",
    "pseudomode_quotient_asymptotic",
    "optimal_ratio",
    "check_domain_conditions",
]
