"""Value types describing the operator and the spectral parameter."""
from __future__ import annotations

import cmath
from dataclasses import dataclass


@dataclass(frozen=True)
class StepPotential:
    """Piecewise constant potential, ``v_plus`` on x >= 0 and ``v_minus`` on x < 0."""

    v_plus: complex
    v_minus: complex

    def __post_init__(self):
        object.__setattr__(self, "v_plus", complex(self.v_plus))
        object.__setattr__(self, "v_minus", complex(self.v_minus))
        if not all(cmath.isfinite(v) for v in (self.v_plus, self.v_minus)):
            raise ValueError("potential levels must be finite")

    @property
    def jump(self) -> complex:
        """V+ - V-."""
        return self.v_plus - self.v_minus

    @property
    def im_gap(self) -> float:
        """Im V+ - Im V-."""
        return self.v_plus.imag - self.v_minus.imag

    @property
    def is_im_constant(self) -> bool:
        return self.v_plus.imag == self.v_minus.imag

    @property
    def is_pm_i(self) -> bool:
        """True for the model V+ = i, V- = -i."""
        return self.v_plus == 1j and self.v_minus == -1j

    def at(self, x: float) -> complex:
        return self.v_plus if x >= 0 else self.v_minus


@dataclass(frozen=True)
class Interaction:
    """Coupling of the point interaction at the origin; 0 means none."""

    alpha: complex = 0j

    def __post_init__(self):
        object.__setattr__(self, "alpha", complex(self.alpha))
        if not cmath.isfinite(self.alpha):
            raise ValueError("coupling must be finite")

    @property
    def is_free(self) -> bool:
        return self.alpha == 0


NO_INTERACTION = Interaction(0j)


@dataclass(frozen=True)
class SpectralPoint:
    """Spectral parameter z = tau + i delta."""

    z: complex

    def __post_init__(self):
        object.__setattr__(self, "z", complex(self.z))

    @classmethod
    def from_parts(cls, tau: float, delta: float) -> SpectralPoint:
        return cls(complex(tau, delta))

    @property
    def tau(self) -> float:
        return self.z.real

    @property
    def delta(self) -> float:
        return self.z.imag


def as_point(z) -> SpectralPoint:
    """Accept a ``SpectralPoint`` or anything convertible to complex."""
    if isinstance(z, SpectralPoint):
        return z
    return SpectralPoint(complex(z))


def as_interaction(alpha) -> Interaction:
    if isinstance(alpha, Interaction):
        return alpha
    if alpha is None:
        return NO_INTERACTION
    return Interaction(complex(alpha))
