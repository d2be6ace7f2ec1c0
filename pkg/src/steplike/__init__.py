"""Spectral tools for -d^2/dx^2 + V with a complex step potential V and an optional point interaction."""
from .errors import *  # noqa: F401,F403
from .kernels import BACKEND
from .potential import Interaction, SpectralPoint, StepPotential

__all__ = ["BACKEND", "Interaction", "SpectralPoint", "StepPotential"]
__version__ = "0.1.0"
