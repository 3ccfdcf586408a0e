"""Radial harmonic oscillator with position-dependent mass m(r) = (1 + alpha r^2)^-2."""

from .pct import GridFunction, ModelParams

__version__ = "0.1.0"

__all__ = ["GridFunction", "ModelParams", "__version__"]
