"""Tangent spaces at Borel-fixed monomial ideals of finite colength in k[x,y,z]."""

from __future__ import annotations

from .lattice import Staircase2, Staircase3, parse_ideal, power_ideal
from .tangent3d import tangent_dimension
from .hom2d import hom2
from .bounds import psi

__version__ = "0.1.0"

__all__ = ["Staircase2", "Staircase3", "parse_ideal", "power_ideal", "tangent_dimension", "hom2", "psi", "__version__"]
