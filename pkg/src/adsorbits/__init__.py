"""Orbits of isometric actions on anti-de Sitter spaces in the real and complex models."""

from .errors import *  # noqa: F401,F403
from .indefinite_linear import COMPLEX, REAL, AdsPoint, basepoint, sample_ads_point
from .lie_core import Algebra, AlgebraElement, GroupElement, Subalgebra, exp_series
from .orbit_engine import cohomogeneity, cohomogeneity_report, orbit_dim

__version__ = "0.1.0"
