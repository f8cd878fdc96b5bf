"""Curvature quantities and inequality checks for pointwise submanifold data
in quaternionic space forms."""

from ._cclab import *  # noqa: F401,F403
from ._cclab import __doc__  # noqa: F401

__version__ = "0.1.0"
