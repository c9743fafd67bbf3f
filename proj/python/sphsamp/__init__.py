"""Spherical harmonic sampling, concentration and interpolation."""

from ._sphsamp import *  # noqa: F401,F403
from ._sphsamp import (  # noqa: F401
    DomainError,
    InputError,
    NumericalError,
    PrecisionError,
    UnsupportedDimension,
)

__version__ = "0.1.0"
