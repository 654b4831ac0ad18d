"""Pre-Schwarzian norms, extremal bounds and growth exponents for planar harmonic maps.

A map f = h + conj(g) is held as two truncated power series, optionally
backed by closed-form derivatives for work near the unit circle.
"""

from harmap.errors import (
    DegenerateTail,
    HarmapError,
    MeanUndefined,
    NormalizationError,
    NotLocallyUnivalent,
    NotSensePreserving,
    RadiusError,
    SeriesDivisionError,
)
from harmap.hmap import GridSpec, HarmonicMap, identity_map, load_map
from harmap.kernels import BACKEND
from harmap.series import ComplexSeries

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "ComplexSeries",
    "DegenerateTail",
    "GridSpec",
    "HarmapError",
    "HarmonicMap",
    "MeanUndefined",
    "NormalizationError",
    "NotLocallyUnivalent",
    "NotSensePreserving",
    "RadiusError",
    "SeriesDivisionError",
    "identity_map",
    "load_map",
]
