"""Exception types raised across the package."""


class HarmapError(ValueError):
    """Base class for all domain errors."""


class SeriesDivisionError(HarmapError):
    pass


class RadiusError(HarmapError):
    """A point lies outside the disk or outside the trusted radius."""


class NotLocallyUnivalent(HarmapError):
    """A derivative (or slice derivative) vanishes at an evaluated point."""


class NotSensePreserving(HarmapError):
    pass


class NormalizationError(HarmapError):
    pass


class DegenerateTail(HarmapError):
    pass


class MeanUndefined(HarmapError):
    pass
