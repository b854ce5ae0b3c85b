"""Symbolic algebra over clock valuations."""

from .federation import Federation, sample_zone
from .kernel import BACKEND
from .regions import Region, all_regions, region_of, regions_of
from .stateset import SymbolicStateSet
from .zone import INF, LE_ZERO, ClockMismatchError, ClockSet, Zone, atom, bound

__all__ = [
    "BACKEND",
    "INF",
    "LE_ZERO",
    "ClockMismatchError",
    "ClockSet",
    "Federation",
    "Region",
    "SymbolicStateSet",
    "Zone",
    "all_regions",
    "atom",
    "bound",
    "region_of",
    "regions_of",
    "sample_zone",
]
