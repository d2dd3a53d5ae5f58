"""Exact hypervolume by pivot divide and conquer, with reference oracles."""

__version__ = "0.1.0"

from .core import InvariantError, QhvConfig, RecursionStats, hypervolume, select_pivot, split_octants, volume
from .geometry import Frame, Front, box_volume, canonicalize, dominates, filter_nondominated
from .oracles import CapacityError, McConfig, ie_volume, mc_estimate, sweep2d_volume

__all__ = [
    "CapacityError",
    "Frame",
    "Front",
    "InvariantError",
    "McConfig",
    "QhvConfig",
    "RecursionStats",
    "box_volume",
    "canonicalize",
    "dominates",
    "filter_nondominated",
    "hypervolume",
    "ie_volume",
    "mc_estimate",
    "select_pivot",
    "split_octants",
    "sweep2d_volume",
    "volume",
]
