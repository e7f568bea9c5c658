"""Piecewise disk-rotation systems: orbits, critical radii, exact checks, renders."""

from .engine import BACKEND, OrbitParams, OrbitResult, frontier_bfs, orbit_bfs, orbit_stream
from .geometry import DiskSpec, DiskSystem, Word, apply_word_checked, upper_intersection

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "DiskSpec",
    "DiskSystem",
    "OrbitParams",
    "OrbitResult",
    "Word",
    "__version__",
    "apply_word_checked",
    "frontier_bfs",
    "orbit_bfs",
    "orbit_stream",
    "upper_intersection",
]
