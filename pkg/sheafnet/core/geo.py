"""Geo utilities for the disk coverage model: planar distance in meters."""

import math


def planar_distance_m(x1: float, y1: float, x2: float, y2: float) -> float:
    """Euclidean distance between two (x, y) positions given in meters."""
    return math.hypot(x2 - x1, y2 - y1)


def within_radius(x1: float, y1: float, x2: float, y2: float, radius_m: float) -> bool:
    """True if (x2, y2) lies in the closed disk of radius_m around (x1, y1)."""
    return planar_distance_m(x1, y1, x2, y2) <= radius_m
