"""Desk-scale oracles for encoded games."""

from .check import (
    PointResult,
    VerificationReport,
    check_points,
    cluster_points,
    grid_clusters,
    grid_completeness,
)
from .degree import DegreeError, local_degree, power_map, translated_power_system
from .roots import Root, RootList, roots_in_unit_interval, square_free, sturm_sequence

__all__ = [
    "DegreeError",
    "PointResult",
    "Root",
    "RootList",
    "VerificationReport",
    "check_points",
    "cluster_points",
    "grid_clusters",
    "grid_completeness",
    "local_degree",
    "power_map",
    "roots_in_unit_interval",
    "square_free",
    "sturm_sequence",
    "translated_power_system",
]
