"""Scaling-rotation distances and minimal smooth interpolation curves."""

from srgeom._core import (
    Curve,
    CurveSet,
    SrgeomError,
    best_coordinate_plane,
    brute_force_oracle,
    classify,
    classify_stepwise,
    count_strata,
    curves_equal,
    d_gr,
    d_sr,
    d_sr_report,
    fiber,
    principal_angles,
    sign_change_reducible,
)

__all__ = [
    "Curve",
    "CurveSet",
    "SrgeomError",
    "best_coordinate_plane",
    "brute_force_oracle",
    "classify",
    "classify_stepwise",
    "count_strata",
    "curves_equal",
    "d_gr",
    "d_sr",
    "d_sr_report",
    "fiber",
    "principal_angles",
    "sign_change_reducible",
]
