"""Fractional s-perimeters of explicit planar sets."""

from ._core import (  # noqa: F401
    __version__,
    arc_cover_count,
    asymptotic_scan_polygon,
    ball_volume,
    box_count,
    box_dimension,
    cover_count,
    dim_threshold,
    interval_interaction,
    k1n_constant,
    koch_curve,
    koch_snowflake,
    lacunary_lower_bound,
    lacunary_perimeter,
    perimeter_1d,
    perimeter_polygon,
)
