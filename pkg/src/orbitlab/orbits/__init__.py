"""Pfaffian factors and Fourier transforms of regular coadjoint orbits."""

from .calibration import (CalibrationStore, calibrate, clear_cache, default_path,
                          format_store, load_store, parse_store)
from .pfaffian import PfaffianValue, m_roots_of, pfaffian_abs
from .transform import (OrbitTransform, RankOneFactor, factor_limit_transform,
                        lambda_t, limit_transform, orbit_fourier_transform,
                        orbit_transform_data, rank_one_factors, transform_at_t)

__all__ = [
    "CalibrationStore", "OrbitTransform", "PfaffianValue", "RankOneFactor",
    "calibrate", "clear_cache", "default_path", "factor_limit_transform",
    "format_store", "lambda_t", "limit_transform", "load_store", "m_roots_of",
    "orbit_fourier_transform", "orbit_transform_data", "parse_store",
    "pfaffian_abs", "rank_one_factors", "transform_at_t",
]
