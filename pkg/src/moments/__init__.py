# Exact moments of the normalised character sum
from src.moments.exact import (
    MomentTable,
    asymptotic_constants,
    composition_weight,
    e6_expansion,
    exact_moment,
    gaussian_leading,
    moment_table,
)
from src.moments.oracle import brute_force_moments, histogram_moments

__all__ = [
    "MomentTable",
    "asymptotic_constants",
    "brute_force_moments",
    "composition_weight",
    "e6_expansion",
    "exact_moment",
    "gaussian_leading",
    "histogram_moments",
    "moment_table",
]
