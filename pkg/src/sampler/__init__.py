# Random curves, character profiles, point counts and tail estimates
from src.sampler.curves import sample_curve, sample_poly
from src.sampler.estimate import (
    ALL_POLYS,
    EXHAUSTIVE,
    HYPERELLIPTIC,
    MONTECARLO,
    TailEstimate,
    count_exceeding,
    distribution_histogram,
    tail_estimate,
    weil_audit,
    wilson_interval,
)
from src.sampler.profile import (
    CharProfile,
    char_profile,
    character_sum,
    discrepancy,
    full_point_count,
    point_count,
    validate_subset,
)
from src.sampler.rng import RngSpec, TrialStream, mix64
from src.sampler.subsets import full_field_subset, parse_subset_file, parse_subset_text, seeded_subset

__all__ = [
    "ALL_POLYS",
    "EXHAUSTIVE",
    "HYPERELLIPTIC",
    "MONTECARLO",
    "CharProfile",
    "RngSpec",
    "TailEstimate",
    "TrialStream",
    "char_profile",
    "character_sum",
    "count_exceeding",
    "discrepancy",
    "distribution_histogram",
    "full_field_subset",
    "full_point_count",
    "mix64",
    "parse_subset_file",
    "parse_subset_text",
    "point_count",
    "sample_curve",
    "sample_poly",
    "seeded_subset",
    "tail_estimate",
    "validate_subset",
    "weil_audit",
    "wilson_interval",
]
