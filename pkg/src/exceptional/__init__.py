# Monic separable cubics: residue profiles, bipartite degrees, beta-alpha tradeoff
from src.exceptional.beta import (
    BetaEstimate,
    all_residue_event_probability,
    beta_estimate,
    beta_lower_bound,
    finite_beta_floor,
)
from src.exceptional.cubics import discriminant, enumerate_cubics, family_size, sample_cubic
from src.exceptional.degrees import (
    GraphParams,
    degree_oracle,
    degree_table,
    edge_census,
    exact_degree,
    hasse_degree_floor,
    limiting_edge_density,
    paper_degree_bound,
    subset_degree,
)
from src.exceptional.profiles import CubicProfile, cubic_profile, hasse_audit, profile_census

__all__ = [
    "BetaEstimate",
    "CubicProfile",
    "GraphParams",
    "all_residue_event_probability",
    "beta_estimate",
    "beta_lower_bound",
    "cubic_profile",
    "degree_oracle",
    "degree_table",
    "discriminant",
    "edge_census",
    "enumerate_cubics",
    "exact_degree",
    "family_size",
    "finite_beta_floor",
    "hasse_audit",
    "hasse_degree_floor",
    "limiting_edge_density",
    "paper_degree_bound",
    "profile_census",
    "sample_cubic",
    "subset_degree",
]
