# Tail lower bounds and theorem constants
from src.bounds.tail import (
    TailBound,
    markov_objective,
    markov_tail_bound,
    small_prob_expansion,
    small_prob_threshold,
)
from src.bounds.theorems import (
    probability_floor_assembled,
    theorem1_parameters,
    theorem2_parameters,
    theorem_constants,
)

__all__ = [
    "TailBound",
    "markov_objective",
    "markov_tail_bound",
    "probability_floor_assembled",
    "small_prob_expansion",
    "small_prob_threshold",
    "theorem1_parameters",
    "theorem2_parameters",
    "theorem_constants",
]
