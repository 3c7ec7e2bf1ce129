"""The beta-alpha tradeoff: how many subsets reach degree alpha (p^3 - p^2)."""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import partial
from math import comb
from typing import Sequence

import mpmath

from src.errors import ValidationError, check_budget, require
from src.exceptional.cubics import family_field, family_size
from src.exceptional.degrees import GraphParams, edge_census, subset_degree
from src.sampler.estimate import wilson_interval
from src.sampler.pool import run_partitioned
from src.sampler.rng import RngSpec
from src.settings import get_defaults

logger = logging.getLogger(__name__)

# subsets per worker task; each costs a full pass over the p^3 family
BETA_CHUNK = 64


@dataclass(frozen=True)
class BetaEstimate:
    """Share of sampled size-n subsets whose degree reaches the alpha threshold."""

    p: int
    n: int
    m: int
    alpha: float
    threshold_degree: Fraction
    hits: int
    samples: int
    beta_hat: float
    ci_low: float
    ci_high: float

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "n": self.n,
            "m": self.m,
            "alpha": self.alpha,
            "threshold_degree": self.threshold_degree,
            "hits": self.hits,
            "samples": self.samples,
            "beta_hat": self.beta_hat,
            "ci_low": self.ci_low,
            "ci_high": self.ci_high,
        }


def _exact(value) -> Fraction:
    return Fraction(repr(value)) if isinstance(value, float) else Fraction(value)


def _beta_chunk(p: int, n: int, m: int, threshold: Fraction, rng: RngSpec, start: int, stop: int) -> int:
    hits = 0
    for i in range(start, stop):
        subset = rng.stream(i + 1).distinct_below(p, n)
        if subset_degree(p, subset, m) >= threshold:
            hits += 1
    return hits


def beta_estimate(p: int, n: int, m: int, alpha: float, samples: int, rng: RngSpec, jobs: int = 1) -> BetaEstimate:
    """Estimate beta by sampling size-n subsets uniformly without replacement.

    Args:
        p: Odd prime
        n: Subset size
        m: Slack; edges need |sum| >= n - 2m
        alpha: Degree threshold as a share of the family size
        samples: Subsets to draw; subset i reads stream i + 1
        rng: Seeded streams
        jobs: Worker processes

    Returns:
        BetaEstimate with a Wilson interval at the configured z
    """
    family_field(p)
    GraphParams(p=p, n=n, m=m, alpha=alpha)
    defaults = get_defaults()
    require(samples >= defaults.sampling.min_trials, f"samples={samples} < {defaults.sampling.min_trials}")
    check_budget(p**4, defaults.budgets.beta_work, "p^3 * p work per sampled subset")

    threshold = _exact(alpha) * family_size(p)
    worker = partial(_beta_chunk, p, n, m, threshold, rng)
    hits = sum(run_partitioned(worker, samples, jobs=jobs, chunk=BETA_CHUNK))
    low, high = wilson_interval(hits, samples)
    logger.info("beta over F_%d (n=%d, m=%d, alpha=%s): %d / %d", p, n, m, alpha, hits, samples)
    return BetaEstimate(
        p=p,
        n=n,
        m=m,
        alpha=alpha,
        threshold_degree=threshold,
        hits=hits,
        samples=samples,
        beta_hat=hits / samples,
        ci_low=low,
        ci_high=high,
    )


def beta_lower_bound(n: int, m: int, alpha: float) -> mpmath.mpf:
    """(C(n, m) 2^-n - alpha) / (1 - alpha), the tradeoff floor without its o(1) term."""
    require(n >= 1 and 0 <= m and 2 * m <= n, f"(n={n}, m={m}) violates 0 <= m <= n/2")
    density = Fraction(comb(n, m), 2**n)
    a = _exact(alpha)
    if not 0 < a < density:
        raise ValidationError(f"alpha={alpha} violates 0 < alpha < C(n,m) 2^-n = {float(density):.6g}")
    bound = (density - a) / (1 - a)
    with mpmath.workdps(get_defaults().precision.mp_dps):
        return mpmath.mpf(bound.numerator) / bound.denominator


def finite_beta_floor(p: int, n: int, m: int, alpha: float) -> Fraction:
    """max(0, (rho - alpha) / (1 - alpha)) with rho the exact edge density at this p."""
    a = _exact(alpha)
    require(0 <= a < 1, f"alpha={alpha} not in [0, 1)")
    rho = edge_census(p, n, m)["mean_degree_ratio"]
    return max(Fraction(0), (rho - a) / (1 - a))


def all_residue_event_probability(p: int, subset: Sequence[int]) -> Fraction:
    """Share of the family with chi(f(s)) constant and nonzero on all of S."""
    if len(subset) == 0:
        return Fraction(1)
    return Fraction(subset_degree(p, subset, 0), family_size(p))
