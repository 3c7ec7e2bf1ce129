"""Brute-force moments: enumerate every polynomial and average (T / sqrt(n))^j."""

import logging
from fractions import Fraction
from typing import Sequence

from src.errors import InvariantBreach, check_budget, require
from src.field import FieldSpec
from src.sampler import ALL_POLYS, EXHAUSTIVE, distribution_histogram
from src.settings import get_defaults

logger = logging.getLogger(__name__)


def histogram_moments(histogram: dict[int, int], n: int, j_max: int) -> dict[int, Fraction]:
    """Exact moments E((T / sqrt(n))^j), j = 1..j_max, of a T-histogram.

    Odd moments are only rational when the odd power sums vanish, which the
    sign symmetry f -> c f (chi(c) = -1) guarantees for exhaustive histograms.

    Raises:
        InvariantBreach: if an odd power sum is nonzero
    """
    total = sum(histogram.values())
    require(total > 0, "empty histogram")
    out = {}
    for j in range(1, j_max + 1):
        power_sum = sum(count * t**j for t, count in histogram.items())
        if j % 2:
            if power_sum:
                raise InvariantBreach(f"odd power sum of T is {power_sum} for j={j}; histogram is not symmetric")
            out[j] = Fraction(0)
        else:
            out[j] = Fraction(power_sum, total * n ** (j // 2))
    return out


def brute_force_moments(
    spec: FieldSpec, k: int, subset: Sequence[int], j_max: int, jobs: int = 1
) -> dict[int, Fraction]:
    """Moments of T / sqrt(n) over all q^(4k) polynomials of degree <= 4k - 1.

    Args:
        spec: Field
        k: Curve parameter
        subset: Distinct elements s_1..s_n
        j_max: Highest moment, at most 4k
        jobs: Worker processes for the enumeration

    Returns:
        Map j -> exact rational E_j
    """
    require(1 <= j_max <= 4 * k, f"j_max={j_max} not in [1, 4k={4 * k}]")
    check_budget(spec.q ** (4 * k), get_defaults().budgets.enumeration, "q^(4k) oracle polynomials")
    histogram = distribution_histogram(spec, k, subset, ALL_POLYS, EXHAUSTIVE, jobs=jobs)
    logger.debug("oracle histogram for q=%d k=%d n=%d: %s", spec.q, k, len(subset), histogram)
    return histogram_moments(histogram, len(subset), j_max)
