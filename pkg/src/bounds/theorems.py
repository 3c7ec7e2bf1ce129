"""Theorem constants and the constructive parameter choices behind them."""

import logging
import math
from fractions import Fraction
from typing import Optional

import mpmath

from src.bounds.tail import markov_tail_bound, mp, small_prob_threshold
from src.errors import ValidationError, require
from src.moments import MomentTable
from src.poly import c_qk
from src.settings import get_defaults

logger = logging.getLogger(__name__)

# strictly below sqrt(2/e) = 0.857763...
THEOREM2_FACTOR = mpmath.mpf("0.8577")
# uniform upper bound on c_{q,k} = 2 - 1/q
C_BOUND = 2
DELTA_MAX = 0.49
SEARCH_STEPS = 80
EPSILON_LADDER_FLOOR = 1e-12


def theorem_constants(k: int) -> dict[str, mpmath.mpf]:
    """thm1 = 4 pi^(3/2) e^-3 2^-2k and thm2 = 0.8577 sqrt(k)."""
    require(k >= 1, f"k={k} < 1")
    with mpmath.workdps(get_defaults().precision.mp_dps):
        thm1 = 4 * mpmath.pi ** mpmath.mpf(1.5) * mpmath.exp(-3) * mpmath.power(2, -2 * k)
        thm2 = THEOREM2_FACTOR * mpmath.sqrt(k)
        sqrt_2_over_e = mpmath.sqrt(2 / mpmath.e)
    return {"thm1": thm1, "thm2": thm2, "sqrt_2_over_e": sqrt_2_over_e}


def _exact(value: float) -> Fraction:
    # decimal reading of the float, so eps = 0.1 is exactly 1/10
    return Fraction(repr(value)) if isinstance(value, float) else Fraction(value)


def threshold_size(epsilon: float, share: int) -> int:
    """Smallest N with C_BOUND / N < epsilon / share."""
    ratio = C_BOUND * share / _exact(epsilon)
    return math.floor(ratio) + 1


def _ratio_gap(table: MomentTable, delta) -> mpmath.mpf:
    e2k, e4k = mp(table.e2k), mp(table.e4k)
    x = mp(delta) ** (2 * table.k)
    ratio = (1 - x / e2k) ** 2 / (1 - 2 * x * e2k / e4k + x**2 / e4k)
    return abs(ratio - 1)


def theorem1_parameters(k: int, epsilon: float, table: MomentTable) -> dict:
    """delta and N of the first theorem's proof.

    delta is the largest value in (0, 0.49] (to search resolution) with
    |ratio(delta) - 1| < (eps/3) E_4k / E_2k^2; N is the smallest integer with
    2 / N < eps / 3.
    """
    if not 0 < epsilon < 1:
        raise ValidationError(f"epsilon={epsilon} violates 0 < epsilon < 1")
    require(table.k == k, f"table built for k={table.k}, not k={k}")

    with mpmath.workdps(get_defaults().precision.mp_dps):
        e2k, e4k = mp(table.e2k), mp(table.e4k)
        tolerance = mp(epsilon) / 3 * e4k / e2k**2

        def admissible(delta) -> bool:
            if mp(delta) ** (2 * k) >= e2k:
                return False
            return _ratio_gap(table, delta) < tolerance

        if admissible(DELTA_MAX):
            delta = mp(DELTA_MAX)
        else:
            lo, hi = mpmath.mpf(0), mp(DELTA_MAX)
            for _ in range(SEARCH_STEPS):
                mid = (lo + hi) / 2
                if admissible(mid):
                    lo = mid
                else:
                    hi = mid
            delta = lo
        if delta <= 0:
            raise ValidationError(f"no admissible delta for epsilon={epsilon}")

        floor = markov_tail_bound(table, float(delta)).probability_floor

    n_threshold = threshold_size(epsilon, 3)
    logger.debug("theorem 1: eps=%s delta=%s N=%d", epsilon, delta, n_threshold)
    return {"delta": delta, "N": n_threshold, "markov_floor": floor, "tolerance": tolerance}


def theorem2_parameters(k: int, table: MomentTable, target: Optional[float] = None) -> dict:
    """epsilon, eta, t and N of the second theorem's proof.

    Walks epsilon = 1/2, 1/4, ... and keeps the first (largest) epsilon whose
    small-probability threshold exceeds ``target`` (default 0.8577 sqrt(k)).
    """
    require(table.k == k, f"table built for k={table.k}, not k={k}")
    target_value = THEOREM2_FACTOR * mpmath.sqrt(k) if target is None else mp(target)

    epsilon = 0.5
    while epsilon >= EPSILON_LADDER_FLOOR:
        try:
            bound = small_prob_threshold(table, epsilon)
        except ValidationError:
            bound = None
        if bound is not None and bound.threshold > target_value:
            return {
                "epsilon": epsilon,
                "eta": bound.parameters["eta"],
                "threshold": bound.threshold,
                "target": target_value,
                "N": threshold_size(epsilon, 2),
            }
        epsilon /= 2

    raise ValidationError(
        f"no epsilon >= {EPSILON_LADDER_FLOOR} gives a threshold above {mpmath.nstr(target_value, 8)}; "
        f"(E2k)^(1/2k) = {mpmath.nstr(mpmath.root(mp(table.e2k), 2 * k), 8)}"
    )


def probability_floor_assembled(raw: float, q: int, k: int) -> mpmath.mpf:
    """max(0, raw - c_{q,k} / q): from all polynomials to hyperelliptic curves."""
    require(0 <= raw <= 1, f"raw probability {raw} not in [0, 1]")
    require(k >= 1, f"k={k} < 1")
    with mpmath.workdps(get_defaults().precision.mp_dps):
        return max(mpmath.mpf(0), mp(raw) - mp(c_qk(q) / q))
