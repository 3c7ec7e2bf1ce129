"""Lower bounds on P(|T| / sqrt(n) > t) from E_2k and E_4k.

Both bounds come from Chebyshev applied to ((T / sqrt(n))^(2k) - c^k):

    P(|T|/sqrt(n) > (c^k - sqrt(lam))^(1/2k)) >= 1 - (c^2k - 2 c^k E_2k + E_4k) / lam

for 0 < lam < c^2k.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional

import mpmath

from src.errors import ValidationError, require
from src.moments import MomentTable
from src.settings import get_defaults

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TailBound:
    """A guaranteed P(|T| / sqrt(n) > threshold) >= probability_floor."""

    threshold: mpmath.mpf
    probability_floor: mpmath.mpf
    parameters: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"threshold": self.threshold, "probability_floor": self.probability_floor, **self.parameters}


def mp(value) -> mpmath.mpf:
    """Exact Fraction or float to mpf at the working precision."""
    if isinstance(value, Fraction):
        return mpmath.mpf(value.numerator) / value.denominator
    return mpmath.mpf(value)


def _precision() -> int:
    return get_defaults().precision.mp_dps


def markov_objective(table: MomentTable, delta: float, c_k) -> mpmath.mpf:
    """1 - (c^2k - 2 c^k E_2k + E_4k) / (c^k - delta^2k)^2, the bound at lam = (c^k - delta^2k)^2."""
    with mpmath.workdps(_precision()):
        e2k, e4k, c_k = mp(table.e2k), mp(table.e4k), mp(c_k)
        x = mp(delta) ** (2 * table.k)
        return 1 - (c_k**2 - 2 * c_k * e2k + e4k) / (c_k - x) ** 2


def markov_tail_bound(table: MomentTable, delta: float) -> TailBound:
    """Floor on P(|T| / sqrt(n) > delta) at the optimal c.

    Args:
        table: Exact moments (uses E_2k and E_4k)
        delta: Threshold, 0 < delta < 1/2

    Returns:
        TailBound with floor (E_2k - d)^2 / (E_4k - 2 d E_2k + d^2), d = delta^2k,
        and the maximising c^k = (E_4k - d E_2k) / (E_2k - d)
    """
    if not 0 < delta < 0.5:
        raise ValidationError(f"delta={delta} violates 0 < delta < 1/2")
    k = table.k
    with mpmath.workdps(_precision()):
        e2k, e4k = mp(table.e2k), mp(table.e4k)
        x = mp(delta) ** (2 * k)
        if x >= e2k:
            raise ValidationError(f"delta^(2k)={mpmath.nstr(x, 8)} >= E2k={mpmath.nstr(e2k, 8)}: bound is vacuous")
        floor = (e2k - x) ** 2 / (e4k - 2 * x * e2k + x**2)
        c_k = (e4k - x * e2k) / (e2k - x)
    return TailBound(
        threshold=mp(delta),
        probability_floor=floor,
        parameters={"delta": mp(delta), "k": k, "c_k": c_k, "lambda": (c_k - x) ** 2},
    )


def small_prob_expansion(table: MomentTable, epsilon: float, eta: float) -> mpmath.mpf:
    """Leading terms of c^k - sqrt(lam) as epsilon -> 0 with c^k = eta / epsilon."""
    with mpmath.workdps(_precision()):
        e2k, e4k = mp(table.e2k), mp(table.e4k)
        eps, eta = mp(epsilon), mp(eta)
        return e2k - eta / 2 + ((e2k**2 - e4k) / 2 + e2k * eta / 2 - 3 * eta**2 / 8) * eps / eta


def small_prob_threshold(table: MomentTable, epsilon: float, eta: Optional[float] = None) -> TailBound:
    """A threshold t with P(|T| / sqrt(n) > t) >= epsilon.

    Args:
        table: Exact moments
        epsilon: Target probability, 0 < epsilon < 1
        eta: epsilon * c^k; defaults to epsilon^(1/4), inside sqrt(eps) << eta << 1

    Returns:
        TailBound with threshold (c^k - sqrt(lam))^(1/2k), floor epsilon, and the
        achieved gap (E_2k)^(1/2k) - t
    """
    if not 0 < epsilon < 1:
        raise ValidationError(f"epsilon={epsilon} violates 0 < epsilon < 1")
    k = table.k
    with mpmath.workdps(_precision()):
        eps = mp(epsilon)
        eta_value = mpmath.root(eps, 4) if eta is None else mp(eta)
        e2k, e4k = mp(table.e2k), mp(table.e4k)
        require(eta_value > 0, f"eta={eta_value} must be positive")
        if eta_value >= 2 * e2k:
            raise ValidationError(
                f"eta >= 2*E2k (eta={mpmath.nstr(eta_value, 8)}, 2*E2k={mpmath.nstr(2 * e2k, 8)})"
            )
        c_k = eta_value / eps
        lam = (c_k**2 - 2 * c_k * e2k + e4k) / (1 - eps)
        if lam >= c_k**2:
            raise ValidationError(
                f"lambda >= c^(2k) (lambda={mpmath.nstr(lam, 8)}, c^(2k)={mpmath.nstr(c_k**2, 8)}); "
                f"eta={mpmath.nstr(eta_value, 6)} does not fit epsilon={epsilon}"
            )
        base = c_k - mpmath.sqrt(lam)
        t = mpmath.root(base, 2 * k)
        gap = mpmath.root(e2k, 2 * k) - t

    logger.debug("small-prob threshold eps=%s eta=%s -> t=%s", epsilon, eta_value, t)
    return TailBound(
        threshold=t,
        probability_floor=eps,
        parameters={
            "epsilon": eps,
            "eta": eta_value,
            "k": k,
            "c_k": c_k,
            "lambda": lam,
            "gap": gap,
            "expansion": small_prob_expansion(table, epsilon, eta_value),
        },
    )
