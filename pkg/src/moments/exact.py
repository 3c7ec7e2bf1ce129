"""Exact moments E_j of T / sqrt(n) under 4k-wise independence.

For even j,

    E_j = n^(-j/2) * sum_{m=1}^{j/2} (1 - 1/q)^m * C(n, m) * M(j, m)

where M(j, m) sums j! / (h_1! ... h_m!) over ordered compositions of j into
m positive even parts. Odd moments vanish.
"""

import logging
import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import mpmath

from src.errors import RegimeWarning, ValidationError, require
from src.settings import get_defaults

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MomentTable:
    """E_1..E_4k for a subset of size n in F_q."""

    n: int
    q: int
    k: int
    values: dict[int, Fraction] = field(default_factory=dict)

    def __getitem__(self, j: int) -> Fraction:
        return self.values[j]

    @property
    def e2k(self) -> Fraction:
        return self.values[2 * self.k]

    @property
    def e4k(self) -> Fraction:
        return self.values[4 * self.k]

    @classmethod
    def limit(cls, k: int, q: int | None = None) -> "MomentTable":
        """The n -> infinity table: (1 - 1/q)^(j/2) (j - 1)!! (q = None means q -> infinity)."""
        scale = Fraction(1) if q is None else 1 - Fraction(1, q)
        values = {}
        for j in range(1, 4 * k + 1):
            values[j] = Fraction(0) if j % 2 else scale ** (j // 2) * gaussian_leading(j)
        return cls(n=0, q=q or 0, k=k, values=values)


@lru_cache(maxsize=None)
def _compositions(j: int, m: int) -> tuple[tuple[int, ...], ...]:
    """Ordered compositions of j into m positive even parts."""
    if m == 1:
        return ((j,),) if j >= 2 and j % 2 == 0 else ()
    out = []
    for first in range(2, j - 2 * (m - 1) + 1, 2):
        for rest in _compositions(j - first, m - 1):
            out.append((first,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def composition_weight(j: int, m: int) -> int:
    """M(j, m) = sum of j! / (h_1! ... h_m!) over even compositions of j into m parts.

    Args:
        j: Even moment order
        m: Number of parts, 1 <= m <= j/2

    Returns:
        Exact integer weight
    """
    require(j >= 2 and j % 2 == 0, f"j={j} must be even and >= 2")
    require(1 <= m <= j // 2, f"m={m} not in [1, j/2={j // 2}]")
    top = math.factorial(j)
    return sum(top // math.prod(math.factorial(h) for h in parts) for parts in _compositions(j, m))


def gaussian_leading(j: int) -> int:
    """j! / (2^(j/2) (j/2)!), the Gaussian moment (j - 1)!!."""
    require(j >= 2 and j % 2 == 0, f"j={j} must be even and >= 2")
    half = j // 2
    return math.factorial(j) // (2**half * math.factorial(half))


def exact_moment(j: int, n: int, q: int, k: int) -> Fraction:
    """E_j for a random polynomial of degree <= 4k - 1 over F_q and |S| = n.

    Warns (RegimeWarning) when n <= 4k: the value is still exact there.
    """
    require(k >= 1, f"k={k} < 1")
    require(1 <= j, f"j={j} < 1")
    if j > 4 * k:
        raise ValidationError(f"j={j} > 4k={4 * k}: moments need 4k-wise independence")
    require(1 <= n <= q, f"n={n} not in [1, q={q}]")
    if n <= 4 * k:
        message = f"n={n} <= 4k={4 * k}: outside the 4k < n regime (formula still exact)"
        logger.info(message)
        warnings.warn(message, RegimeWarning, stacklevel=2)

    if j % 2:
        return Fraction(0)
    base = 1 - Fraction(1, q)
    total = sum(base**m * math.comb(n, m) * composition_weight(j, m) for m in range(1, j // 2 + 1))
    return Fraction(total) / n ** (j // 2)


def moment_table(n: int, q: int, k: int) -> MomentTable:
    """E_1..E_4k as exact rationals."""
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        values = {j: exact_moment(j, n, q, k) for j in range(1, 4 * k + 1)}
    if caught:
        warnings.warn(str(caught[0].message), RegimeWarning, stacklevel=2)
    return MomentTable(n=n, q=q, k=k, values=values)


def e6_expansion(n: int, q: int) -> Fraction:
    """The sixth moment written out in powers of 1/n (valid for k >= 2)."""
    u = 1 - Fraction(1, q)
    inv_q = Fraction(1, q)
    return (
        15 * u**3
        - Fraction(15, n) * u**2 * (2 - 3 * inv_q)
        + Fraction(1, n * n) * u * (16 - 45 * inv_q + 30 * inv_q**2)
    )


def asymptotic_constants(k: int) -> dict[str, mpmath.mpf]:
    """Limits bounding (E_2k)^(1/2k) and E_2k^2 / E_4k from below.

    Returns:
        {"root_bound": sqrt(2k/e), "ratio_bound": (sqrt(2 pi)/e)^3 2^(1/2 - 2k)}
    """
    require(k >= 1, f"k={k} < 1")
    with mpmath.workdps(get_defaults().precision.mp_dps):
        e = mpmath.e
        root_bound = mpmath.sqrt(2 * k / e)
        ratio_bound = (mpmath.sqrt(2 * mpmath.pi) / e) ** 3 * mpmath.power(2, mpmath.mpf(1) / 2 - 2 * k)
    return {"root_bound": root_bound, "ratio_bound": ratio_bound}
