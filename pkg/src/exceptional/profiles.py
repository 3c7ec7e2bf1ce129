"""Residue profiles (n_q, n_n, z) of cubics and the Hasse audit over them."""

import logging
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import partial
from typing import Optional

import numpy as np

from src.errors import InvariantBreach, ValidationError, require
from src.exceptional.cubics import (
    check_cubic,
    cubic_coefficients,
    cubic_values,
    discriminant,
    family_field,
    family_size,
    sample_cubic,
)
from src.field import character_array, make_field
from src.poly import Polynomial
from src.sampler.pool import run_partitioned
from src.sampler.rng import RngSpec

logger = logging.getLogger(__name__)

ALL = "all"
SAMPLE = "sample"
SCOPES = (ALL, SAMPLE)

# cap on the (b, c, x) cells evaluated at once by the census
CENSUS_CELLS = 1 << 22


@dataclass(frozen=True)
class CubicProfile:
    """How the values f(x), x in F_p, split into residues, non-residues and zeros."""

    n_q: int
    n_n: int
    z: int
    f: Optional[Polynomial] = None

    @property
    def p(self) -> int:
        return self.n_q + self.n_n + self.z

    @property
    def larger(self) -> int:
        return max(self.n_q, self.n_n)

    @property
    def a_f(self) -> Fraction:
        """Imbalance max(n_q, n_n) - p/2 = (|n_q - n_n| - z) / 2."""
        return Fraction(2 * self.larger - self.p, 2)

    @property
    def character_sum(self) -> int:
        return self.n_q - self.n_n

    def to_dict(self) -> dict:
        return {
            "f": None if self.f is None else str(self.f),
            "n_q": self.n_q,
            "n_n": self.n_n,
            "z": self.z,
            "a_f": self.a_f,
        }


def _split(chi: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    return (chi == 1).sum(axis=-1), (chi == -1).sum(axis=-1), (chi == 0).sum(axis=-1)


def cubic_profile(p: int, f: Polynomial) -> CubicProfile:
    """Exact residue census of f over all of F_p.

    Raises:
        ValidationError: if f is not a monic separable cubic over F_p
    """
    spec = make_field(p)
    a, b, c = check_cubic(spec, f)
    chi = character_array(spec, cubic_values(p, [a], [b], [c])[0])
    n_q, n_n, z = (int(v) for v in _split(chi))
    if z > 3:
        raise InvariantBreach(f"separable cubic {f} has {z} roots over F_{p}")
    return CubicProfile(n_q=n_q, n_n=n_n, z=z, f=f)


def profile_census(p: int) -> dict[tuple[int, int, int], int]:
    """Number of family members with each profile (n_q, n_n, z).

    For p > 3 the shift x -> x - a/3 maps every cubic onto a depressed one
    y^3 + B y + C with the same multiset of values, and each depressed cubic
    is hit by exactly p cubics. Only the p^2 depressed cubics are evaluated.
    """
    spec = family_field(p)
    chi = character_array(spec, spec.elements).astype(np.int8)
    chi2 = np.concatenate([chi, chi])
    x = spec.elements
    c = np.arange(p, dtype=np.int64)

    if p == 3:
        a_values, weight = range(p), 1
    else:
        a_values, weight = (0,), p

    step = max(1, CENSUS_CELLS // (p * p))
    census: Counter = Counter()
    for a in a_values:
        head = (x * x % p * x + a * (x * x % p)) % p
        for lo in range(0, p, step):
            b = np.arange(lo, min(lo + step, p), dtype=np.int64)
            base = (head[None, :] + b[:, None] * x[None, :]) % p
            # base + c stays below 2p, so chi2 needs no further reduction
            n_q, _, z = _split(chi2[base[:, None, :] + c[None, :, None]])
            separable = discriminant(p, a, b[:, None], c[None, :]) != 0
            keys, counts = np.unique(n_q[separable] * (p + 1) + z[separable], return_counts=True)
            for key, count in zip(keys.tolist(), counts.tolist()):
                nq, zz = divmod(key, p + 1)
                census[(nq, p - nq - zz, zz)] += count * weight

    total = sum(census.values())
    if total != family_size(p):
        raise InvariantBreach(f"profile census over F_{p} covers {total} cubics, expected {family_size(p)}")
    return dict(sorted(census.items()))


def _violates_hasse(p: int, n_q: int, n_n: int, z: int) -> bool:
    s = n_q - n_n
    twice_a_f = 2 * max(n_q, n_n) - p
    return s * s > 4 * p or (twice_a_f > 0 and twice_a_f * twice_a_f > 4 * p)


def _sample_chunk(p: int, rng: RngSpec, start: int, stop: int) -> np.ndarray:
    spec = make_field(p)
    abc = [cubic_coefficients(sample_cubic(p, rng.stream(i + 1))) for i in range(start, stop)]
    a, b, c = (np.array(col, dtype=np.int64) for col in zip(*abc))
    n_q, n_n, z = _split(character_array(spec, cubic_values(p, a, b, c)))
    return np.stack([n_q, n_n, z], axis=1)


def hasse_audit(
    p: int,
    scope: str = ALL,
    trials: Optional[int] = None,
    rng: Optional[RngSpec] = None,
    jobs: int = 1,
) -> dict:
    """Check |sum_x chi(f(x))| <= 2 sqrt(p) and a_f <= sqrt(p) over the family.

    Args:
        p: Odd prime
        scope: "all" audits every cubic (via the profile census), "sample" draws ``trials`` cubics
        trials: Cubics to draw in sample scope
        rng: Seeded streams for sample scope; cubic i reads stream i + 1
        jobs: Worker processes for sample scope

    Returns:
        Audit report with the largest observed |sum| / (2 sqrt(p))

    Raises:
        InvariantBreach: on any violation
    """
    if scope not in SCOPES:
        raise ValidationError(f"invalid audit scope {scope!r}; expected one of {SCOPES}")

    if scope == ALL:
        rows = [(nq, nn, z, count) for (nq, nn, z), count in profile_census(p).items()]
    else:
        require(trials is not None and trials >= 1, "sample audit needs trials >= 1")
        require(rng is not None, "sample audit needs a seeded rng")
        make_field(p)
        blocks = run_partitioned(partial(_sample_chunk, p, rng), trials, jobs=jobs)
        profiles = np.concatenate(blocks)
        keys, counts = np.unique(profiles, axis=0, return_counts=True)
        rows = [(nq, nn, z, count) for (nq, nn, z), count in zip(keys.tolist(), counts.tolist())]

    audited = sum(count for *_, count in rows)
    violations = sum(count for nq, nn, z, count in rows if _violates_hasse(p, nq, nn, z))
    max_abs = max(abs(nq - nn) for nq, nn, _, _ in rows)
    max_a_f = max(Fraction(2 * max(nq, nn) - p, 2) for nq, nn, _, _ in rows)
    report = {
        "p": p,
        "scope": scope,
        "audited": audited,
        "bound": 2 * math.sqrt(p),
        "max_abs_sum": max_abs,
        "max_normalized": max_abs / (2 * math.sqrt(p)),
        "max_a_f": max_a_f,
        "sqrt_p": math.sqrt(p),
        "violations": violations,
    }
    if violations:
        raise InvariantBreach(f"Hasse bound violated by {violations} cubics over F_{p}: {report}")
    logger.info("hasse audit over F_%d (%s): %d cubics, max |sum| %d", p, scope, audited, max_abs)
    return report
