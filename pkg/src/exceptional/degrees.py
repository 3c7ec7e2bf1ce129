"""Vertex degrees of the subset/cubic bipartite graph.

S (a size-n subset of F_p) and f (a monic separable cubic) are joined when
|sum_{s in S} chi(f(s))| >= n - 2m.
"""

import itertools
import logging
import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Optional, Sequence

import mpmath
import numpy as np

from src.errors import InvariantBreach, RegimeWarning, check_budget, require
from src.exceptional.cubics import cubic_block, cubic_values, discriminant, family_field, family_size
from src.exceptional.profiles import CENSUS_CELLS, CubicProfile, profile_census
from src.field import character_array
from src.sampler.pool import chunk_ranges
from src.sampler.profile import validate_subset
from src.settings import get_defaults

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GraphParams:
    """Subset size n, slack m and the optional alpha/beta of the tradeoff."""

    p: int
    n: int
    m: int
    alpha: Optional[float] = None
    beta: Optional[float] = None

    def __post_init__(self):
        require(0 <= self.n <= self.p, f"n={self.n} not in [0, p={self.p}]")
        require(0 <= self.m and 2 * self.m <= self.n, f"m={self.m} violates 0 <= m <= n/2 (n={self.n})")
        if self.alpha is not None:
            require(self.alpha >= 0, f"alpha={self.alpha} < 0")
        if self.beta is not None:
            require(0 <= self.beta <= 1, f"beta={self.beta} not in [0, 1]")
        if not self.in_regime:
            warnings.warn(
                f"n - 2m = {self.gap} <= sqrt(n) = {math.sqrt(self.n):.4g}; degrees stay exact",
                RegimeWarning,
                stacklevel=3,
            )

    @property
    def gap(self) -> int:
        """The edge threshold n - 2m."""
        return self.n - 2 * self.m

    @property
    def in_regime(self) -> bool:
        return self.gap > 0 and self.gap * self.gap > self.n


def exact_degree(profile: CubicProfile, n: int, m: int) -> int:
    """Number of size-n subsets S with |sum_S chi(f(s))| >= n - 2m.

    A subset taking a residues, b non-residues and c zeros has sum a - b, so
    the count is a sum of C(n_q, a) C(n_n, b) C(z, c) over a + b + c = n.
    """
    gap = GraphParams(p=profile.p, n=n, m=m).gap
    total = 0
    for a in range(min(n, profile.n_q) + 1):
        for b in range(min(n - a, profile.n_n) + 1):
            c = n - a - b
            if c <= profile.z and abs(a - b) >= gap:
                total += comb(profile.n_q, a) * comb(profile.n_n, b) * comb(profile.z, c)
    return total


def paper_degree_bound(profile: CubicProfile, n: int, m: int) -> int:
    """C(p - max, m) C(max, n - m) with max = max(n_q, n_n).

    m points come from the smaller class together with the zeros, n - m from
    the larger class; such an S has sum >= (n - m) - m. Never above exact_degree.
    """
    GraphParams(p=profile.p, n=n, m=m)
    return comb(profile.p - profile.larger, m) * comb(profile.larger, n - m)


def hasse_degree_floor(p: int, n: int, m: int) -> mpmath.mpf:
    """C(p/2 - sqrt(p), m) C(p/2 - sqrt(p), n - m) as generalised binomials."""
    GraphParams(p=p, n=n, m=m)
    with mpmath.workdps(get_defaults().precision.mp_dps):
        h = mpmath.mpf(p) / 2 - mpmath.sqrt(p)
        return mpmath.binomial(h, m) * mpmath.binomial(h, n - m)


def subset_degree(p: int, subset: Sequence[int], m: int, max_cells: int = CENSUS_CELLS) -> int:
    """Number of cubics f with |sum_{s in S} chi(f(s))| >= n - 2m.

    For fixed (a, b) the sums over c are shifts of one window of a doubled
    character table. The b axis is sliced so that no gather exceeds
    ``max_cells`` (b, s, c) cells.
    """
    spec = family_field(p)
    points = np.array(validate_subset(spec, subset), dtype=np.int64)
    gap = GraphParams(p=p, n=len(points), m=m).gap

    chi = character_array(spec, spec.elements).astype(np.int8)
    chi2 = np.concatenate([chi, chi])
    c = np.arange(p, dtype=np.int64)
    s2 = points * points % p
    s3 = s2 * points % p
    step = max(1, max_cells // (max(len(points), 1) * p))

    degree = 0
    for a in range(p):
        head = s3 + a * s2
        for lo in range(0, p, step):
            b = np.arange(lo, min(lo + step, p), dtype=np.int64)
            base = (head[None, :] + b[:, None] * points[None, :]) % p
            sums = chi2[base[:, :, None] + c[None, None, :]].sum(axis=1, dtype=np.int64)
            separable = discriminant(p, a, b[:, None], c[None, :]) != 0
            degree += int(np.count_nonzero((np.abs(sums) >= gap) & separable))
    return degree


def limiting_edge_density(n: int, m: int) -> Fraction:
    """P(|2X - n| >= n - 2m) for X ~ Bin(n, 1/2), the p -> infinity edge density."""
    gap = n - 2 * m
    return Fraction(sum(comb(n, a) for a in range(n + 1) if abs(2 * a - n) >= gap), 2**n)


def edge_census(p: int, n: int, m: int) -> dict:
    """Total edge count and mean degrees, summed over profiles.

    Returns:
        edges, mean_degree (per cubic), mean_degree_ratio (edge density
        E / (C(p, n) #F)), min_layer_bound over all cubics, and the two limits
        limiting_edge_density and C(n, m) 2^-n
    """
    GraphParams(p=p, n=n, m=m)
    census = profile_census(p)
    edges = 0
    min_bound = None
    for (n_q, n_n, z), count in census.items():
        profile = CubicProfile(n_q=n_q, n_n=n_n, z=z)
        edges += count * exact_degree(profile, n, m)
        bound = paper_degree_bound(profile, n, m)
        min_bound = bound if min_bound is None else min(min_bound, bound)
    family = family_size(p)
    return {
        "p": p,
        "n": n,
        "m": m,
        "edges": edges,
        "mean_degree": Fraction(edges, family),
        "mean_degree_ratio": Fraction(edges, comb(p, n) * family),
        "min_layer_bound": min_bound,
        "limiting_density": limiting_edge_density(n, m),
        "layer_density": Fraction(comb(n, m), 2**n),
    }


def degree_oracle(p: int, n: int, m: int) -> dict:
    """Compare exact_degree with a scan over all C(p, n) subsets, for every cubic.

    Raises:
        InvariantBreach: if any cubic disagrees
    """
    spec = family_field(p)
    gap = GraphParams(p=p, n=n, m=m).gap
    check_budget(
        comb(p, n) * family_size(p), get_defaults().budgets.enumeration, "subset x cubic pairs in the degree oracle"
    )
    subsets = np.array(list(itertools.combinations(range(p), n)), dtype=np.int64).reshape(-1, n)

    checked = mismatches = 0
    for start, stop in chunk_ranges(p**3):
        a, b, c = cubic_block(p, start, stop)
        chi = character_array(spec, cubic_values(p, a, b, c))
        for row in chi:
            scanned = int(np.count_nonzero(np.abs(row[subsets].sum(axis=1)) >= gap))
            n_q = int((row == 1).sum())
            n_n = int((row == -1).sum())
            profile = CubicProfile(n_q=n_q, n_n=n_n, z=p - n_q - n_n)
            checked += 1
            if scanned != exact_degree(profile, n, m):
                mismatches += 1

    report = {"p": p, "n": n, "m": m, "cubics": checked, "matches": checked - mismatches, "mismatches": mismatches}
    if mismatches:
        raise InvariantBreach(f"exact_degree disagrees with subset enumeration: {report}")
    return report


def degree_table(p: int, n: int, m: int) -> list[tuple]:
    """Per-cubic rows (a, b, c, n_q, n_n, z, a_f, exact_degree, layer_bound) in lexicographic order."""
    spec = family_field(p)
    GraphParams(p=p, n=n, m=m)
    check_budget(p**3, get_defaults().budgets.enumeration, "per-cubic rows p^3")

    by_profile: dict[tuple[int, int], tuple[int, int]] = {}
    rows = []
    for start, stop in chunk_ranges(p**3):
        a, b, c = cubic_block(p, start, stop)
        chi = character_array(spec, cubic_values(p, a, b, c))
        n_q_col = (chi == 1).sum(axis=1).tolist()
        n_n_col = (chi == -1).sum(axis=1).tolist()
        for ai, bi, ci, n_q, n_n in zip(a.tolist(), b.tolist(), c.tolist(), n_q_col, n_n_col):
            profile = CubicProfile(n_q=n_q, n_n=n_n, z=p - n_q - n_n)
            degrees = by_profile.get((n_q, n_n))
            if degrees is None:
                degrees = (exact_degree(profile, n, m), paper_degree_bound(profile, n, m))
                by_profile[(n_q, n_n)] = degrees
            rows.append((ai, bi, ci, n_q, n_n, profile.z, profile.a_f, *degrees))
    return rows
