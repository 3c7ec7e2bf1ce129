"""Character profiles of f over a subset S and point counts of y^2 = f(x)."""

import logging
from dataclasses import dataclass, asdict
from typing import Iterable, Sequence

import numpy as np

from src.errors import ValidationError, check_budget
from src.field import FieldSpec, character_array, quadratic_character
from src.poly import Polynomial, evaluate, evaluate_block
from src.settings import get_defaults

logger = logging.getLogger(__name__)

CHARACTER = "character"
DIRECT = "direct"


@dataclass(frozen=True)
class CharProfile:
    """Residue census of f(s_1), ..., f(s_n)."""

    n_qr: int
    n_nr: int
    n_zero: int
    t_sum: int

    @property
    def n(self) -> int:
        return self.n_qr + self.n_nr + self.n_zero

    def to_dict(self) -> dict:
        return asdict(self)


def validate_subset(spec: FieldSpec, subset: Iterable[int]) -> tuple[int, ...]:
    """Check that S is a set of distinct field elements."""
    values = tuple(int(s) for s in subset)
    for s in values:
        spec.check(s)
    if len(set(values)) != len(values):
        raise ValidationError("subset S contains duplicate elements")
    return values


def char_profile(spec: FieldSpec, f: Polynomial, subset: Sequence[int]) -> CharProfile:
    """Count residues, non-residues and zeros among the values f(s), s in S."""
    subset = validate_subset(spec, subset)
    n_qr = n_nr = n_zero = 0
    for s in subset:
        chi = quadratic_character(spec, evaluate(spec, f, s))
        if chi > 0:
            n_qr += 1
        elif chi < 0:
            n_nr += 1
        else:
            n_zero += 1
    return CharProfile(n_qr=n_qr, n_nr=n_nr, n_zero=n_zero, t_sum=n_qr - n_nr)


def _square_roots(spec: FieldSpec) -> dict[int, int]:
    counts: dict[int, int] = {}
    for y in range(spec.q):
        y2 = spec.mul(y, y)
        counts[y2] = counts.get(y2, 0) + 1
    return counts


def point_count(spec: FieldSpec, f: Polynomial, subset: Sequence[int], method: str = CHARACTER) -> int:
    """#E(F_q, S) = #{(x, y) in S x F_q : y^2 = f(x)}, no point at infinity.

    Args:
        spec: Field
        f: Right-hand side of the curve
        subset: The x-coordinates allowed
        method: "character" (n + T) or "direct" (enumerate every y)

    Returns:
        The number of affine points over S
    """
    if method == CHARACTER:
        profile = char_profile(spec, f, subset)
        return profile.n + profile.t_sum
    if method != DIRECT:
        raise ValidationError(f"unknown point-count method {method!r}")

    check_budget(spec.q, get_defaults().budgets.direct_count_q, "direct point count q")
    subset = validate_subset(spec, subset)
    roots = _square_roots(spec)
    return sum(roots.get(evaluate(spec, f, x), 0) for x in subset)


def discrepancy(spec: FieldSpec, f: Polynomial, subset: Sequence[int]) -> int:
    """|#E(F_q, S) - #S| = |#QR - #NR|."""
    return abs(char_profile(spec, f, subset).t_sum)


def character_sum(spec: FieldSpec, f: Polynomial) -> int:
    """Sum of chi(f(x)) over the whole field."""
    if spec.vectorizable:
        coeffs = np.array([f.padded(max(f.degree, 0) + 1)], dtype=np.int64)
        return int(character_array(spec, evaluate_block(spec, coeffs, spec.elements)).sum())
    return sum(quadratic_character(spec, evaluate(spec, f, x)) for x in range(spec.q))


def full_point_count(spec: FieldSpec, f: Polynomial) -> int:
    """#E(F_q) for odd-degree f, counting the single point at infinity."""
    if f.degree % 2 == 0:
        raise ValidationError("full_point_count needs odd-degree f (one point at infinity)")
    return spec.q + character_sum(spec, f) + 1


def t_sums(spec: FieldSpec, coeffs: np.ndarray, points: np.ndarray, max_cells: int = 1 << 21) -> np.ndarray:
    """T = sum_i chi(f(s_i)) for every row of a coefficient block.

    Rows are processed in slices so that no intermediate exceeds ``max_cells``.
    """
    rows = coeffs.shape[0]
    out = np.zeros(rows, dtype=np.int64)
    if rows == 0 or len(points) == 0:
        return out
    step = max(1, max_cells // len(points))
    for lo in range(0, rows, step):
        values = evaluate_block(spec, coeffs[lo : lo + step], points)
        out[lo : lo + step] = character_array(spec, values).sum(axis=1)
    return out
