"""The family of monic separable cubics x^3 + a x^2 + b x + c over F_p.

Cubics are indexed lexicographically by (a, b, c), a most significant, so
index = a p^2 + b p + c.
"""

import logging
from typing import Iterator, Optional

import numpy as np

from src.errors import InvariantBreach, ValidationError, check_budget
from src.field import FieldSpec, make_field
from src.poly import Polynomial, is_squarefree
from src.sampler.pool import chunk_ranges
from src.sampler.rng import TrialStream
from src.settings import get_defaults

logger = logging.getLogger(__name__)


def family_field(p: int) -> FieldSpec:
    """F_p for an odd prime p, checked against the cubic enumeration budget."""
    spec = make_field(p)
    check_budget(p**3, get_defaults().budgets.cubic_p_cubed, f"p^3 monic cubics over F_{p}")
    return spec


def family_size(p: int) -> int:
    """Number of monic separable cubics over F_p."""
    return p**3 - p**2


def discriminant(p: int, a, b, c):
    """Discriminant of x^3 + a x^2 + b x + c reduced mod p; ints or int64 arrays."""
    return (a * a * b * b - 4 * b**3 - 4 * a**3 * c - 27 * c * c + 18 * a * b * c) % p


def cubic_coefficients(f: Polynomial) -> tuple[int, int, int]:
    """(a, b, c) of a monic cubic x^3 + a x^2 + b x + c."""
    c, b, a, _ = f.padded(4)
    return a, b, c


def check_cubic(spec: FieldSpec, f: Polynomial) -> tuple[int, int, int]:
    """Validate f as a member of the family and return its (a, b, c)."""
    if f.degree != 3 or f.leading != 1:
        raise ValidationError(f"{f} is not a monic cubic")
    for coeff in f.coeffs:
        spec.check(coeff)
    if not is_squarefree(spec, f):
        raise ValidationError(f"{f} has a repeated root over F_{spec.p}")
    return cubic_coefficients(f)


def cubic_block(p: int, start: int, stop: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(a, b, c) arrays of the separable cubics among indices [start, stop)."""
    index = np.arange(start, stop, dtype=np.int64)
    a, rest = np.divmod(index, p * p)
    b, c = np.divmod(rest, p)
    keep = discriminant(p, a, b, c) != 0
    return a[keep], b[keep], c[keep]


def cubic_values(p: int, a, b, c) -> np.ndarray:
    """f(x) for every x in F_p, one row per cubic."""
    x = np.arange(p, dtype=np.int64)
    x2 = x * x % p
    x3 = x2 * x % p
    a = np.asarray(a, dtype=np.int64).reshape(-1, 1)
    b = np.asarray(b, dtype=np.int64).reshape(-1, 1)
    c = np.asarray(c, dtype=np.int64).reshape(-1, 1)
    return (x3 + a * x2 % p + b * x % p + c) % p


def enumerate_cubics(p: int) -> Iterator[Polynomial]:
    """Yield the p^3 - p^2 monic separable cubics in lexicographic order."""
    family_field(p)

    def generate() -> Iterator[Polynomial]:
        for start, stop in chunk_ranges(p**3):
            a, b, c = cubic_block(p, start, stop)
            for ai, bi, ci in zip(a.tolist(), b.tolist(), c.tolist()):
                yield Polynomial.of(ci, bi, ai, 1)

    return generate()


def sample_cubic(p: int, stream: TrialStream, cap: Optional[int] = None) -> Polynomial:
    """Uniform monic separable cubic by rejection on the discriminant."""
    cap = cap or get_defaults().sampling.curve_attempt_cap
    for _ in range(cap):
        a, b, c = (stream.uniform_below(p) for _ in range(3))
        if discriminant(p, a, b, c) != 0:
            return Polynomial.of(c, b, a, 1)
    raise InvariantBreach(f"no separable cubic over F_{p} in {cap} draws")
