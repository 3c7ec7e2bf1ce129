"""Dense polynomials over F_q, coefficients stored low degree first."""

import itertools
import logging
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from src.errors import ValidationError, check_budget, require
from src.field import FieldElement, FieldSpec
from src.settings import get_defaults

logger = logging.getLogger(__name__)

# degree reported for the zero polynomial
ZERO_DEGREE = -1


@dataclass(frozen=True)
class Polynomial:
    """f(x) = sum a_j x^j with coeffs[j] = a_j and no trailing zeros."""

    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        coeffs = tuple(self.coeffs)
        end = len(coeffs)
        while end and coeffs[end - 1] == 0:
            end -= 1
        object.__setattr__(self, "coeffs", coeffs[:end])

    @classmethod
    def of(cls, *coeffs: int) -> "Polynomial":
        """Build from a_0, a_1, ... ."""
        return cls(tuple(coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1 if self.coeffs else ZERO_DEGREE

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def padded(self, length: int) -> tuple[int, ...]:
        return self.coeffs + (0,) * (length - len(self.coeffs))

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        terms = []
        for j in range(self.degree, -1, -1):
            a = self.coeffs[j]
            if not a:
                continue
            mono = "" if j == 0 else ("x" if j == 1 else f"x^{j}")
            coef = str(a) if (a != 1 or j == 0) else ""
            terms.append(f"{coef}{mono}")
        return " + ".join(terms)


def evaluate(spec: FieldSpec, f: Polynomial, x: int) -> FieldElement:
    """Horner evaluation of f at x."""
    spec.check(x)
    acc = 0
    for a in reversed(f.coeffs):
        acc = spec.add(spec.mul(acc, x), a)
    return acc


def derivative(spec: FieldSpec, f: Polynomial) -> Polynomial:
    """Formal derivative, j * a_j reduced in F_q."""
    return Polynomial(tuple(spec.mul(spec.from_int(j), a) for j, a in enumerate(f.coeffs) if j > 0))


def _scale(spec: FieldSpec, f: Polynomial, c: int) -> Polynomial:
    return Polynomial(tuple(spec.mul(a, c) for a in f.coeffs))


def _monic(spec: FieldSpec, f: Polynomial) -> Polynomial:
    if f.is_zero:
        return f
    return _scale(spec, f, spec.inv(f.leading))


def poly_rem(spec: FieldSpec, f: Polynomial, g: Polynomial) -> Polynomial:
    """Remainder of f modulo a nonzero g."""
    if g.is_zero:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(f.coeffs)
    dg = g.degree
    lead_inv = spec.inv(g.leading)
    for top in range(len(rem) - 1, dg - 1, -1):
        c = rem[top]
        if not c:
            continue
        factor = spec.mul(c, lead_inv)
        shift = top - dg
        for t, b in enumerate(g.coeffs):
            rem[shift + t] = spec.sub(rem[shift + t], spec.mul(factor, b))
    return Polynomial(tuple(rem[:dg]))


def poly_gcd(spec: FieldSpec, f: Polynomial, g: Polynomial) -> Polynomial:
    """Monic gcd by the Euclidean algorithm; gcd(0, 0) = 0."""
    while not g.is_zero:
        f, g = g, poly_rem(spec, f, g)
    return _monic(spec, f)


def is_squarefree(spec: FieldSpec, f: Polynomial) -> bool:
    """Whether f has distinct roots in the algebraic closure.

    A nonconstant f with f' = 0 is a p-th power and so is not squarefree.
    """
    if f.is_zero:
        raise ValidationError("is_squarefree of the zero polynomial")
    if f.degree == 0:
        return True
    df = derivative(spec, f)
    if df.is_zero:
        return False
    return poly_gcd(spec, f, df).degree == 0


def is_hyperelliptic(spec: FieldSpec, f: Polynomial, k: int) -> bool:
    """Whether y^2 = f(x) is a hyperelliptic curve of degree 4k - 1."""
    require(k >= 1, f"k={k} < 1")
    return f.degree == 4 * k - 1 and is_squarefree(spec, f)


def polynomial_at(spec: FieldSpec, max_deg: int, index: int) -> Polynomial:
    """The index-th coefficient vector in lexicographic order of (a_0, ..., a_max_deg)."""
    coeffs = [0] * (max_deg + 1)
    for t in range(max_deg, -1, -1):
        index, coeffs[t] = divmod(index, spec.q)
    return Polynomial(tuple(coeffs))


def enumerate_polys(
    spec: FieldSpec,
    max_deg: int,
    override: bool = False,
    start: int = 0,
    stop: int | None = None,
) -> Iterator[Polynomial]:
    """Yield every coefficient vector of length max_deg + 1 exactly once.

    Args:
        spec: Field
        max_deg: Largest degree allowed
        override: Skip the enumeration budget check
        start: First vector index (for range partitioning)
        stop: One past the last vector index

    Yields:
        Polynomials in lexicographic order of (a_0, ..., a_max_deg)
    """
    require(max_deg >= 0, f"max_deg={max_deg} < 0")
    total = spec.q ** (max_deg + 1)
    if not override:
        check_budget(total, get_defaults().budgets.enumeration, "q^(max_deg+1) polynomials")
    stop = total if stop is None else stop
    if start == 0 and stop == total:
        for coeffs in itertools.product(range(spec.q), repeat=max_deg + 1):
            yield Polynomial(coeffs)
        return
    for index in range(start, stop):
        yield polynomial_at(spec, max_deg, index)


def coefficient_block(spec: FieldSpec, max_deg: int, start: int, stop: int) -> np.ndarray:
    """Coefficient vectors start..stop-1 as an int64 array of shape (stop-start, max_deg+1)."""
    index = np.arange(start, stop, dtype=np.int64)
    block = np.empty((stop - start, max_deg + 1), dtype=np.int64)
    for t in range(max_deg, -1, -1):
        index, block[:, t] = np.divmod(index, spec.q)
    return block


def evaluate_block(spec: FieldSpec, coeffs: np.ndarray, points: np.ndarray) -> np.ndarray:
    """Evaluate each row of ``coeffs`` (low degree first) at every point.

    Returns:
        int64 array of shape (rows, len(points))
    """
    # products of two elements overflow int64 above VECTOR_Q_MAX; use Python ints there
    dtype = np.int64 if spec.vectorizable else object
    points = np.asarray(points, dtype=np.int64).astype(dtype)[None, :]
    coeffs = np.asarray(coeffs, dtype=np.int64).astype(dtype)
    acc = np.zeros((coeffs.shape[0], points.shape[1]), dtype=dtype)
    for t in range(coeffs.shape[1] - 1, -1, -1):
        acc = spec.add_array(spec.mul_array(acc, points), coeffs[:, t, None])
    return acc.astype(np.int64)
