"""Odd finite fields F_q as immutable specs with canonical integer elements.

Prime fields use modular arithmetic on least nonnegative residues. Extension
fields F_{p^m} (q <= 2^20) encode an element sum d_t x^t as the integer
sum d_t p^t and multiply through discrete-log tables; addition of nonzero
elements goes through a Zech logarithm table.
"""

import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional

import numpy as np
from sympy import factorint, isprime, primefactors

from src.errors import InvariantBreach, ValidationError, require
from src.settings import get_defaults

logger = logging.getLogger(__name__)

FieldElement = int

PRIME = "prime-modular"
LOG_TABLE = "log-table"

# Largest q for which products of two elements stay inside int64.
VECTOR_Q_MAX = 3_037_000_499


@dataclass(frozen=True)
class FieldSpec:
    """An odd prime or small odd prime-power field."""

    p: int
    m: int
    q: int
    representation: str
    generator_index: Optional[int] = None
    # monic modulus coefficients c_0..c_m (log-table mode only)
    modulus: Optional[tuple[int, ...]] = None
    exp_table: Optional[np.ndarray] = field(default=None, compare=False, repr=False)
    log_table: Optional[np.ndarray] = field(default=None, compare=False, repr=False)
    zech_table: Optional[np.ndarray] = field(default=None, compare=False, repr=False)

    @property
    def is_prime_field(self) -> bool:
        return self.representation == PRIME

    @property
    def order(self) -> int:
        """Order of the multiplicative group."""
        return self.q - 1

    def check(self, a: int) -> FieldElement:
        """Range-check an element index."""
        if not 0 <= a < self.q:
            raise ValidationError(f"element {a} not in [0, {self.q})")
        return a

    def from_int(self, value: int) -> FieldElement:
        """Image of an integer under Z -> F_q (reduction into the prime subfield)."""
        return value % self.p

    # -- scalar arithmetic -------------------------------------------------

    def add(self, a: int, b: int) -> FieldElement:
        if self.is_prime_field:
            return (a + b) % self.q
        if a == 0:
            return b
        if b == 0:
            return a
        la, lb = int(self.log_table[a]), int(self.log_table[b])
        z = int(self.zech_table[(lb - la) % self.order])
        if z < 0:
            return 0
        return int(self.exp_table[(la + z) % self.order])

    def neg(self, a: int) -> FieldElement:
        if self.is_prime_field:
            return (-a) % self.q
        if a == 0:
            return 0
        return int(self.exp_table[(int(self.log_table[a]) + self.order // 2) % self.order])

    def sub(self, a: int, b: int) -> FieldElement:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> FieldElement:
        if self.is_prime_field:
            return (a * b) % self.q
        if a == 0 or b == 0:
            return 0
        return int(self.exp_table[(int(self.log_table[a]) + int(self.log_table[b])) % self.order])

    def inv(self, a: int) -> FieldElement:
        if a == 0:
            raise ZeroDivisionError("inversion of zero in F_%d" % self.q)
        if self.is_prime_field:
            return pow(a, -1, self.q)
        return int(self.exp_table[(-int(self.log_table[a])) % self.order])

    def pow(self, a: int, e: int) -> FieldElement:
        """Square-and-multiply with a nonnegative integer exponent."""
        require(e >= 0, f"exponent {e} < 0")
        result, base = 1, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    # -- vectorised arithmetic --------------------------------------------

    @property
    def vectorizable(self) -> bool:
        return self.q <= VECTOR_Q_MAX

    def add_array(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.is_prime_field:
            return (a + b) % self.q
        a, b = np.broadcast_arrays(a, b)
        out = np.where(a == 0, b, a).astype(np.int64)
        both = (a != 0) & (b != 0)
        la = self.log_table[a[both]]
        lb = self.log_table[b[both]]
        z = self.zech_table[(lb - la) % self.order]
        summed = np.where(z < 0, 0, self.exp_table[(la + np.maximum(z, 0)) % self.order])
        out[both] = summed
        return out

    def mul_array(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.is_prime_field:
            return (a * b) % self.q
        a, b = np.broadcast_arrays(a, b)
        out = np.zeros(a.shape, dtype=np.int64)
        both = (a != 0) & (b != 0)
        out[both] = self.exp_table[(self.log_table[a[both]] + self.log_table[b[both]]) % self.order]
        return out

    @cached_property
    def elements(self) -> np.ndarray:
        return np.arange(self.q, dtype=np.int64)


def field_arith(spec: FieldSpec, op: str, a: int, b: int = 0) -> FieldElement:
    """Dispatch one of add/sub/mul/inv/pow on canonical elements.

    ``b`` is ignored by ``inv`` and is the exponent for ``pow``.
    """
    spec.check(a)
    if op == "inv":
        return spec.inv(a)
    if op == "pow":
        return spec.pow(a, b)
    spec.check(b)
    if op == "add":
        return spec.add(a, b)
    if op == "sub":
        return spec.sub(a, b)
    if op == "mul":
        return spec.mul(a, b)
    raise ValidationError(f"unknown field operation {op!r}")


def _digits(index: int, p: int, m: int) -> list[int]:
    out = []
    for _ in range(m):
        index, d = divmod(index, p)
        out.append(d)
    return out


def _index(digits: list[int], p: int) -> int:
    value = 0
    for d in reversed(digits):
        value = value * p + d
    return value


def _mulmod(a: list[int], b: list[int], modulus: list[int], p: int) -> list[int]:
    """Product of two residues (length m, low to high) modulo a monic modulus."""
    m = len(modulus) - 1
    prod = [0] * (2 * m - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    for top in range(len(prod) - 1, m - 1, -1):
        c = prod[top]
        if c:
            for t in range(m):
                prod[top - m + t] = (prod[top - m + t] - c * modulus[t]) % p
    return prod[:m]


def _powmod_x(e: int, modulus: list[int], p: int) -> list[int]:
    m = len(modulus) - 1
    result = [1] + [0] * (m - 1)
    base = [0, 1] + [0] * (m - 2)
    while e:
        if e & 1:
            result = _mulmod(result, base, modulus, p)
        base = _mulmod(base, base, modulus, p)
        e >>= 1
    return result


def _x_is_primitive(modulus: list[int], p: int, q: int) -> bool:
    """Whether x has multiplicative order q-1 in F_p[x]/(modulus).

    An element of order q-1 forces q-1 units, so this also proves the
    modulus irreducible.
    """
    one = [1] + [0] * (len(modulus) - 2)
    if _powmod_x(q - 1, modulus, p) != one:
        return False
    return all(_powmod_x((q - 1) // r, modulus, p) != one for r in primefactors(q - 1))


def _primitive_modulus(p: int, m: int) -> list[int]:
    q = p**m
    for r in range(q):
        modulus = _digits(r, p, m) + [1]
        if modulus[0] == 0:
            continue
        if _x_is_primitive(modulus, p, q):
            return modulus
    raise InvariantBreach(f"no primitive degree-{m} modulus over F_{p}")


def _build_tables(p: int, m: int, modulus: list[int]) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    q = p**m
    order = q - 1
    exp_table = np.zeros(order, dtype=np.int64)
    log_table = np.full(q, -1, dtype=np.int64)
    current = [1] + [0] * (m - 1)
    for i in range(order):
        idx = _index(current, p)
        if log_table[idx] >= 0:
            raise InvariantBreach(f"x is not a generator modulo {modulus}")
        exp_table[i] = idx
        log_table[idx] = i
        # multiply by x
        top = current[-1]
        current = [0] + current[:-1]
        if top:
            current = [(c - top * modulus[t]) % p for t, c in enumerate(current)]

    # zech[n] = log(1 + g^n), or -1 where 1 + g^n = 0
    digit0 = exp_table % p
    plus_one = exp_table - digit0 + (digit0 + 1) % p
    zech_table = np.where(plus_one == 0, -1, log_table[plus_one])
    return exp_table, log_table, zech_table


def make_field(p: int, m: int = 1) -> FieldSpec:
    """Build the field of order p^m.

    Args:
        p: Odd prime characteristic
        m: Extension degree (>= 1)

    Returns:
        FieldSpec in prime-modular mode for m == 1, log-table mode otherwise
    """
    require(isinstance(p, int) and p > 1 and isprime(p), f"p={p} is not prime")
    require(p % 2 == 1, f"p={p} is even; characteristic 2 is unsupported")
    require(m >= 1, f"extension degree m={m} < 1")

    if m == 1:
        return FieldSpec(p=p, m=1, q=p, representation=PRIME)

    q = p**m
    limit = get_defaults().field.log_table_max
    require(q <= limit, f"q=p^m={q} > {limit} for log-table fields")

    modulus = _primitive_modulus(p, m)
    exp_table, log_table, zech_table = _build_tables(p, m, modulus)
    logger.debug("built F_%d with modulus %s", q, modulus)
    return FieldSpec(
        p=p,
        m=m,
        q=q,
        representation=LOG_TABLE,
        generator_index=p,  # the class of x
        modulus=tuple(modulus),
        exp_table=exp_table,
        log_table=log_table,
        zech_table=zech_table,
    )


def field_for_order(q: int) -> FieldSpec:
    """Build the field with q elements, q an odd prime power."""
    require(isinstance(q, int) and q >= 3, f"q={q} is not an odd prime power >= 3")
    require(q % 2 == 1, f"q={q} is even; characteristic 2 is unsupported")
    factors = factorint(q)
    if len(factors) != 1:
        raise ValidationError(f"q={q} is not a prime power")
    p, m = next(iter(factors.items()))
    return make_field(int(p), int(m))
