"""The quadratic character chi: F_q -> {-1, 0, 1}."""

import numpy as np

from src.field.spec import FieldSpec
from src.settings import get_defaults

CharValue = int

_BITSETS: dict[int, np.ndarray] = {}
_LOG_CHARS: dict[int, np.ndarray] = {}


def euler_character(spec: FieldSpec, a: int) -> CharValue:
    """Euler's criterion a^((q-1)/2) read as -1, 0 or 1."""
    spec.check(a)
    if a == 0:
        return 0
    r = spec.pow(a, spec.order // 2)
    return 1 if r == 1 else -1


def residue_bitset(spec: FieldSpec) -> np.ndarray:
    """Packed bitset of the nonzero squares of a prime field, bit a set iff chi(a) = 1."""
    bits = _BITSETS.get(spec.q)
    if bits is None:
        flags = np.zeros(spec.q, dtype=bool)
        roots = np.arange(1, (spec.q - 1) // 2 + 1, dtype=np.int64)
        flags[(roots * roots) % spec.q] = True
        bits = np.packbits(flags)
        _BITSETS[spec.q] = bits
    return bits


def _log_characters(spec: FieldSpec) -> np.ndarray:
    table = _LOG_CHARS.get(spec.q)
    if table is None:
        table = np.zeros(spec.q, dtype=np.int8)
        nonzero = spec.log_table >= 0
        table[nonzero] = np.where(spec.log_table[nonzero] % 2 == 0, 1, -1)
        _LOG_CHARS[spec.q] = table
    return table


def _uses_bitset(spec: FieldSpec) -> bool:
    return spec.is_prime_field and spec.q < get_defaults().field.bitset_threshold


def quadratic_character(spec: FieldSpec, a: int) -> CharValue:
    """Legendre symbol (a/q) for a canonical element a.

    Args:
        spec: Field
        a: Element index in [0, q)

    Returns:
        0 at zero, 1 on nonzero squares, -1 otherwise
    """
    spec.check(a)
    if a == 0:
        return 0
    if not spec.is_prime_field:
        return 1 if int(spec.log_table[a]) % 2 == 0 else -1
    if _uses_bitset(spec):
        bits = residue_bitset(spec)
        return 1 if (int(bits[a >> 3]) >> (7 - (a & 7))) & 1 else -1
    return 1 if pow(a, (spec.q - 1) // 2, spec.q) == 1 else -1


def _pow_mod_array(base: np.ndarray, e: int, q: int) -> np.ndarray:
    result = np.ones_like(base)
    base = base % q
    while e:
        if e & 1:
            result = (result * base) % q
        base = (base * base) % q
        e >>= 1
    return result


def character_array(spec: FieldSpec, values: np.ndarray) -> np.ndarray:
    """Vectorised quadratic character of an int64 array of elements."""
    values = np.asarray(values, dtype=np.int64)
    if not spec.is_prime_field:
        return _log_characters(spec)[values].astype(np.int64)
    if _uses_bitset(spec):
        bits = residue_bitset(spec)
        is_square = (bits[values >> 3] >> (7 - (values & 7))) & 1
        return np.where(values == 0, 0, np.where(is_square == 1, 1, -1)).astype(np.int64)
    if spec.vectorizable:
        r = _pow_mod_array(values, (spec.q - 1) // 2, spec.q)
        return np.where(values == 0, 0, np.where(r == 1, 1, -1)).astype(np.int64)
    return np.array([quadratic_character(spec, int(v)) for v in values.ravel()], dtype=np.int64).reshape(
        values.shape
    )
