"""Uniform random polynomials and hyperelliptic curves from a trial stream."""

import logging

from src.errors import InvariantBreach, require
from src.field import FieldSpec
from src.poly import Polynomial, is_hyperelliptic
from src.sampler.rng import TrialStream
from src.settings import get_defaults

logger = logging.getLogger(__name__)


def sample_coefficients(spec: FieldSpec, k: int, stream: TrialStream) -> tuple[int, ...]:
    """a_0, ..., a_{4k-1}, each uniform in [0, q)."""
    return tuple(stream.uniform_below(spec.q) for _ in range(4 * k))


def sample_poly(spec: FieldSpec, k: int, stream: TrialStream) -> Polynomial:
    """A uniform element of the q^(4k) polynomials of degree <= 4k - 1."""
    require(k >= 1, f"k={k} < 1")
    return Polynomial(sample_coefficients(spec, k, stream))


def sample_curve(spec: FieldSpec, k: int, stream: TrialStream, cap: int | None = None) -> Polynomial:
    """A uniform degree-(4k-1) hyperelliptic f, by rejection from sample_poly.

    Raises:
        InvariantBreach: if ``cap`` consecutive draws are rejected
    """
    cap = cap or get_defaults().sampling.curve_attempt_cap
    for _ in range(cap):
        f = sample_poly(spec, k, stream)
        if is_hyperelliptic(spec, f, k):
            return f
    raise InvariantBreach(f"curve sampling rejected {cap} draws in a row; RNG is broken")
