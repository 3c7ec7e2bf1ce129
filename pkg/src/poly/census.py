"""How many coefficient vectors of degree <= 4k-1 define a hyperelliptic curve."""

import logging
from dataclasses import dataclass, asdict
from fractions import Fraction

from src.errors import ValidationError, check_budget, require
from src.field import FieldSpec
from src.poly.polynomial import enumerate_polys, is_squarefree
from src.settings import get_defaults

logger = logging.getLogger(__name__)

CLOSED_FORM = "closed_form"
ENUMERATE = "enumerate"


@dataclass(frozen=True)
class CensusReport:
    """Valid/failing split of all q^(4k) coefficient vectors."""

    q: int
    k: int
    mode: str
    total_count: int
    valid_count: int
    failing_count: int
    # deg f < 4k - 1
    low_degree_count: int
    # deg f = 4k - 1 with a repeated root
    repeated_root_count: int
    failing_fraction: Fraction
    c_qk: Fraction

    def to_dict(self) -> dict:
        return asdict(self)


def c_qk(q: int) -> Fraction:
    """The exact census constant 2 - 1/q (independent of k)."""
    return 2 - Fraction(1, q)


def _report(q: int, k: int, mode: str, low: int, repeated: int) -> CensusReport:
    total = q ** (4 * k)
    failing = low + repeated
    fraction = Fraction(failing, total)
    return CensusReport(
        q=q,
        k=k,
        mode=mode,
        total_count=total,
        valid_count=total - failing,
        failing_count=failing,
        low_degree_count=low,
        repeated_root_count=repeated,
        failing_fraction=fraction,
        c_qk=fraction * q,
    )


def hyperelliptic_census(spec: FieldSpec, k: int, mode: str = CLOSED_FORM) -> CensusReport:
    """Count the polynomials of degree <= 4k-1 that give degree-(4k-1) curves.

    Args:
        spec: Field
        k: Curve parameter (degree 4k - 1)
        mode: "closed_form" or "enumerate"

    Returns:
        CensusReport; both modes agree exactly
    """
    require(k >= 1, f"k={k} < 1")
    q, d = spec.q, 4 * k - 1

    if mode == CLOSED_FORM:
        # of the q^d monic degree-d polynomials, q^(d-1) are not squarefree
        low = q**d
        repeated = (q - 1) * q ** (d - 1)
        return _report(q, k, mode, low, repeated)

    if mode != ENUMERATE:
        raise ValidationError(f"unknown census mode {mode!r}")

    check_budget(q ** (4 * k), get_defaults().budgets.enumeration, "q^(4k) census")
    low = repeated = 0
    for f in enumerate_polys(spec, d):
        if f.degree < d:
            low += 1
        elif not is_squarefree(spec, f):
            repeated += 1
    logger.debug("census q=%d k=%d: low=%d repeated=%d", q, k, low, repeated)
    return _report(q, k, mode, low, repeated)
