# Polynomials over F_q and the hyperelliptic census
from src.poly.polynomial import (
    Polynomial,
    coefficient_block,
    derivative,
    enumerate_polys,
    evaluate,
    evaluate_block,
    is_hyperelliptic,
    is_squarefree,
    poly_gcd,
)
from src.poly.census import CensusReport, c_qk, hyperelliptic_census

__all__ = [
    "Polynomial",
    "CensusReport",
    "c_qk",
    "coefficient_block",
    "derivative",
    "enumerate_polys",
    "evaluate",
    "evaluate_block",
    "hyperelliptic_census",
    "is_hyperelliptic",
    "is_squarefree",
    "poly_gcd",
]
