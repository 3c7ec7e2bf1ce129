# Finite field arithmetic and the quadratic character
from src.field.spec import FieldElement, FieldSpec, field_arith, field_for_order, make_field
from src.field.character import CharValue, character_array, quadratic_character

__all__ = [
    "FieldElement",
    "FieldSpec",
    "CharValue",
    "make_field",
    "field_for_order",
    "field_arith",
    "quadratic_character",
    "character_array",
]
