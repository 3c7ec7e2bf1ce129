"""JSON and CSV emission.

Exact rationals become "num/den" strings, reals become decimals with the
configured number of significant digits, so repeated runs are byte-identical.
"""

import csv
import io
import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Iterable, Optional, Sequence

import mpmath
import numpy as np

from src.settings import get_defaults


def format_fraction(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


def format_real(value, digits: Optional[int] = None) -> float:
    """Round to ``digits`` significant digits (default precision.sig_digits)."""
    digits = digits or get_defaults().precision.sig_digits
    if isinstance(value, mpmath.mpf):
        return float(mpmath.nstr(value, digits))
    return float(f"{float(value):.{digits}g}")


def to_jsonable(value: Any) -> Any:
    """Recursively convert a report into JSON-ready values."""
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, Fraction):
        return format_fraction(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating, mpmath.mpf)):
        return format_real(value)
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if hasattr(value, "to_dict"):
        return to_jsonable(value.to_dict())
    if isinstance(value, Path):
        return str(value)
    raise TypeError(f"cannot serialise {type(value).__name__}")


def dump_json(document: dict) -> str:
    return json.dumps(to_jsonable(document), indent=2) + "\n"


def histogram_csv(histogram: dict[int, int]) -> str:
    """"t_value,count" rows sorted ascending by T."""
    return rows_csv(["t_value", "count"], sorted(histogram.items()))


def rows_csv(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_csv_cell(v) for v in row])
    return buffer.getvalue()


def _csv_cell(value: Any) -> Any:
    if isinstance(value, Fraction):
        return format_real(value) if value.denominator != 1 else value.numerator
    if isinstance(value, (float, mpmath.mpf)):
        return format_real(value)
    return value


def write_text(text: str, path: Optional[Path] = None, stream=None) -> None:
    """Write to ``path`` when given, else to ``stream``."""
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
    else:
        stream.write(text)
