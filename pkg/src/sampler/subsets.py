"""Subset sources: plain-text files, seeded random draws, the full field."""

from pathlib import Path

from src.errors import ValidationError, require
from src.field import FieldSpec
from src.sampler.rng import RngSpec

# stream index reserved for drawing the subset of a run
SUBSET_STREAM = 0


def parse_subset_text(text: str, q: int) -> tuple[int, ...]:
    """Parse one integer per line; blank lines are skipped.

    Args:
        text: File contents
        q: Field order; every value must lie in [0, q)

    Returns:
        The elements in file order
    """
    values: list[int] = []
    seen: set[int] = set()
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line:
            continue
        try:
            value = int(line)
        except ValueError:
            raise ValidationError(f"line {lineno}: {line!r} is not an integer") from None
        if not 0 <= value < q:
            raise ValidationError(f"line {lineno}: {value} not in [0, {q})")
        if value in seen:
            raise ValidationError(f"line {lineno}: duplicate element {value}")
        seen.add(value)
        values.append(value)
    return tuple(values)


def parse_subset_file(path: Path, q: int) -> tuple[int, ...]:
    """Read a subset file (see parse_subset_text)."""
    path = Path(path)
    if not path.exists():
        raise ValidationError(f"subset file not found: {path}")
    return parse_subset_text(path.read_text(encoding="utf-8"), q)


def seeded_subset(spec: FieldSpec, n: int, rng: RngSpec) -> tuple[int, ...]:
    """n distinct elements drawn by rejection from the run's stream 0."""
    require(1 <= n <= spec.q, f"subset size n={n} not in [1, q={spec.q}]")
    return tuple(rng.stream(SUBSET_STREAM).distinct_below(spec.q, n))


def full_field_subset(spec: FieldSpec) -> tuple[int, ...]:
    return tuple(range(spec.q))
