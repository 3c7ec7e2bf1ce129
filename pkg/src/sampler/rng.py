"""Counter-based random streams: one SplitMix64 stream per trial index.

Trial ``i`` of a run seeded with ``master_seed`` starts from
``mix64(master_seed XOR i)`` and then advances as SplitMix64:

    state += 0x9E3779B97F4A7C15
    z = state
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB
    output z ^ (z >> 31)

all arithmetic modulo 2^64. Outcomes therefore depend only on
(master_seed, trial_index), never on scheduling.
"""

from dataclasses import dataclass

from src.errors import ValidationError

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
MIX_1 = 0xBF58476D1CE4E5B9
MIX_2 = 0x94D049BB133111EB


def mix64(z: int) -> int:
    """SplitMix64 finalizer."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * MIX_1) & MASK64
    z = ((z ^ (z >> 27)) * MIX_2) & MASK64
    return z ^ (z >> 31)


class TrialStream:
    """A SplitMix64 generator owned by one trial."""

    __slots__ = ("state",)

    def __init__(self, state: int):
        self.state = state & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + GOLDEN_GAMMA) & MASK64
        return mix64(self.state)

    def uniform_below(self, bound: int) -> int:
        """Uniform integer in [0, bound) from 128 random bits (bias < bound / 2^128)."""
        wide = (self.next_u64() << 64) | self.next_u64()
        return wide % bound

    def distinct_below(self, bound: int, count: int) -> list[int]:
        """``count`` distinct values in [0, bound) by rejection, in draw order."""
        if count > bound:
            raise ValidationError(f"cannot draw {count} distinct values below {bound}")
        seen: set[int] = set()
        out: list[int] = []
        while len(out) < count:
            v = self.uniform_below(bound)
            if v not in seen:
                seen.add(v)
                out.append(v)
        return out


@dataclass(frozen=True)
class RngSpec:
    """Master seed of a run; hands out per-trial streams."""

    master_seed: int

    def __post_init__(self):
        object.__setattr__(self, "master_seed", self.master_seed & MASK64)

    def stream(self, trial_index: int) -> TrialStream:
        return TrialStream(mix64(self.master_seed ^ trial_index))
