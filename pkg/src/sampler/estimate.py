"""Tail probabilities and T-histograms, exhaustively or by Monte Carlo."""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import partial
from typing import Optional, Sequence, Union

import numpy as np

from src.errors import InvariantBreach, ValidationError, check_budget, require
from src.field import FieldSpec
from src.poly import Polynomial, coefficient_block, is_squarefree
from src.sampler.curves import sample_curve, sample_poly
from src.sampler.pool import run_partitioned
from src.sampler.profile import t_sums, validate_subset
from src.sampler.rng import RngSpec
from src.settings import get_defaults

logger = logging.getLogger(__name__)

EXHAUSTIVE = "exhaustive"
MONTECARLO = "montecarlo"
ALL_POLYS = "all_polys"
HYPERELLIPTIC = "hyperelliptic"

CONDITIONINGS = (ALL_POLYS, HYPERELLIPTIC)
MODES = (EXHAUSTIVE, MONTECARLO)

# |T| within this of t * sqrt(n) counts as not exceeding it
TIE_TOLERANCE = 1e-9


@dataclass
class TailEstimate:
    """Estimate of P(|T| / sqrt(n) > threshold) under one sampling measure."""

    mode: str
    threshold: float
    hits: int
    trials: int
    p_hat: Union[Fraction, float]
    conditioning: str
    ci_low: Optional[float] = None
    ci_high: Optional[float] = None
    histogram: dict[int, int] = field(default_factory=dict, repr=False)

    def to_dict(self) -> dict:
        return {
            "mode": self.mode,
            "threshold": self.threshold,
            "hits": self.hits,
            "trials": self.trials,
            "p_hat": self.p_hat,
            "ci_low": self.ci_low,
            "ci_high": self.ci_high,
            "conditioning": self.conditioning,
        }


def wilson_interval(hits: int, trials: int, z: Optional[float] = None) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion.

    Args:
        hits: Successes
        trials: Bernoulli trials
        z: Normal quantile (defaults to the configured 99% value 2.5758)

    Returns:
        (low, high), clipped to [0, 1]
    """
    if trials <= 0:
        raise ValidationError(f"trials must be positive, got {trials}")
    z = get_defaults().sampling.wilson_z if z is None else z
    p_hat = hits / trials
    z2 = z * z
    denom = 1.0 + z2 / trials
    center = (p_hat + z2 / (2.0 * trials)) / denom
    margin = z * math.sqrt(p_hat * (1.0 - p_hat) / trials + z2 / (4.0 * trials * trials)) / denom
    return max(0.0, center - margin), min(1.0, center + margin)


def _hyperelliptic_rows(spec: FieldSpec, k: int, coeffs: np.ndarray) -> np.ndarray:
    mask = coeffs[:, -1] != 0
    for row in np.flatnonzero(mask):
        if not is_squarefree(spec, Polynomial(tuple(int(a) for a in coeffs[row]))):
            mask[row] = False
    return mask


def _exhaustive_chunk(
    spec: FieldSpec, k: int, points: np.ndarray, conditioning: str, start: int, stop: int
) -> np.ndarray:
    coeffs = coefficient_block(spec, 4 * k - 1, start, stop)
    if conditioning == HYPERELLIPTIC:
        coeffs = coeffs[_hyperelliptic_rows(spec, k, coeffs)]
    n = len(points)
    return np.bincount(t_sums(spec, coeffs, points) + n, minlength=2 * n + 1)


def _montecarlo_chunk(
    spec: FieldSpec, k: int, points: np.ndarray, conditioning: str, rng: RngSpec, start: int, stop: int
) -> np.ndarray:
    draw = sample_curve if conditioning == HYPERELLIPTIC else sample_poly
    # stream 0 belongs to the seeded subset, so trial i reads stream i + 1
    rows = [draw(spec, k, rng.stream(i + 1)).padded(4 * k) for i in range(start, stop)]
    coeffs = np.array(rows, dtype=np.int64).reshape(len(rows), 4 * k)
    n = len(points)
    return np.bincount(t_sums(spec, coeffs, points) + n, minlength=2 * n + 1)


def _check_request(spec: FieldSpec, k: int, conditioning: str, mode: str, trials: int) -> None:
    require(k >= 1, f"k={k} < 1")
    if conditioning not in CONDITIONINGS:
        raise ValidationError(f"invalid conditioning {conditioning!r}; expected one of {CONDITIONINGS}")
    if mode not in MODES:
        raise ValidationError(f"invalid mode {mode!r}; expected one of {MODES}")
    if mode == EXHAUSTIVE:
        check_budget(spec.q ** (4 * k), get_defaults().budgets.enumeration, "q^(4k) exhaustive polynomials")
    else:
        min_trials = get_defaults().sampling.min_trials
        require(trials >= min_trials, f"trials={trials} < {min_trials}")


def distribution_histogram(
    spec: FieldSpec,
    k: int,
    subset: Sequence[int],
    conditioning: str = ALL_POLYS,
    mode: str = EXHAUSTIVE,
    trials: int = 0,
    rng: Optional[RngSpec] = None,
    jobs: int = 1,
) -> dict[int, int]:
    """Histogram of T = sum chi(f(s)) over the chosen measure.

    Returns:
        Map T -> count for every T in [-n, n] with a nonzero count, ascending
    """
    _check_request(spec, k, conditioning, mode, trials)
    points = np.array(validate_subset(spec, subset), dtype=np.int64)
    n = len(points)

    if mode == EXHAUSTIVE:
        worker = partial(_exhaustive_chunk, spec, k, points, conditioning)
        total = spec.q ** (4 * k)
    else:
        if rng is None:
            raise ValidationError("montecarlo mode needs an RngSpec")
        worker = partial(_montecarlo_chunk, spec, k, points, conditioning, rng)
        total = trials

    counts = np.zeros(2 * n + 1, dtype=np.int64)
    for part in run_partitioned(worker, total, jobs=jobs):
        counts += part
    logger.debug("histogram over %d %s draws (%s)", int(counts.sum()), mode, conditioning)
    return {t - n: int(c) for t, c in enumerate(counts) if c}


def count_exceeding(histogram: dict[int, int], n: int, threshold: float) -> int:
    """Number of draws with |T| / sqrt(n) > threshold."""
    if threshold < 0:
        return sum(histogram.values())
    cut = threshold * math.sqrt(n) + TIE_TOLERANCE
    return sum(c for t, c in histogram.items() if abs(t) > cut)


def tail_estimate(
    spec: FieldSpec,
    k: int,
    subset: Sequence[int],
    threshold: float,
    conditioning: str = ALL_POLYS,
    mode: str = EXHAUSTIVE,
    trials: int = 0,
    rng: Optional[RngSpec] = None,
    jobs: int = 1,
) -> TailEstimate:
    """Estimate P(|#E(F_q, S) - #S| > t sqrt(#S)) = P(|T| / sqrt(n) > t).

    Exhaustive mode returns an exact Fraction; Monte Carlo adds a Wilson 99% interval.
    """
    histogram = distribution_histogram(spec, k, subset, conditioning, mode, trials, rng, jobs)
    n = len(subset)
    total = sum(histogram.values())
    hits = count_exceeding(histogram, n, threshold)

    if mode == EXHAUSTIVE:
        return TailEstimate(
            mode=mode,
            threshold=threshold,
            hits=hits,
            trials=total,
            p_hat=Fraction(hits, total),
            conditioning=conditioning,
            histogram=histogram,
        )

    low, high = wilson_interval(hits, total)
    return TailEstimate(
        mode=mode,
        threshold=threshold,
        hits=hits,
        trials=total,
        p_hat=hits / total,
        conditioning=conditioning,
        ci_low=low,
        ci_high=high,
        histogram=histogram,
    )


def _weil_chunk(spec: FieldSpec, k: int, rng: RngSpec, start: int, stop: int) -> np.ndarray:
    rows = [sample_curve(spec, k, rng.stream(i + 1)).padded(4 * k) for i in range(start, stop)]
    coeffs = np.array(rows, dtype=np.int64).reshape(len(rows), 4 * k)
    return t_sums(spec, coeffs, spec.elements)


def weil_audit(spec: FieldSpec, k: int, trials: int, rng: RngSpec, jobs: int = 1) -> dict:
    """Check |sum_x chi(f(x))| <= (4k - 2) sqrt(q) on sampled hyperelliptic curves.

    The curves have genus 2k - 1; for k = 1 this is Hasse's bound 2 sqrt(q).

    Raises:
        InvariantBreach: if any sampled curve violates the bound
    """
    require(k >= 1, f"k={k} < 1")
    require(trials >= 1, f"trials={trials} < 1")
    width = 4 * k - 2
    sums = np.concatenate(run_partitioned(partial(_weil_chunk, spec, k, rng), trials, jobs=jobs))
    violations = int(np.count_nonzero(sums * sums > width * width * spec.q))
    max_abs = int(np.abs(sums).max())
    report = {
        "q": spec.q,
        "k": k,
        "genus": 2 * k - 1,
        "trials": trials,
        "bound": width * math.sqrt(spec.q),
        "max_abs_sum": max_abs,
        "max_normalized": max_abs / (width * math.sqrt(spec.q)),
        "violations": violations,
    }
    if violations:
        raise InvariantBreach(f"Hasse-Weil bound violated by {violations} sampled curves: {report}")
    return report
