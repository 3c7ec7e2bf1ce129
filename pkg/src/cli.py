"""Command-line interface for qrlab."""

import argparse
import logging
import sys
from fractions import Fraction
from math import comb
from pathlib import Path
from typing import Literal, Optional

import pydantic
from pydantic import BaseModel, ConfigDict

from src.bounds import (
    markov_tail_bound,
    probability_floor_assembled,
    small_prob_threshold,
    theorem1_parameters,
    theorem2_parameters,
    theorem_constants,
)
from src.errors import QrlabError, ValidationError, require
from src.exceptional import (
    beta_estimate,
    beta_lower_bound,
    degree_oracle,
    degree_table,
    edge_census,
    family_size,
    finite_beta_floor,
    hasse_audit,
    hasse_degree_floor,
    profile_census,
)
from src.exceptional.profiles import ALL, SAMPLE
from src.field import FieldSpec, field_for_order
from src.moments import MomentTable, asymptotic_constants, brute_force_moments, moment_table
from src.report import dump_json, format_fraction, histogram_csv, rows_csv, write_text
from src.sampler import (
    ALL_POLYS,
    EXHAUSTIVE,
    HYPERELLIPTIC,
    MONTECARLO,
    RngSpec,
    full_field_subset,
    parse_subset_file,
    seeded_subset,
    tail_estimate,
    weil_audit,
)
from src.settings import get_defaults, get_settings

logger = logging.getLogger(__name__)

CUBIC_CSV_HEADER = ["a", "b", "c", "n_q", "n_n", "z", "a_f", "exact_degree", "layer_bound"]

# fields that never change a result, left out of the embedded config
NOT_EMBEDDED = {"jobs", "verbose"}


class RunConfig(BaseModel):
    """Fully resolved parameters of one run."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    command: Literal["moments", "tail", "bounds", "exceptional"]
    q: Optional[int] = None
    p: Optional[int] = None
    k: int = 1
    n: Optional[int] = None
    subset_file: Optional[Path] = None
    seeded: bool = False
    full_field: bool = False
    trials: int = 0
    seed: int
    delta: Optional[float] = None
    epsilon: Optional[float] = None
    eta: Optional[float] = None
    threshold: Optional[float] = None
    alpha: Optional[float] = None
    m: Optional[int] = None
    samples: Optional[int] = None
    exhaustive: bool = False
    conditioning: Literal["all", "hyperelliptic"] = "all"
    verify: bool = False
    limit: bool = False
    theorem_constants: bool = False
    audit: bool = False
    census: bool = False
    verify_degrees: bool = False
    audit_samples: Optional[int] = None
    histogram_out: Optional[Path] = None
    csv_out: Optional[Path] = None
    out: Optional[Path] = None
    format: Literal["json", "csv"] = "json"
    jobs: int = 1
    verbose: bool = False

    @pydantic.model_validator(mode="after")
    def _check(self) -> "RunConfig":
        sources = sum([self.subset_file is not None, self.seeded, self.full_field])
        if sources > 1:
            raise ValueError("--subset-file, --seeded and --full-field are mutually exclusive")
        if self.jobs < 1:
            raise ValueError(f"jobs={self.jobs} < 1")
        if self.k < 1:
            raise ValueError(f"k={self.k} < 1")
        return self

    def embedded(self) -> dict:
        return self.model_dump(mode="json", exclude=NOT_EMBEDDED)


def build_config(args: argparse.Namespace) -> RunConfig:
    """Turn parsed arguments into a RunConfig, filling every default."""
    values = {k: v for k, v in vars(args).items() if v is not None}
    values.setdefault("seed", get_defaults().sampling.seed)
    values.setdefault("jobs", get_settings().jobs)
    if values.get("epsilon") is not None and values.get("eta") is None:
        values["eta"] = values["epsilon"] ** 0.25
    try:
        return RunConfig(**values)
    except pydantic.ValidationError as e:
        messages = "; ".join(err["msg"].removeprefix("Value error, ") for err in e.errors())
        raise ValidationError(messages) from e


def resolve_subset(config: RunConfig, spec: FieldSpec) -> tuple[int, ...]:
    """S from the configured source; seeded when only --n is given."""
    if config.subset_file is not None:
        subset = parse_subset_file(config.subset_file, spec.q)
    elif config.full_field:
        subset = full_field_subset(spec)
    elif config.n is not None:
        return seeded_subset(spec, config.n, RngSpec(config.seed))
    else:
        raise ValidationError("no subset: give --n (seeded), --subset-file or --full-field")
    if config.n is not None and config.n != len(subset):
        raise ValidationError(f"--n {config.n} != subset size {len(subset)}")
    return subset


def resolve_size(config: RunConfig, spec: FieldSpec) -> int:
    if config.n is not None:
        return config.n
    return len(resolve_subset(config, spec))


def _require_q(config: RunConfig) -> FieldSpec:
    require(config.q is not None, f"{config.command} needs --q")
    return field_for_order(config.q)


def cmd_moments(config: RunConfig) -> tuple[dict, Optional[str]]:
    """Exact moments, optionally checked against full enumeration."""
    spec = _require_q(config)
    n = resolve_size(config, spec)
    table = moment_table(n, spec.q, config.k)
    doc = {"q": spec.q, "k": config.k, "n": n, "moments": table.values}

    if config.verify:
        subset = resolve_subset(config, spec)
        oracle = brute_force_moments(spec, config.k, subset, 4 * config.k, jobs=config.jobs)
        doc["oracle"] = oracle
        doc["oracle_match"] = {j: oracle[j] == table[j] for j in table.values}

    csv_text = rows_csv(["j", "value"], [(j, format_fraction(v)) for j, v in table.values.items()])
    return doc, csv_text


def cmd_tail(config: RunConfig) -> tuple[dict, Optional[str]]:
    """Tail probability P(|T| / sqrt(n) > t) and its histogram."""
    spec = _require_q(config)
    require(config.threshold is not None, "tail needs --threshold")
    subset = resolve_subset(config, spec)
    rng = RngSpec(config.seed)
    mode = EXHAUSTIVE if config.exhaustive else MONTECARLO
    conditioning = ALL_POLYS if config.conditioning == "all" else HYPERELLIPTIC

    estimate = tail_estimate(
        spec, config.k, subset, config.threshold, conditioning, mode, config.trials, rng, config.jobs
    )
    doc = {**estimate.to_dict(), "q": spec.q, "k": config.k, "n": len(subset), "seed": config.seed}
    if conditioning == ALL_POLYS:
        raw = float(estimate.p_hat) if mode == EXHAUSTIVE else estimate.ci_low
        doc["hyperelliptic_floor"] = probability_floor_assembled(raw, spec.q, config.k)
    if config.audit:
        trials = config.trials or get_defaults().sampling.min_trials
        doc["weil_audit"] = weil_audit(spec, config.k, trials, rng, jobs=config.jobs)

    csv_text = histogram_csv(estimate.histogram)
    if config.histogram_out is not None:
        write_text(csv_text, config.histogram_out)
    return doc, csv_text


def _bounds_table(config: RunConfig) -> Optional[MomentTable]:
    if config.q is not None:
        spec = field_for_order(config.q)
        require(config.n is not None, "bounds with --q need --n")
        return moment_table(config.n, spec.q, config.k)
    if config.limit:
        return MomentTable.limit(config.k)
    return None


def cmd_bounds(config: RunConfig) -> tuple[dict, Optional[str]]:
    """Tail lower bounds, theorem constants and theorem parameters."""
    k = config.k
    doc: dict = {"k": k, "theorem_constants": theorem_constants(k), **asymptotic_constants(k)}
    table = _bounds_table(config)
    if table is None:
        if config.delta is not None or config.epsilon is not None:
            raise ValidationError("bounds need --q and --n, or --limit")
        return doc, None

    doc["moments"] = {"n": table.n, "q": table.q, "E2k": table.e2k, "E4k": table.e4k}
    if config.delta is not None:
        doc["markov"] = markov_tail_bound(table, config.delta)
    if config.epsilon is not None:
        doc["small_prob"] = small_prob_threshold(table, config.epsilon, config.eta)
        doc["theorem1"] = theorem1_parameters(k, config.epsilon, table)
    if not config.theorem_constants:
        try:
            doc["theorem2"] = theorem2_parameters(k, table)
        except ValidationError as e:
            doc["theorem2"] = {"available": False, "reason": str(e)}
    return doc, None


def cmd_exceptional(config: RunConfig) -> tuple[dict, Optional[str]]:
    """Monic separable cubics over F_p: census, audits, degrees and beta."""
    require(config.p is not None, "exceptional needs --p")
    p = config.p
    rng = RngSpec(config.seed)
    doc: dict = {"p": p, "cubic_count": family_size(p)}

    if config.census:
        census = profile_census(p)
        doc["cubic_count"] = sum(census.values())
        doc["profiles"] = [
            {"n_q": nq, "n_n": nn, "z": z, "a_f": Fraction(2 * max(nq, nn) - p, 2), "count": count}
            for (nq, nn, z), count in census.items()
        ]
        doc["hasse"] = hasse_audit(p, ALL)
    if config.audit_samples is not None:
        doc["hasse_sample"] = hasse_audit(p, SAMPLE, trials=config.audit_samples, rng=rng, jobs=config.jobs)

    csv_text = None
    if config.n is not None or config.m is not None:
        require(config.n is not None and config.m is not None, "degree statistics need both --n and --m")
        n, m = config.n, config.m
        doc["degrees"] = edge_census(p, n, m)
        floor = hasse_degree_floor(p, n, m)
        doc["hasse_degree_floor"] = {"floor": floor, "ratio": floor / comb(p, n)}
        if config.verify_degrees:
            doc["degree_oracle"] = degree_oracle(p, n, m)
        if config.alpha is not None:
            require(config.samples is not None, "beta estimation needs --samples")
            doc["beta"] = beta_estimate(p, n, m, config.alpha, config.samples, rng, jobs=config.jobs)
            try:
                doc["beta_lower_bound"] = beta_lower_bound(n, m, config.alpha)
            except ValidationError as e:
                doc["beta_lower_bound"] = {"available": False, "reason": str(e)}
            doc["finite_beta_floor"] = finite_beta_floor(p, n, m, config.alpha)
            doc["beta_note"] = "beta_lower_bound drops an o(1) term in p"
        if config.csv_out is not None or config.format == "csv":
            csv_text = rows_csv(CUBIC_CSV_HEADER, degree_table(p, n, m))
            if config.csv_out is not None:
                write_text(csv_text, config.csv_out)
    return doc, csv_text


def configure_logging(verbose: bool) -> None:
    """Log to stderr; stdout carries the result document."""
    if verbose:
        level = logging.DEBUG
    else:
        level = getattr(logging, get_settings().log_level.upper(), logging.WARNING)
    logging.basicConfig(
        stream=sys.stderr,
        level=level,
        format="%(asctime)s %(name)s %(levelname)s %(message)s",
    )
    logging.captureWarnings(True)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, help="Master seed (default from config)")
    common.add_argument("-j", "--jobs", type=int, help="Worker processes (default QRLAB_JOBS or 1)")
    common.add_argument("--format", choices=["json", "csv"], help="Output format")
    common.add_argument("-o", "--out", type=Path, help="Write output here instead of stdout")
    common.add_argument("-v", "--verbose", action="store_true", default=None, help="Debug logging")

    subset = argparse.ArgumentParser(add_help=False)
    subset.add_argument("--q", type=int, help="Field order, an odd prime power")
    subset.add_argument("--k", type=int, help="Curve parameter (degree 4k - 1)")
    subset.add_argument("--n", type=int, help="Subset size")
    source = subset.add_mutually_exclusive_group()
    source.add_argument("--subset-file", type=Path, help="One element per line")
    source.add_argument("--seeded", action="store_true", default=None, help="Seeded random subset of size --n")
    source.add_argument("--full-field", action="store_true", default=None, help="S = F_q")

    parser = argparse.ArgumentParser(
        description="Residue discrepancy of random hyperelliptic curves over subsets",
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    subparsers = parser.add_subparsers(dest="command", help="Commands")

    # moments
    moments_parser = subparsers.add_parser("moments", parents=[common, subset], help="Exact moments E_j")
    moments_parser.add_argument("--verify", action="store_true", default=None, help="Check against enumeration")

    # tail
    tail_parser = subparsers.add_parser("tail", parents=[common, subset], help="Tail probability of |T|/sqrt(n)")
    tail_parser.add_argument("--threshold", type=float, help="t in P(|T|/sqrt(n) > t)")
    tail_parser.add_argument("--exhaustive", action="store_true", default=None, help="Enumerate all q^(4k) draws")
    tail_parser.add_argument("--trials", type=int, help="Monte Carlo draws")
    tail_parser.add_argument("--conditioning", choices=["all", "hyperelliptic"], help="Sampling measure")
    tail_parser.add_argument("--histogram-out", type=Path, help="Write the t_value,count CSV here")
    tail_parser.add_argument("--audit", action="store_true", default=None, help="Also run the Hasse-Weil audit")

    # bounds
    bounds_parser = subparsers.add_parser("bounds", parents=[common, subset], help="Tail lower bounds")
    bounds_parser.add_argument("--delta", type=float, help="Threshold for the Markov-type bound")
    bounds_parser.add_argument("--epsilon", type=float, help="Target probability for the small-probability bound")
    bounds_parser.add_argument("--eta", type=float, help="eta = epsilon c^k (default epsilon^(1/4))")
    bounds_parser.add_argument("--limit", action="store_true", default=None, help="Use the n -> infinity moments")
    bounds_parser.add_argument(
        "--theorem-constants", action="store_true", default=None, help="Only the theorem constants"
    )

    # exceptional
    exc_parser = subparsers.add_parser("exceptional", parents=[common], help="Monic separable cubics over F_p")
    exc_parser.add_argument("--p", type=int, help="Odd prime")
    exc_parser.add_argument("--n", type=int, help="Subset size")
    exc_parser.add_argument("--m", type=int, help="Slack: edges need |sum| >= n - 2m")
    exc_parser.add_argument("--alpha", type=float, help="Degree threshold share for beta")
    exc_parser.add_argument("--samples", type=int, help="Subsets sampled for beta")
    exc_parser.add_argument("--census", action="store_true", default=None, help="Profile census and Hasse audit")
    exc_parser.add_argument("--audit-samples", type=int, help="Sampled Hasse audit size")
    exc_parser.add_argument("--verify-degrees", action="store_true", default=None, help="Subset-enumeration oracle")
    exc_parser.add_argument("--csv-out", type=Path, help="Write per-cubic rows here")

    return parser


def emit(config: RunConfig, doc: dict, csv_text: Optional[str]) -> None:
    if config.format == "csv":
        if csv_text is None:
            raise ValidationError(f"{config.command} has no CSV output")
        text = csv_text
    else:
        text = dump_json({"config": config.embedded(), "result": doc})
    write_text(text, config.out, stream=sys.stdout)


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_help()
        return 0

    configure_logging(bool(args.verbose))
    try:
        config = build_config(args)
        logger.debug("resolved config: %s", config.embedded())

        if config.command == "moments":
            doc, csv_text = cmd_moments(config)
        elif config.command == "tail":
            doc, csv_text = cmd_tail(config)
        elif config.command == "bounds":
            doc, csv_text = cmd_bounds(config)
        else:
            doc, csv_text = cmd_exceptional(config)

        emit(config, doc, csv_text)
    except QrlabError as e:
        logger.error("%s: %s", e.kind, e)
        sys.stdout.write(dump_json({"error": str(e), "kind": e.kind}))
        return e.exit_code
    except ZeroDivisionError as e:
        logger.error("validation: %s", e)
        sys.stdout.write(dump_json({"error": str(e), "kind": "validation"}))
        return ValidationError.exit_code
    return 0


if __name__ == "__main__":
    sys.exit(main())
