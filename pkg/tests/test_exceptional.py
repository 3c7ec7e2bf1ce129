"""Tests for the cubic family, residue profiles, bipartite degrees and beta."""

import itertools
import math
import warnings
from collections import Counter
from math import comb
from fractions import Fraction

import pytest

from src.errors import RegimeWarning, ValidationError
from src.exceptional import (
    CubicProfile,
    GraphParams,
    all_residue_event_probability,
    beta_estimate,
    beta_lower_bound,
    cubic_profile,
    degree_oracle,
    degree_table,
    discriminant,
    edge_census,
    enumerate_cubics,
    exact_degree,
    family_size,
    finite_beta_floor,
    hasse_audit,
    hasse_degree_floor,
    limiting_edge_density,
    paper_degree_bound,
    profile_census,
    sample_cubic,
    subset_degree,
)
from src.exceptional.cubics import cubic_coefficients
from src.field import make_field
from src.poly import Polynomial, evaluate
from src.sampler import RngSpec

X3_MINUS_X = Polynomial.of(0, 4, 0, 1)


@pytest.fixture(autouse=True)
def quiet_regime():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RegimeWarning)
        yield


class TestFamily:
    @pytest.mark.parametrize("p,size", [(3, 18), (5, 100), (13, 2028)])
    def test_counts(self, p, size):
        assert family_size(p) == size
        assert sum(1 for _ in enumerate_cubics(p)) == size

    def test_order(self):
        cubics = list(enumerate_cubics(5))
        assert cubics[0] == Polynomial.of(1, 0, 0, 1)
        keys = [tuple(reversed(f.padded(4)[:3])) for f in cubics]
        assert keys == sorted(keys)

    def test_discriminant(self):
        assert discriminant(5, 0, 4, 0) == 4
        assert discriminant(7, 0, 0, 0) == 0

    def test_rejects_composite(self):
        with pytest.raises(ValidationError):
            enumerate_cubics(4)

    def test_sample_cubic(self):
        rng = RngSpec(17)
        drawn = [sample_cubic(13, rng.stream(i)) for i in range(40)]
        assert drawn == [sample_cubic(13, rng.stream(i)) for i in range(40)]
        for f in drawn:
            a, b, c = cubic_coefficients(f)
            assert f.degree == 3 and f.leading == 1
            assert discriminant(13, a, b, c) != 0


class TestProfiles:
    def test_cubic_profile(self):
        profile = cubic_profile(5, X3_MINUS_X)
        assert (profile.n_q, profile.n_n, profile.z) == (2, 0, 3)
        assert profile.a_f == Fraction(-1, 2)
        assert profile.character_sum == 2

    @pytest.mark.parametrize(
        "f",
        [Polynomial.of(0, 0, 0, 2), Polynomial.of(0, 0, 0, 1), Polynomial.of(1, 0, 1)],
    )
    def test_rejects_outside_family(self, f):
        with pytest.raises(ValidationError):
            cubic_profile(5, f)

    @pytest.mark.parametrize("p", [3, 5, 7])
    def test_census_matches_enumeration(self, p):
        direct = Counter()
        for f in enumerate_cubics(p):
            profile = cubic_profile(p, f)
            direct[(profile.n_q, profile.n_n, profile.z)] += 1
        assert profile_census(p) == dict(direct)

    def test_census_is_sorted(self):
        census = profile_census(13)
        assert list(census) == sorted(census)
        assert sum(census.values()) == family_size(13)

    @pytest.mark.parametrize("p", [5, 13, 101])
    def test_hasse_over_all_cubics(self, p):
        report = hasse_audit(p)
        assert report["violations"] == 0
        assert report["audited"] == family_size(p)
        assert report["max_abs_sum"] <= 2 * math.sqrt(p)
        assert report["max_a_f"] <= math.sqrt(p)

    def test_hasse_sampled(self):
        report = hasse_audit(1009, "sample", 10_000, RngSpec(3))
        assert report["audited"] == 10_000
        assert report["violations"] == 0
        assert report["max_normalized"] <= 1

    def test_audit_scope(self):
        with pytest.raises(ValidationError):
            hasse_audit(5, "some")
        with pytest.raises(ValidationError):
            hasse_audit(5, "sample")


class TestDegrees:
    def test_params(self):
        with pytest.raises(ValidationError):
            GraphParams(p=5, n=4, m=3)
        with pytest.raises(ValidationError):
            GraphParams(p=5, n=6, m=0)
        assert GraphParams(p=101, n=10, m=2).in_regime

    def test_regime_warning(self):
        with pytest.warns(RegimeWarning):
            GraphParams(p=101, n=4, m=1)

    def test_exact_and_layer_examples(self):
        profile = cubic_profile(5, X3_MINUS_X)
        assert exact_degree(profile, 4, 1) == 3
        assert paper_degree_bound(profile, 4, 1) == 0

    @pytest.mark.parametrize("p,n,m", [(13, 4, 1), (11, 3, 0)])
    def test_oracle(self, p, n, m):
        report = degree_oracle(p, n, m)
        assert report["cubics"] == family_size(p)
        assert report["mismatches"] == 0

    def test_layer_bound_below_exact(self):
        for (n_q, n_n, z) in profile_census(13):
            profile = CubicProfile(n_q=n_q, n_n=n_n, z=z)
            for n in range(1, 8):
                for m in range(n // 2 + 1):
                    assert paper_degree_bound(profile, n, m) <= exact_degree(profile, n, m)

    def test_edges_counted_from_both_sides(self):
        p, n, m = 13, 4, 1
        from_subsets = sum(subset_degree(p, s, m) for s in itertools.combinations(range(p), n))
        assert from_subsets == edge_census(p, n, m)["edges"]

    def test_sliced_gathers_agree(self):
        subset = (0, 2, 5, 7, 11)
        whole = subset_degree(13, subset, 1)
        assert subset_degree(13, subset, 1, max_cells=1) == whole
        assert subset_degree(13, subset, 1, max_cells=5 * 13 * 4) == whole
        assert subset_degree(13, (), 0, max_cells=1) == family_size(13)

    @pytest.mark.slow
    def test_mean_degree_trend(self):
        n, m = 4, 1
        limit = limiting_edge_density(n, m)
        errors = []
        for p in (101, 211, 401):
            census = edge_census(p, n, m)
            assert census["mean_degree_ratio"] >= census["layer_density"]
            errors.append(abs(census["mean_degree_ratio"] - limit))
        assert errors[0] > errors[1] > errors[2]
        assert census["layer_density"] == Fraction(comb(n, m), 2**n)

    @pytest.mark.slow
    def test_all_residue_mean_over_subsets(self):
        p, n = 101, 6
        rng = RngSpec(20240601)
        subsets = [rng.stream(i + 1).distinct_below(p, n) for i in range(100)]
        mean = sum(all_residue_event_probability(p, s) for s in subsets) / len(subsets)
        assert float(mean) == pytest.approx(2.0 ** (-n + 1), rel=0.3)

    @pytest.mark.parametrize("p", [5, 7])
    def test_single_point_degree(self, p):
        # separable cubics vanishing at a point: (p - 1)^2
        assert subset_degree(p, (2,), 0) == family_size(p) - (p - 1) ** 2
        spec = make_field(p)
        direct = sum(1 for f in enumerate_cubics(p) if evaluate(spec, f, 2) != 0)
        assert subset_degree(p, (2,), 0) == direct

    def test_all_residue_event(self):
        assert all_residue_event_probability(5, ()) == 1
        assert all_residue_event_probability(5, (0,)) == Fraction(84, 100)

    def test_subset_duplicates(self):
        with pytest.raises(ValidationError):
            subset_degree(7, (1, 1), 0)

    def test_limiting_density(self):
        assert limiting_edge_density(4, 1) == Fraction(10, 16)
        assert limiting_edge_density(6, 0) == Fraction(2, 64)

    def test_edge_census_near_limit(self):
        census = edge_census(101, 4, 1)
        assert census["limiting_density"] == Fraction(10, 16)
        assert census["layer_density"] == Fraction(4, 16)
        assert abs(census["mean_degree_ratio"] - Fraction(10, 16)) < 0.05
        assert census["mean_degree"] == census["edges"] / Fraction(family_size(101))

    def test_hasse_floor_below_layer_bounds(self):
        floor = hasse_degree_floor(101, 4, 1)
        assert floor > 0
        assert edge_census(101, 4, 1)["min_layer_bound"] >= floor

    def test_degree_table(self):
        rows = degree_table(5, 4, 1)
        assert len(rows) == family_size(5)
        assert [r[:3] for r in rows] == sorted(r[:3] for r in rows)
        for a, b, c, n_q, n_n, z, a_f, exact, layer in rows:
            assert n_q + n_n + z == 5
            assert layer <= exact
        x3_minus_x = next(r for r in rows if r[:3] == (0, 4, 0))
        assert x3_minus_x[3:] == (2, 0, 3, Fraction(-1, 2), 3, 0)


class TestBeta:
    def test_alpha_zero_and_above_one(self):
        rng = RngSpec(5)
        assert beta_estimate(13, 4, 1, 0.0, 100, rng).beta_hat == 1.0
        assert beta_estimate(13, 4, 1, 1.5, 100, rng).hits == 0

    def test_deterministic(self):
        rng = RngSpec(8)
        first = beta_estimate(13, 4, 1, 0.3, 100, rng)
        assert first == beta_estimate(13, 4, 1, 0.3, 100, rng, jobs=2)
        assert first.ci_low <= first.beta_hat <= first.ci_high
        assert first.threshold_degree == Fraction(3, 10) * family_size(13)

    def test_needs_samples(self):
        with pytest.raises(ValidationError):
            beta_estimate(13, 4, 1, 0.3, 10, RngSpec(8))

    def test_lower_bound(self):
        assert float(beta_lower_bound(6, 1, 0.046875)) == pytest.approx(3 / 61, abs=1e-12)
        with pytest.raises(ValidationError):
            beta_lower_bound(6, 1, 0.1)
        with pytest.raises(ValidationError):
            beta_lower_bound(6, 1, 0.0)

    def test_finite_floor(self):
        rho = edge_census(13, 4, 1)["mean_degree_ratio"]
        a = Fraction(1, 4)
        assert finite_beta_floor(13, 4, 1, 0.25) == max(Fraction(0), (rho - a) / (1 - a))
        assert finite_beta_floor(13, 4, 1, 0.99) == 0


@pytest.mark.slow
class TestTradeoffDeskScale:
    """beta at (n, m, alpha) = (6, 1, 3/64), where C(6, 1) 2^-6 = 3/32."""

    ALPHA = 0.046875

    @pytest.fixture(scope="class")
    def at_p101(self):
        return beta_estimate(101, 6, 1, self.ALPHA, 2000, RngSpec(20240601), jobs=4)

    def test_above_half_the_floor(self, at_p101):
        half_width = (at_p101.ci_high - at_p101.ci_low) / 2
        assert at_p101.beta_hat >= 0.5 * float(beta_lower_bound(6, 1, self.ALPHA)) - half_width
        assert at_p101.beta_hat >= 0.95

    def test_trend_in_p(self, at_p101):
        at_p211 = beta_estimate(211, 6, 1, self.ALPHA, 500, RngSpec(20240601), jobs=4)
        assert at_p211.ci_high >= at_p101.ci_low
