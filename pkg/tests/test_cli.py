"""End-to-end tests of the qrlab command line."""

import json

import pytest

from src.cli import build_config, build_parser, main
from src.errors import ValidationError


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


class TestConfig:
    def test_defaults_filled(self):
        config = build_config(build_parser().parse_args(["tail", "--q", "5", "--n", "3", "--threshold", "0.5"]))
        assert config.seed == 20240601
        assert config.jobs == 1
        assert config.conditioning == "all"
        assert "jobs" not in config.embedded()

    def test_default_eta(self):
        config = build_config(build_parser().parse_args(["bounds", "--limit", "--epsilon", "0.0001"]))
        assert config.eta == pytest.approx(0.1)

    def test_bad_jobs(self):
        with pytest.raises(ValidationError, match="jobs"):
            build_config(build_parser().parse_args(["tail", "--q", "5", "--jobs", "0"]))


class TestMoments:
    def test_verify(self, capsys):
        code, doc = run_json(capsys, "moments", "--q", "5", "--full-field", "--verify")
        assert code == 0
        result = doc["result"]
        assert result["n"] == 5
        assert result["oracle_match"] and all(result["oracle_match"].values())
        assert doc["config"]["command"] == "moments"

    def test_even_order(self, capsys):
        code, doc = run_json(capsys, "moments", "--q", "4", "--n", "2")
        assert code == 2
        assert doc["kind"] == "validation"

    def test_csv(self, capsys):
        code, out = run(capsys, "moments", "--q", "3", "--n", "3", "--format", "csv")
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "j,value"
        assert lines[2] == "2,2/3"


class TestTail:
    ARGS = ("tail", "--q", "3", "--full-field", "--threshold", "0.1", "--exhaustive")

    def test_exhaustive_q3(self, capsys):
        code, out = run(capsys, *self.ARGS)
        assert code == 0
        result = json.loads(out)["result"]
        assert result["p_hat"] == "20/27"
        assert result["trials"] == 81
        assert result["ci_low"] is None
        assert run(capsys, *self.ARGS)[1] == out

    def test_jobs_do_not_change_output(self, capsys):
        args = ("tail", "--q", "101", "--n", "12", "--threshold", "0.5", "--trials", "5000", "--seed", "7")
        _, one = run(capsys, *args, "--jobs", "1")
        _, two = run(capsys, *args, "--jobs", "2")
        assert one == two

    def test_histogram_out(self, capsys, tmp_path):
        path = tmp_path / "hist.csv"
        code, _ = run(capsys, *self.ARGS, "--histogram-out", str(path))
        assert code == 0
        lines = path.read_text(encoding="utf-8").splitlines()
        assert lines[0] == "t_value,count"
        assert sum(int(line.split(",")[1]) for line in lines[1:]) == 81

    def test_duplicate_subset_file(self, capsys, tmp_path):
        path = tmp_path / "s.txt"
        path.write_text("1\n2\n1\n", encoding="utf-8")
        code, doc = run_json(capsys, "tail", "--q", "5", "--subset-file", str(path), "--threshold", "0.5")
        assert code == 2
        assert "line 3" in doc["error"]

    def test_budget(self, capsys):
        code, doc = run_json(capsys, "tail", "--q", "101", "--full-field", "--threshold", "0.5", "--exhaustive")
        assert code == 3
        assert doc["kind"] == "budget"

    def test_large_prime(self, capsys):
        code, doc = run_json(
            capsys, "tail", "--q", "10000000019", "--n", "50", "--threshold", "0.5", "--trials", "100"
        )
        assert code == 0
        assert doc["result"]["trials"] == 100
        assert doc["result"]["q"] == 10000000019

    def test_audit(self, capsys):
        code, doc = run_json(
            capsys, "tail", "--q", "101", "--n", "10", "--threshold", "0.5", "--trials", "200", "--audit"
        )
        assert code == 0
        assert doc["result"]["weil_audit"]["violations"] == 0


class TestBounds:
    def test_markov(self, capsys):
        code, doc = run_json(capsys, "bounds", "--q", "3", "--n", "3", "--delta", "0.1")
        assert code == 0
        result = doc["result"]
        assert result["markov"]["probability_floor"] == pytest.approx(0.392767, abs=1e-6)
        assert result["theorem2"]["available"] is False

    def test_theorem_constants(self, capsys):
        code, doc = run_json(capsys, "bounds", "--theorem-constants")
        assert code == 0
        assert set(doc["result"]["theorem_constants"]) == {"thm1", "thm2", "sqrt_2_over_e"}

    def test_limit_theorem2(self, capsys):
        code, doc = run_json(capsys, "bounds", "--limit", "--epsilon", "0.1")
        assert code == 0
        assert "threshold" in doc["result"]["theorem2"]
        assert doc["result"]["theorem1"]["N"] == 61

    @pytest.mark.parametrize(
        "argv",
        [
            ("bounds", "--limit", "--delta", "0.6"),
            ("bounds", "--limit", "--epsilon", "0.1", "--eta", "5"),
            ("bounds", "--delta", "0.1"),
        ],
    )
    def test_rejected(self, capsys, argv):
        code, doc = run_json(capsys, *argv)
        assert code == 2
        assert doc["kind"] == "validation"


class TestExceptional:
    def test_census(self, capsys):
        code, doc = run_json(capsys, "exceptional", "--p", "5", "--census")
        assert code == 0
        result = doc["result"]
        assert result["cubic_count"] == 100
        assert sum(row["count"] for row in result["profiles"]) == 100
        assert result["hasse"]["violations"] == 0

    def test_verify_degrees(self, capsys):
        code, doc = run_json(capsys, "exceptional", "--p", "13", "--n", "4", "--m", "1", "--verify-degrees")
        assert code == 0
        assert doc["result"]["degree_oracle"]["mismatches"] == 0
        assert doc["result"]["degrees"]["limiting_density"] == "5/8"

    def test_csv_out(self, capsys, tmp_path):
        path = tmp_path / "cubics.csv"
        code, _ = run(capsys, "exceptional", "--p", "5", "--n", "4", "--m", "1", "--csv-out", str(path))
        assert code == 0
        lines = path.read_text(encoding="utf-8").splitlines()
        assert lines[0] == "a,b,c,n_q,n_n,z,a_f,exact_degree,layer_bound"
        assert len(lines) == 101
        assert "0,4,0,2,0,3,-0.5,3,0" in lines

    def test_needs_both_n_and_m(self, capsys):
        code, doc = run_json(capsys, "exceptional", "--p", "5", "--n", "4")
        assert code == 2

    def test_not_prime(self, capsys):
        code, doc = run_json(capsys, "exceptional", "--p", "9", "--census")
        assert code == 2
