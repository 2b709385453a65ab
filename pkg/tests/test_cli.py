"""Tests for eichler.cli: output schema, determinism, exit codes, and the
verification battery."""

import json
import os
import pathlib

import pytest

from eichler.cli import build_parser, main, run

DATA = pathlib.Path(__file__).parent / "data"


def run_json(argv):
    code, text = run(argv)
    return code, json.loads(text)


# ---------------------------------------------------------------------------
# output schema and determinism


class TestSchema:
    def test_record_keys_and_value_shape(self):
        code, rec = run_json(["l-value", "--r", "12", "--s", "6"])
        assert code == 0
        assert list(rec) == ["command", "params", "results", "residuals",
                             "tolerance", "pass"]
        assert rec["command"] == "l-value"
        for row in rec["results"]:
            assert set(row) == {"inputs", "value"}
            assert len(row["value"]) == 2
        assert rec["pass"] is True

    def test_pass_iff_all_residuals_within_tolerance(self):
        code, rec = run_json(["l-value", "--r", "12", "--s", "6"])
        assert rec["pass"] == all(x <= rec["tolerance"] for x in rec["residuals"])
        # same command, tolerance below the residual: must report failure
        code, rec = run_json(["cauchy", "--r", "0.7", "--tol", "1e-14"])
        assert code == 1
        assert rec["pass"] is False
        assert any(x > rec["tolerance"] for x in rec["residuals"])

    def test_byte_identical_reruns(self):
        a = run(["cocycle-check", "--r", "2.5", "--points", "2"])
        b = run(["cocycle-check", "--r", "2.5", "--points", "2"])
        assert a == b

    def test_complex_flag_parsing(self):
        code, rec = run_json(["kernel-expand", "--r", "0.5,0.1"])
        assert code == 0
        assert rec["params"]["r"] == [0.5, 0.1]

    def test_csv_rows(self):
        code, text = run(["l-value", "--r", "12", "--s", "6", "--format", "csv"])
        lines = text.splitlines()
        assert lines[0] == "command,inputs,value_re,value_im,residual"
        # two value rows plus one residual row (counts differ for l-value)
        assert len(lines) == 4
        assert lines[-1].split(",")[-1] != ""


# ---------------------------------------------------------------------------
# exit codes


class TestExitCodes:
    def test_bad_flag_is_2(self, capsys):
        assert main(["period", "--bogus"]) == 2
        assert main(["no-such-command"]) == 2

    def test_out_of_range_tolerance_is_2(self, capsys):
        assert main(["period", "--r", "2.5", "--tol", "0.5"]) == 2
        assert main(["period", "--r", "2.5", "--tol", "1e-15"]) == 2

    def test_refusal_is_3_with_reason(self):
        code, text = run(["quantum", "--r", "-0.5"])
        assert code == 3
        err = json.loads(text)
        assert err["command"] == "quantum"
        assert err["error"]["type"] == "DomainError"
        assert "r" in err["error"]["reason"]

    def test_pole_is_3(self):
        code, text = run(["cauchy", "--r", "2"])
        assert code == 3
        assert json.loads(text)["error"]["type"] == "PoleError"

    def test_inadmissible_average_cell_is_3(self):
        code, text = run(["average", "--lam", "0.9", "--sign", "plus",
                          "--r", "0.7"])
        assert code == 3

    def test_main_prints(self, capsys):
        assert main(["l-value", "--r", "12", "--s", "6"]) == 0
        out = capsys.readouterr().out
        assert json.loads(out)["pass"] is True


# ---------------------------------------------------------------------------
# individual subcommands


class TestSubcommands:
    def test_period_relations_pass(self):
        code, rec = run_json(["period", "--r", "2.5", "--check-relations"])
        assert code == 0
        assert rec["pass"] is True
        assert all(x <= 1e-7 for x in rec["residuals"])
        assert len(rec["results"]) == 5

    def test_l_value_routes_agree(self):
        code, rec = run_json(["l-value", "--r", "12", "--s", "6"])
        a, b = (complex(*row["value"]) for row in rec["results"])
        assert abs(a - b) <= 1e-8 * abs(b)

    def test_quantum_rational_cusp(self):
        code, rec = run_json(["quantum", "--r", "3", "--a", "1/2",
                              "--delta", "T"])
        assert code == 0
        assert rec["params"]["a"] == "1/2"

    def test_goldfeld_fixture_matches_builtin(self):
        code, builtin = run_json(["goldfeld"])
        assert code == 0
        code, fromfile = run_json(["goldfeld", "--fixture",
                                   str(DATA / "curve37a_an.csv")])
        assert code == 0
        lp = builtin["results"][0]["value"][0]
        lp_file = fromfile["results"][0]["value"][0]
        assert abs(lp - lp_file) <= 1e-12
        assert abs(lp - 0.30599977383405236) <= 1e-10

    def test_harmonic_check(self):
        code, rec = run_json(["harmonic-check", "--r", "0.6,0.2"])
        assert code == 0
        assert max(rec["residuals"]) <= 1e-4


# ---------------------------------------------------------------------------
# the verification battery


class TestVerifyAll:
    def test_quick_passes(self):
        code, rec = run_json(["verify-all", "--quick"])
        assert code == 0
        assert rec["pass"] is True
        # every acceptance criterion is represented
        nums = {row["inputs"]["criterion"] for row in rec["results"]}
        assert nums == set(range(1, 14))
        # normalized residuals against the per-check tolerances
        assert rec["tolerance"] == 1.0
        for row, res in zip(rec["results"], rec["residuals"]):
            assert res == pytest.approx(
                row["value"][0] / row["inputs"]["tolerance"])

    def test_thread_pool_output_is_identical(self, monkeypatch):
        monkeypatch.delenv("EICHLER_THREADS", raising=False)
        single = run(["verify-all", "--quick"])
        monkeypatch.setenv("EICHLER_THREADS", "4")
        pooled = run(["verify-all", "--quick"])
        assert single == pooled


def test_parser_lists_all_subcommands():
    parser = build_parser()
    text = parser.format_help()
    for name in ("period", "cocycle-check", "l-value", "lerch", "average",
                 "harmonic-check", "kernel-expand", "cauchy", "quantum",
                 "goldfeld", "verify-all"):
        assert name in text
