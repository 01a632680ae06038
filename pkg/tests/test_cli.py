"""Command-line interface: subcommands, output formats, exit codes."""

import json

import pytest

from recordwalk import IncrementLaw, bundled_law_path
from recordwalk.cli import main

SYM_PATH = str(bundled_law_path("sym.json"))
STABLE_PATH = str(bundled_law_path("stable_g05_b05.json"))


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def parse_csv(text):
    lines = text.strip().splitlines()
    meta = [l for l in lines if l.startswith("#")]
    body = [l for l in lines if not l.startswith("#")]
    header = body[0].split(",")
    rows = [l.split(",") for l in body[1:]]
    return meta, header, rows


class TestRate:
    def test_single_point_json(self, capsys):
        code, out = run_cli(capsys, "rate", "--law", SYM_PATH, "--x", "0.5")
        assert code == 0
        doc = json.loads(out)
        assert doc["x"] == 2.0
        assert doc["ldp_rate"] > 0.0
        assert doc["lambda"] < 0.0
        law = IncrementLaw.from_json(bundled_law_path("sym.json").read_text())
        assert doc["meta"]["law_sha256"] == law.sha256()

    def test_grid_csv(self, capsys):
        code, out = run_cli(capsys, "rate", "--law", SYM_PATH,
                            "--grid", "0.2:0.8:4")
        assert code == 0
        meta, header, rows = parse_csv(out)
        assert header[0] == "x"
        assert len(rows) == 4
        assert any("law_sha256" in m for m in meta)
        # float fields round-trip exactly through repr
        assert float(rows[0][5]) > 0.0

    def test_requires_exactly_one_mode(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["rate", "--law", SYM_PATH])
        assert exc.value.code == 2
        with pytest.raises(SystemExit) as exc:
            main(["rate", "--law", SYM_PATH, "--x", "0.5", "--grid", "0:1:3"])
        assert exc.value.code == 2


class TestMdp:
    def test_closed_form(self, capsys):
        code, out = run_cli(capsys, "mdp", "--law", SYM_PATH)
        assert code == 0
        doc = json.loads(out)
        assert doc["alpha"] == 0.5
        assert doc["regime"] == "FiniteVariance"
        assert doc["rate_exponent"] == 2.0

    def test_numeric(self, capsys):
        code, out = run_cli(capsys, "mdp", "--law", STABLE_PATH, "--numeric")
        assert code == 0
        doc = json.loads(out)
        assert doc["regime"] == "NumericEstimate"
        assert abs(doc["alpha"] - 1.0 / 3.0) < 0.01


class TestOracle:
    def test_modes_agree(self, capsys):
        code_dp, out_dp = run_cli(capsys, "oracle", "--law", SYM_PATH,
                                  "--n", "10", "--mode", "dp")
        code_rn, out_rn = run_cli(capsys, "oracle", "--law", SYM_PATH,
                                  "--n", "10", "--mode", "renewal")
        assert code_dp == code_rn == 0
        _, _, rows_dp = parse_csv(out_dp)
        _, _, rows_rn = parse_csv(out_rn)
        assert rows_dp[0][3] == "dp" and rows_rn[0][3] == "renewal"
        for a, b in zip(rows_dp, rows_rn):
            assert abs(float(a[1]) - float(b[1])) <= 1e-12

    def test_bad_n_is_numeric_failure(self, capsys):
        code, _ = run_cli(capsys, "oracle", "--law", SYM_PATH,
                          "--n", "0", "--mode", "dp")
        assert code == 1


class TestSimulate:
    def test_byte_identical_reruns_and_workers(self, capsys):
        args = ["simulate", "--law", SYM_PATH, "--n", "10",
                "--paths", "20000", "--seed", "9"]
        _, first = run_cli(capsys, *args)
        _, second = run_cli(capsys, *args)
        _, eight = run_cli(capsys, *args, "--workers", "8")
        assert first == second == eight
        meta, header, rows = parse_csv(first)
        assert any("seed=9" in m for m in meta)
        assert header == ["k", "estimate", "ci_lo", "ci_hi"]
        assert float(rows[0][1]) == 1.0

    def test_kmax_limits_rows(self, capsys):
        _, out = run_cli(capsys, "simulate", "--law", SYM_PATH, "--n", "10",
                         "--paths", "2000", "--seed", "1", "--kmax", "3")
        _, _, rows = parse_csv(out)
        assert len(rows) == 4


class TestSeries:
    def test_h_coefficients(self, capsys):
        code, out = run_cli(capsys, "series", "--law", SYM_PATH,
                            "--what", "h", "--order", "5")
        assert code == 0
        _, _, rows = parse_csv(out)
        assert float(rows[1][1]) == 0.5  # leading coefficient is q

    def test_returns(self, capsys):
        code, out = run_cli(capsys, "series", "--law", SYM_PATH,
                            "--what", "returns", "--order", "8")
        assert code == 0
        _, _, rows = parse_csv(out)
        assert float(rows[0][1]) == 1.0
        assert float(rows[2][1]) == 0.5


class TestVerify:
    def test_passing_suite(self, capsys):
        code, out = run_cli(capsys, "verify", "--law", SYM_PATH,
                            "--suite", "h-limits")
        assert code == 0
        doc = json.loads(out)
        assert doc["passed"] is True
        assert all(c["passed"] for c in doc["checks"])

    def test_unknown_suite_is_usage_error(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["verify", "--law", SYM_PATH, "--suite", "nope"])
        assert exc.value.code == 2


class TestErrors:
    def test_missing_law_file(self, capsys):
        assert main(["rate", "--law", "/no/such/file.json", "--x", "0.5"]) == 2

    def test_invalid_law_file(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text(
            '{"orientation": "right", "spec": {"type": "explicit", '
            '"q": 0.5, "p": [0.1, 0.4]}}'
        )
        assert main(["rate", "--law", str(bad), "--x", "0.5"]) == 2
