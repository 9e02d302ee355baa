import argparse
import json
import logging

import pytest

from hankelring.verifier import cli
from hankelring.verifier.reports import Status, VerificationReport


@pytest.fixture(scope="function")
def report_path(tmpdir):
    return str(tmpdir.join("report.json"))


@pytest.fixture(scope="module")
def tiny_check():
    def _tiny_check(*extra):
        return [
            "check",
            "--preset",
            "quick",
            "--t",
            "2",
            "--n",
            "2:3",
            "--prime",
            "2",
            "--suite",
            "invariants",
            *extra,
        ]

    return _tiny_check


class TestParseRange:
    def test_values(self):
        assert cli.parse_range("3") == [3, 3]
        assert cli.parse_range("2:4") == [2, 4]

        # Not an integer. Failure expected.
        with pytest.raises(argparse.ArgumentTypeError):
            cli.parse_range("two")


class TestResolveConfig:
    def test_precedence(self, tmpdir):
        settings_file = tmpdir.join("run.cfg")
        settings_file.write("t = 2:3\nprimes = 3\nseed = 11\n")
        args = cli.build_parser().parse_args(
            ["check", "--preset", "quick", "--config", str(settings_file), "--t", "2"]
        )
        config = cli.resolve_config(args)
        # flags over the file, the file over the preset
        assert config.t == (2, 2)
        assert config.primes == (3,)
        assert config.seed == 11
        assert config.e_max == 1


class TestMain:
    def test_check(self, tiny_check, report_path, tmpdir, capsys):
        csv_path = str(tmpdir.join("summary.csv"))
        assert cli.main(tiny_check("--out", report_path, "--csv", csv_path)) == 0
        with open(report_path, "r") as f:
            document = json.load(f)
        assert document["summary"]["pass"] == 2
        assert document["config"]["suites"] == ["invariants"]
        assert all("timing" not in r for r in document["reports"])
        with open(csv_path, "r") as f:
            assert f.readline().startswith("suite,pass,fail")
        assert "pass: 2" in capsys.readouterr().out

    def test_timings(self, tiny_check, report_path):
        assert cli.main(tiny_check("--out", report_path, "--timings")) == 0
        with open(report_path, "r") as f:
            document = json.load(f)
        assert all("timing" in r for r in document["reports"])

    def test_failures(self, tiny_check, report_path, monkeypatch, caplog):
        failing = VerificationReport(
            "invariants", {"t": 2}, "anchor", Status.FAIL, suite="invariants"
        )
        passing = VerificationReport(
            "invariants", {"t": 3}, "anchor", Status.PASS, suite="invariants"
        )
        monkeypatch.setattr(cli, "run_suites", lambda config: [passing, failing])

        # A run with a failing check. Failure exit code expected.
        with caplog.at_level(logging.WARNING, logger="hankelring.verifier.cli"):
            assert cli.main(tiny_check("--out", report_path)) == cli.EXIT_FAILURES
        warnings = [r.getMessage() for r in caplog.records if r.name == cli.logger.name]
        assert warnings == ["invariants/invariants failed on {'t': 2}."]

    def test_deterministic_report(self, tiny_check, tmpdir):
        paths = [str(tmpdir.join(f"run{i}.json")) for i in range(2)]
        for path in paths:
            argv = tiny_check("--suite", "minor-identity", "--seed", "7", "--out", path)
            assert cli.main(argv) == 0
        with open(paths[0], "rb") as first, open(paths[1], "rb") as second:
            assert first.read() == second.read()

    def test_explain(self, capsys):
        assert cli.main(["explain", "fpure"]) == 0
        assert capsys.readouterr().out.startswith("fpure")

        # A suite that does not exist. Failure expected.
        with pytest.raises(SystemExit) as error:
            cli.main(["explain", "nope"])
        assert error.value.code == cli.EXIT_USAGE

    def test_cache_clear(self, tmpdir, capsys):
        assert cli.main(["cache", "clear", "--cache-dir", str(tmpdir)]) == 0
        assert "Removed 0 cache entries" in capsys.readouterr().out

    @pytest.mark.parametrize(
        "argv",
        [
            ["check", "--t", "two"],
            ["check", "--prime", "4"],
            ["check", "--suite", "nope"],
            ["check", "--budget", "0"],
            ["check", "--preset", "missing"],
            ["frobenius"],
        ],
    )
    def test_usage_errors(self, argv, report_path):
        # Bad flags, values or commands. Failure expected.
        with pytest.raises(SystemExit) as error:
            cli.main(argv + ["--out", report_path] if argv[0] == "check" else argv)
        assert error.value.code == cli.EXIT_USAGE

    def test_unwritable_report(self, tiny_check, tmpdir, monkeypatch):
        blocker = tmpdir.join("blocker")
        blocker.write("")
        monkeypatch.setattr(cli, "run_suites", lambda config: [])

        # A report path below a regular file. Failure expected.
        assert cli.main(tiny_check("--out", str(blocker.join("report.json")))) == cli.EXIT_USAGE
