import json
import os
from fractions import Fraction

import jsonschema
import pytest

from hankelring.verifier.reports import (
    SCHEMA_VERSION,
    ReportWriteError,
    ReportWriter,
    Status,
    VerificationReport,
    reports_to_dataframe,
    summarize,
    to_jsonable,
)


@pytest.fixture(scope="module")
def passing_report():
    return VerificationReport.compare(
        "invariants",
        {"t": 2, "n": 3, "field": "QQ"},
        "dimension and multiplicity",
        computed={"dimension": 2, "multiplicity": 3, "series": (1, 2)},
        expected={"dimension": 2, "multiplicity": 3},
    ).with_suite("invariants")


@pytest.fixture(scope="module")
def failing_report():
    return VerificationReport.compare(
        "fpt-maximal",
        {"t": 2, "n": 2, "p": 3},
        "threshold",
        computed={"closed_form": Fraction(1, 2)},
        expected={"closed_form": Fraction(1)},
    ).with_suite("fpt-maximal")


@pytest.fixture(scope="module")
def writer():
    return ReportWriter()


class TestVerificationReport:
    def test_compare(self, passing_report, failing_report):
        assert passing_report.status == Status.PASS
        assert passing_report.passed
        assert passing_report.notes == []

        # A computed value that differs from the expected one. Failure expected.
        assert failing_report.status == Status.FAIL
        assert failing_report.notes == ["mismatch in 'closed_form'"]

    def test_not_applicable_and_budget(self):
        report = VerificationReport.not_applicable("fedder", {"t": 2}, "anchor", "needs GF(p)")
        assert report.status == Status.NOT_APPLICABLE
        assert report.notes == ["needs GF(p)"]

        report = VerificationReport.budget_exhausted("fedder", {"t": 2}, "anchor", 100)
        assert report.status == Status.BUDGET_EXHAUSTED
        assert report.notes == ["step budget 100 exhausted"]
        assert not report.passed

    def test_to_dict(self, passing_report, failing_report):
        document = passing_report.to_dict()
        assert document["suite"] == "invariants"
        assert document["status"] == "pass"
        assert document["computed"]["series"] == [1, 2]
        assert "timing" not in document
        assert failing_report.to_dict()["computed"] == {"closed_form": "1/2"}

        timed = VerificationReport("fedder", {}, "anchor", Status.PASS, timing=0.12345678)
        assert timed.to_dict(include_timing=True)["timing"] == 0.123457
        assert "timing" not in timed.to_dict()

    def test_to_jsonable(self):
        assert to_jsonable(Fraction(4, 2)) == 2
        assert to_jsonable({1: Status.PASS}) == {"1": "pass"}
        assert to_jsonable(frozenset({3, 1})) == [1, 3]
        assert to_jsonable(None) is None
        assert to_jsonable(True) is True


class TestSummaries:
    def test_summarize(self, passing_report, failing_report):
        summary = summarize([passing_report, failing_report, passing_report])
        assert summary == {
            "pass": 2,
            "fail": 1,
            "not-applicable": 0,
            "budget-exhausted": 0,
            "total": 3,
        }

    def test_dataframe(self, passing_report, failing_report):
        frame = reports_to_dataframe([passing_report, failing_report])
        assert list(frame.columns) == ["suite", "check", "parameters", "status", "anchor"]
        assert frame["parameters"].tolist() == ["field=QQ, n=3, t=2", "n=2, p=3, t=2"]
        assert reports_to_dataframe([]).empty


class TestReportWriter:
    def test_document(self, writer, passing_report, failing_report):
        document = writer.document([passing_report, failing_report], {"t": (2, 3)})
        assert document["schema_version"] == SCHEMA_VERSION
        assert document["config"] == {"t": [2, 3]}
        # sorted by suite, then check
        assert [r["suite"] for r in document["reports"]] == ["fpt-maximal", "invariants"]

        # A report without a check name. Failure expected.
        nameless = VerificationReport("", {}, "anchor", Status.PASS)
        with pytest.raises(jsonschema.ValidationError):
            writer.document([nameless], {})

    def test_write(self, tmpdir, writer, passing_report, failing_report):
        path = str(tmpdir.join("runs", "report.json"))
        assert writer.write(path, [failing_report, passing_report], {"seed": 0}) == path
        with open(path, "r") as f:
            first = f.read()
        assert json.loads(first)["summary"]["total"] == 2
        assert not os.path.exists(f"{path}.tmp")

        # Equal runs give byte-identical files. Success expected.
        writer.write(path, [passing_report, failing_report], {"seed": 0})
        with open(path, "r") as f:
            assert f.read() == first

    def test_write_error(self, tmpdir, writer, passing_report):
        blocker = tmpdir.join("blocker")
        blocker.write("")

        # A destination below a regular file. Failure expected.
        with pytest.raises(ReportWriteError):
            writer.write(str(blocker.join("report.json")), [passing_report], {})
