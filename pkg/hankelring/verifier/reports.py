import json
import logging
import os
from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence

import jsonschema
import pandas as pd

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1
REPORT_SCHEMA_PATH = os.path.join(os.path.dirname(__file__), "schemas", "report.schema.json")


class ReportWriteError(Exception):
    def __init__(self, message):
        super().__init__(message)


class Status(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    NOT_APPLICABLE = "not-applicable"
    BUDGET_EXHAUSTED = "budget-exhausted"


def to_jsonable(value: Any) -> Any:
    """Exact values as JSON: rationals become 'a/b' strings, tuples become lists."""
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, Fraction):
        return str(value) if value.denominator != 1 else value.numerator
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = [to_jsonable(v) for v in value]
        return sorted(items, key=repr) if isinstance(value, (set, frozenset)) else items
    if isinstance(value, float):
        return value
    return str(value)


@dataclass
class VerificationReport:
    """
    The outcome of one verification: what was checked, on which parameters, against which
    statement, and the computed and expected values side by side.
    """

    check: str
    parameters: Dict[str, Any]
    anchor: str
    status: Status
    computed: Dict[str, Any] = field(default_factory=dict)
    expected: Dict[str, Any] = field(default_factory=dict)
    suite: str = ""
    seed: Optional[int] = None
    notes: List[str] = field(default_factory=list)
    timing: Optional[float] = None

    @classmethod
    def compare(
        cls,
        check: str,
        parameters: Dict[str, Any],
        anchor: str,
        computed: Dict[str, Any],
        expected: Dict[str, Any],
        seed: int = None,
        notes: Sequence[str] = (),
    ) -> "VerificationReport":
        """Pass exactly when every expected key has an equal computed value."""
        mismatched = [key for key in expected if computed.get(key) != expected[key]]
        status = Status.FAIL if mismatched else Status.PASS
        notes = list(notes) + [f"mismatch in '{key}'" for key in mismatched]
        return cls(check, parameters, anchor, status, computed, expected, seed=seed, notes=notes)

    @classmethod
    def not_applicable(
        cls, check: str, parameters: Dict[str, Any], anchor: str, reason: str
    ) -> "VerificationReport":
        return cls(check, parameters, anchor, Status.NOT_APPLICABLE, notes=[reason])

    @classmethod
    def budget_exhausted(
        cls, check: str, parameters: Dict[str, Any], anchor: str, budget: Optional[int]
    ) -> "VerificationReport":
        return cls(
            check,
            parameters,
            anchor,
            Status.BUDGET_EXHAUSTED,
            notes=[f"step budget {budget} exhausted"],
        )

    @property
    def passed(self) -> bool:
        return self.status == Status.PASS

    def with_suite(self, suite: str) -> "VerificationReport":
        return replace(self, suite=suite)

    def to_dict(self, include_timing: bool = False) -> Dict[str, Any]:
        document = {
            "suite": self.suite,
            "check": self.check,
            "parameters": to_jsonable(self.parameters),
            "anchor": self.anchor,
            "status": self.status.value,
            "computed": to_jsonable(self.computed),
            "expected": to_jsonable(self.expected),
            "seed": self.seed,
            "notes": list(self.notes),
        }
        if include_timing and self.timing is not None:
            document["timing"] = round(self.timing, 6)
        return document


def sort_key(report: VerificationReport) -> tuple:
    return (report.suite, report.check, json.dumps(to_jsonable(report.parameters), sort_keys=True))


def summarize(reports: Sequence[VerificationReport]) -> Dict[str, int]:
    summary = {status.value: 0 for status in Status}
    for report in reports:
        summary[report.status.value] += 1
    summary["total"] = len(reports)
    return summary


def reports_to_dataframe(reports: Sequence[VerificationReport]) -> pd.DataFrame:
    """One row per report, with the parameters flattened into a compact string column."""
    rows = [
        {
            "suite": r.suite,
            "check": r.check,
            "parameters": ", ".join(f"{k}={v}" for k, v in sorted(r.parameters.items())),
            "status": r.status.value,
            "anchor": r.anchor,
        }
        for r in reports
    ]
    return pd.DataFrame(rows, columns=["suite", "check", "parameters", "status", "anchor"])


class ReportWriter:
    """
    Writes verification runs as one JSON document validated against the report schema.

    The document holds `schema_version`, the configuration echo, a status summary and the sorted
    reports. Keys are sorted and timings are left out unless requested, so equal runs produce
    byte-identical files.

    Parameters
    ----------
    schema_path : str, optional
        Path to the JSON schema of the document, the bundled schema by default.
    """

    def __init__(self, schema_path: str = REPORT_SCHEMA_PATH) -> None:
        with open(schema_path, "r") as f:
            self.schema = json.load(f)
        jsonschema.Draft7Validator.check_schema(self.schema)

    def document(
        self,
        reports: Sequence[VerificationReport],
        config: Dict[str, Any],
        include_timing: bool = False,
    ) -> Dict[str, Any]:
        ordered = sorted(reports, key=sort_key)
        document = {
            "schema_version": SCHEMA_VERSION,
            "config": to_jsonable(config),
            "summary": summarize(ordered),
            "reports": [r.to_dict(include_timing=include_timing) for r in ordered],
        }
        jsonschema.validate(instance=document, schema=self.schema)
        return document

    def write(
        self,
        path: str,
        reports: Sequence[VerificationReport],
        config: Dict[str, Any],
        include_timing: bool = False,
    ) -> str:
        """
        Write the document to `path` atomically: a temporary sibling file is renamed into place.

        Raises
        ------
        ReportWriteError
            If the destination cannot be written.
        """
        payload = json.dumps(
            self.document(reports, config, include_timing), sort_keys=True, indent=2
        ) + "\n"
        tmp_path = f"{path}.tmp"
        try:
            os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
            with open(tmp_path, "w") as f:
                f.write(payload)
            os.replace(tmp_path, path)
        except OSError as e:
            raise ReportWriteError(f"Cannot write the report to '{path}': {e}")
        logger.info(f"Wrote {len(reports)} reports to {path}.")
        return path
