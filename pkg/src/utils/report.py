"""
Verification Reports
Per-check records with provenance, JSON and aligned-text emission, and a
digest that ignores wall-clock times
"""

import hashlib
import json
import logging
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import pandas as pd

logger = logging.getLogger(__name__)

PROVENANCE_TAGS = ("PAPER", "DERIVED", "TRIVIAL", "REPORT")


def _plain(value: Any) -> Any:
    """JSON-safe copy of a computed value (tuples to lists, everything exotic to str)."""
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if value is None or isinstance(value, (bool, int, float, str)):
        return value
    if hasattr(value, "item"):
        return value.item()
    return str(value)


@dataclass
class CheckRecord:
    """
    One acceptance check

    Attributes:
        name: unique check name within its suite
        expected: the golden value
        computed: what the engine produced (the error text when it raised)
        provenance: PAPER, DERIVED or TRIVIAL; REPORT marks report-only rows
        passed: equality of expected and computed (always True for REPORT rows)
        wall_time: seconds spent, excluded from the digest
    """
    name: str
    expected: Any
    computed: Any
    provenance: str
    passed: bool
    wall_time: float = 0.0
    note: str = ""

    def __post_init__(self):
        if self.provenance not in PROVENANCE_TAGS:
            raise ValueError(f"unknown provenance tag {self.provenance!r}")
        self.expected = _plain(self.expected)
        self.computed = _plain(self.computed)


@dataclass
class Report:
    suite: str
    checks: List[CheckRecord] = field(default_factory=list)
    config: Dict[str, Any] = field(default_factory=dict)

    def add(self, record: CheckRecord) -> CheckRecord:
        if any(c.name == record.name for c in self.checks):
            raise ValueError(f"duplicate check name {record.name!r} in suite {self.suite}")
        self.checks.append(record)
        status = "✅" if record.passed else "❌"
        logger.info(f"{status} {record.name}: {record.computed} (expected {record.expected})")
        return record

    def extend(self, other: "Report") -> None:
        for record in other.checks:
            self.add(record)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> List[CheckRecord]:
        return [c for c in self.checks if not c.passed]

    def sorted(self) -> "Report":
        """Copy with checks in name order, so output does not depend on scheduling."""
        return Report(self.suite, sorted(self.checks, key=lambda c: c.name), dict(self.config))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "suite": self.suite,
            "passed": self.passed,
            "config": _plain(self.config),
            "checks": [asdict(c) for c in self.checks],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "Report":
        data = json.loads(text)
        checks = [CheckRecord(**c) for c in data["checks"]]
        return cls(data["suite"], checks, data.get("config", {}))

    def to_frame(self) -> pd.DataFrame:
        rows = [{
            "check": c.name,
            "status": "PASS" if c.passed else "FAIL",
            "expected": json.dumps(c.expected, sort_keys=True),
            "computed": json.dumps(c.computed, sort_keys=True),
            "source": c.provenance,
            "seconds": round(c.wall_time, 3),
        } for c in self.checks]
        return pd.DataFrame(rows, columns=["check", "status", "expected", "computed", "source", "seconds"])

    def to_text(self) -> str:
        header = f"Suite {self.suite}: {'PASSED' if self.passed else 'FAILED'}"
        header += f" ({len(self.checks) - len(self.failures)}/{len(self.checks)} checks)"
        if not self.checks:
            return header
        return header + "\n" + self.to_frame().to_string(index=False)

    def digest(self) -> str:
        """sha256 of the report without wall times."""
        data = self.to_dict()
        for c in data["checks"]:
            c.pop("wall_time", None)
        return hashlib.sha256(json.dumps(data, sort_keys=True).encode("utf-8")).hexdigest()


def emit(report: Report, fmt: str = "text", path: Optional[Union[str, Path]] = None) -> str:
    """
    Render a report as ``json`` or ``text``; also write it when a path is given

    Raises:
        ValueError: unknown format
    """
    if fmt == "json":
        rendered = report.to_json()
    elif fmt == "text":
        rendered = report.to_text()
    else:
        raise ValueError(f"unknown report format {fmt!r}; use json or text")
    if path is not None:
        Path(path).parent.mkdir(parents=True, exist_ok=True)
        Path(path).write_text(rendered + "\n", encoding="utf-8")
        logger.info(f"💾 Report written to {path}")
    return rendered


class CheckRunner:
    """
    Runs checks against a golden section and records them on a report

    A check that raises is recorded as failed with the error text as its
    computed value; the suite carries on.

    Args:
        report: report receiving the records
        golden: name -> {"expected": ..., "provenance": ...}
    """

    def __init__(self, report: Report, golden: Dict[str, Dict[str, Any]]):
        self.report = report
        self.golden = golden

    def check(self, name: str, compute, expected: Any = None, provenance: Optional[str] = None) -> Any:
        """Compare ``compute()`` with the golden value of ``name`` (or the given one)."""
        entry = self.golden.get(name, {})
        if expected is None:
            if "expected" not in entry:
                raise KeyError(f"no golden value for check {name!r}")
            expected = entry["expected"]
        provenance = provenance or entry.get("provenance", "DERIVED")
        start = time.time()
        try:
            computed = compute()
            passed = _plain(computed) == _plain(expected)
            note = ""
        except Exception as exc:
            logger.error(f"❌ {name} raised {type(exc).__name__}: {exc}")
            computed, passed, note = f"{type(exc).__name__}: {exc}", False, "error"
        self.report.add(CheckRecord(name, expected, computed, provenance, passed, time.time() - start, note))
        return None if note == "error" else computed

    def record(self, name: str, compute, note: str = "") -> Any:
        """Report-only row: the value is shown, never judged."""
        start = time.time()
        try:
            computed = compute()
        except Exception as exc:
            computed, note = f"{type(exc).__name__}: {exc}", "error"
        self.report.add(CheckRecord(name, None, computed, "REPORT", True, time.time() - start, note))
        return computed
