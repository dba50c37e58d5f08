"""
Script reports and their text and JSON renderings.

The JSON body is byte-deterministic for a given (script, seed): keys are
sorted, indentation is fixed and no timings are included.
"""

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional

from semver import VersionInfo

STATUSES = ("pass", "fail", "error")
STATUS_ICONS = {"pass": "✅", "fail": "🚫", "error": "⚠️"}


class ReportWriteError(OSError):
    """Raised when a report cannot be written to its path."""


class IncompatibleReport(ValueError):
    """Raised when a report was written by an incompatible major version."""


@dataclass
class ResultEntry:
    """
    One result line of a report.

    Attributes:
        line: Source line of the statement that produced it
        statement: Statement text
        name: Check or law name
        status: pass, fail or error
        details: JSON-ready facts
        problems: Failure or error reasons
        counterexample: First failing input, if any
    """

    line: int
    statement: str
    name: str
    status: str
    details: Dict[str, Any] = field(default_factory=dict)
    problems: List[str] = field(default_factory=list)
    counterexample: Optional[Dict[str, Any]] = None

    def to_json(self) -> Dict[str, Any]:
        """JSON-ready dictionary; ``counterexample`` only when present."""
        payload: Dict[str, Any] = {
            "line": self.line,
            "statement": self.statement,
            "name": self.name,
            "status": self.status,
            "details": self.details,
            "problems": self.problems,
        }
        if self.counterexample is not None:
            payload["counterexample"] = self.counterexample
        return payload


@dataclass
class Report:
    """
    Everything a script run produced.

    Attributes:
        version: Tool version
        seed: Master seed
        context: ``{"field": p}``, ``{"ring": {"p": p, "n": n}}`` or empty
        results: Entries in statement order
    """

    version: str
    seed: int
    context: Dict[str, Any] = field(default_factory=dict)
    results: List[ResultEntry] = field(default_factory=list)

    def counts(self) -> Dict[str, int]:
        """Number of results per status."""
        return {
            status: sum(1 for r in self.results if r.status == status)
            for status in STATUSES
        }

    @property
    def passed(self) -> bool:
        """True when every result passed."""
        return all(r.status == "pass" for r in self.results)

    def statuses(self) -> List[str]:
        """Result statuses in order."""
        return [r.status for r in self.results]

    def to_json(self) -> Dict[str, Any]:
        """JSON-ready dictionary."""
        return {
            "tool": "chulaws",
            "version": self.version,
            "seed": self.seed,
            "context": self.context,
            "results": [r.to_json() for r in self.results],
            "summary": self.counts(),
            "status": "pass" if self.passed else "fail",
        }


def render_json(report: Report) -> str:
    """Sorted keys, two-space indent, trailing newline."""
    return json.dumps(report.to_json(), indent=2, sort_keys=True) + "\n"


def _context_label(context: Dict[str, Any]) -> str:
    if "ring" in context:
        ring = context["ring"]
        return f"ring F_{ring['p']}[x]/(x^{ring['n']})"
    if "field" in context:
        return f"field F_{context['field']}"
    return "no field"


def render_text(report: Report) -> str:
    """Banner-style text report."""
    lines = ["=" * 70, "📊 CHULAWS REPORT", "=" * 70, ""]
    lines.append(
        f"chulaws {report.version} | seed {report.seed} | "
        f"{_context_label(report.context)}"
    )
    lines.append("")
    for entry in report.results:
        icon = STATUS_ICONS.get(entry.status, "•")
        lines.append(
            f"{icon} {entry.status.upper()}: {entry.name} "
            f"(line {entry.line})"
        )
        for problem in entry.problems[:3]:
            lines.append(f"   Issue: {problem}")
        if len(entry.problems) > 3:
            lines.append(f"   ... {len(entry.problems) - 3} more")
    counts = report.counts()
    lines.extend(["", "=" * 70])
    lines.append(
        f"Summary: {counts['pass']} passed, {counts['fail']} failed, "
        f"{counts['error']} errors"
    )
    lines.append("")
    if report.passed:
        lines.append("Status: ✅ PASSED")
    else:
        lines.append(
            f"Status: 🚫 BLOCKED ({counts['fail']} failed, "
            f"{counts['error']} errors)"
        )
    lines.append("=" * 70)
    return "\n".join(lines) + "\n"


def emit_report(
    report: Report, fmt: str = "json", path: Optional[Path] = None
) -> bytes:
    """
    Render a report and optionally write it to *path*.

    Returns:
        The rendered bytes

    Raises:
        ReportWriteError: when *path* cannot be written
    """
    if fmt not in ("text", "json"):
        raise ValueError(f"unknown report format '{fmt}'")
    text = render_json(report) if fmt == "json" else render_text(report)
    body = text.encode("utf-8")
    if path is not None:
        try:
            Path(path).write_bytes(body)
        except OSError as exc:
            raise ReportWriteError(
                f"cannot write report to {path}: {exc}"
            ) from exc
    return body


def load_report(path: Path, tool_version: str) -> Dict[str, Any]:
    """
    Read a JSON report written by a compatible version.

    Raises:
        OSError, json.JSONDecodeError: for an unreadable file
        IncompatibleReport: when the major versions differ
    """
    payload = json.loads(Path(path).read_text(encoding="utf-8"))
    if not isinstance(payload, dict) or "results" not in payload:
        raise IncompatibleReport(f"{path} is not a chulaws report")
    written = VersionInfo.parse(str(payload.get("version", "0.0.0")))
    current = VersionInfo.parse(tool_version)
    if written.major != current.major:
        raise IncompatibleReport(
            f"{path} was written by chulaws {written}; this is {current}"
        )
    return payload


def replayable(payload: Dict[str, Any]) -> List[Dict[str, Any]]:
    """Seeded counterexamples stored in a report, in result order."""
    found = []
    for result in payload.get("results", []):
        details = result.get("details", {})
        failures = details.get("failures")
        if isinstance(failures, list):
            found.extend(failures)
        elif isinstance(result.get("counterexample"), dict):
            candidate = result["counterexample"]
            if {"law", "p", "seed", "trial"} <= set(candidate):
                found.append(candidate)
    return found
