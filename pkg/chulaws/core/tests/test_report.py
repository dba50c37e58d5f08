"""
Tests for script reports.
"""

import json

import pytest

from chulaws.core.report import (
    IncompatibleReport,
    Report,
    ReportWriteError,
    ResultEntry,
    emit_report,
    load_report,
    render_json,
    render_text,
    replayable,
)


def _report() -> Report:
    """One pass, one fail, one error."""
    return Report(
        version="0.1.0",
        seed=3,
        context={"ring": {"p": 2, "n": 3}},
        results=[
            ResultEntry(2, "check selfdual", "selfdual", "pass"),
            ResultEntry(
                3,
                "laws L6 --unrestricted",
                "L6",
                "fail",
                details={
                    "law": "L6",
                    "failures": [
                        {"law": "L6", "p": 2, "seed": 3, "trial": 1},
                        {"law": "L6", "p": 2, "seed": 3, "trial": 4},
                    ],
                },
                problems=[f"trial {k}: broken" for k in range(5)],
            ),
            ResultEntry(4, "check embed X", "embed", "error", problems=["x"]),
        ],
    )


def test_counts_and_status():
    """Summary counts and the overall status."""
    report = _report()
    assert report.counts() == {"pass": 1, "fail": 1, "error": 1}
    assert report.statuses() == ["pass", "fail", "error"]
    assert not report.passed
    assert report.to_json()["status"] == "fail"


def test_counterexample_only_when_present():
    """Entries without a counterexample omit the key."""
    entry = ResultEntry(1, "check endK", "end_of_K", "pass")
    assert "counterexample" not in entry.to_json()
    entry.counterexample = {"law": "L1"}
    assert entry.to_json()["counterexample"] == {"law": "L1"}


def test_render_json_is_sorted():
    """Keys are sorted and the body ends in a newline."""
    body = render_json(_report())
    assert body.endswith("}\n")
    payload = json.loads(body)
    assert list(payload) == sorted(payload)
    assert payload["tool"] == "chulaws"
    assert body == render_json(_report())


def test_render_text_banner():
    """The text report lists results and truncates long problem lists."""
    text = render_text(_report())
    assert "ring F_2[x]/(x^3)" in text
    assert "✅ PASS: selfdual (line 2)" in text
    assert "   Issue: trial 0: broken" in text
    assert "   ... 2 more" in text
    assert "Summary: 1 passed, 1 failed, 1 errors" in text
    assert "Status: 🚫 BLOCKED (1 failed, 1 errors)" in text


def test_emit_report(tmp_path):
    """Writing returns the same bytes that land on disk."""
    path = tmp_path / "report.txt"
    body = emit_report(_report(), "text", path)
    assert path.read_bytes() == body
    with pytest.raises(ValueError):
        emit_report(_report(), "xml")
    with pytest.raises(ReportWriteError):
        emit_report(_report(), "json", tmp_path / "no" / "report.json")


def test_load_report_versions(tmp_path):
    """Same major version loads; another one is refused."""
    path = tmp_path / "report.json"
    emit_report(_report(), "json", path)
    assert load_report(path, "0.4.2")["seed"] == 3
    with pytest.raises(IncompatibleReport):
        load_report(path, "1.0.0")
    other = tmp_path / "other.json"
    other.write_text('{"tool": "something else"}', encoding="utf-8")
    with pytest.raises(IncompatibleReport):
        load_report(other, "0.1.0")


def test_replayable_counterexamples():
    """Law failures and seeded counterexamples are collected in order."""
    payload = _report().to_json()
    payload["results"].append(
        {
            "counterexample": {"law": "L2", "p": 3, "seed": 0, "trial": 7},
            "details": {},
        }
    )
    payload["results"].append(
        {"counterexample": {"law": "L5", "message": "explicit objects"}}
    )
    trials = [(c["law"], c["trial"]) for c in replayable(payload)]
    assert trials == [("L6", 1), ("L6", 4), ("L2", 7)]
