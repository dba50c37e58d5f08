"""
Tests for the chulaws engine.
"""

import json
from pathlib import Path

import pytest

from chulaws.core.base import TrialSpec
from chulaws.core.chu import make_object
from chulaws.core.engine import ConfigError, LawEngine
from chulaws.core.linalg import FieldSpec
from chulaws.core.registry import RegistryError


def _engine(tmp_path: Path, text: str) -> LawEngine:
    """Engine reading a throwaway config.yaml."""
    config = tmp_path / "config.yaml"
    config.write_text(text, encoding="utf-8")
    return LawEngine(config_path=config)


def test_engine_initialization():
    """The bundled config loads with its documented values."""
    engine = LawEngine()
    assert engine.samples == 200
    assert engine.max_dim == 4
    assert engine.fields == [2, 3, 5]
    assert engine.workers == 4
    assert engine.fail_threshold == "fail"
    assert engine.certified_limit == 15
    assert engine.registry.law_ids()[0] == "L1"


def test_missing_config_uses_defaults(tmp_path):
    """An absent config file means built-in defaults."""
    engine = LawEngine(config_path=tmp_path / "absent.yaml")
    assert engine.config == {}
    assert engine.samples == 200
    assert engine.module_max_dim == 6
    assert engine.module_samples == 100
    assert engine.verbose is False


def test_parallel_checks_off(tmp_path):
    """Disabling parallel checks forces one worker."""
    engine = _engine(
        tmp_path, "engine:\n  parallel_checks: false\n  workers: 8\n"
    )
    assert engine.workers == 1


@pytest.mark.parametrize(
    "text",
    [
        "trials:\n  fields: [2, 4]\n",
        "engine:\n  fail_threshold: warning\n",
        "engine:\n  workers: 0\n",
        "- just\n- a list\n",
        "trials: [\n",
    ],
)
def test_invalid_config(tmp_path, text):
    """Bad values and unreadable YAML are configuration errors."""
    with pytest.raises(ConfigError):
        _engine(tmp_path, text)


def test_catalog_major_version_is_checked(tmp_path):
    """A catalog from another major version is refused."""
    registry = tmp_path / "registry.json"
    registry.write_text(
        json.dumps({"metadata": {"version": "2.0.0"}, "laws": {}}),
        encoding="utf-8",
    )
    with pytest.raises(ConfigError):
        _engine(tmp_path, f"paths:\n  registry_file: {registry}\n")


def test_missing_catalog(tmp_path):
    """A registry path that does not exist is a configuration error."""
    with pytest.raises(ConfigError):
        _engine(
            tmp_path, f"paths:\n  registry_file: {tmp_path / 'no.json'}\n"
        )


def test_should_block_thresholds(tmp_path):
    """fail blocks on failures and errors; error only on errors."""
    strict = LawEngine()
    assert strict.should_block(["pass", "fail"])
    assert strict.should_block(["error"])
    assert not strict.should_block(["pass", "pass"])
    lenient = _engine(tmp_path, "engine:\n  fail_threshold: error\n")
    assert not lenient.should_block(["pass", "fail"])
    assert lenient.should_block(["fail", "error"])


def test_option_layers(tmp_path):
    """Statement flags beat config.yaml, which beats catalog defaults."""
    engine = LawEngine()
    assert engine.build_checker("L6").get_option("unrestricted") is False
    checker = engine.build_checker("L6", {"unrestricted": True})
    assert checker.get_option("unrestricted") is True
    assert engine.build_checker("L3").get_option("max_dim") == 3

    by_name = _engine(tmp_path, "laws:\n  associativity:\n    max_dim: 2\n")
    assert by_name.build_checker("L10").get_option("max_dim") == 2


def test_run_law_is_independent_of_workers():
    """Thread-pool size does not change any trial."""
    engine = LawEngine()
    spec = TrialSpec(p=2, max_dim=4, samples=50, seed=0)
    options = {"unrestricted": True}
    serial = engine.run_law("L6", spec, options, workers=1)
    pooled = engine.run_law("L6", spec, options, workers=4)
    assert serial.to_json() == pooled.to_json()
    assert serial.failures
    assert engine.failed_count == 2


def test_laws_hold_on_a_short_run():
    """A few trials of every law pass over F_3."""
    engine = LawEngine()
    reports = engine.run_laws(
        engine.registry.law_ids(), [3], samples=5, max_dim=3, seed=1
    )
    assert [r.law_id for r in reports] == engine.registry.law_ids()
    assert all(r.passed for r in reports), [
        f.message for r in reports for f in r.failures
    ]
    assert engine.passed_count == 10


def test_replay_regenerates_the_failure():
    """Replaying a counterexample reproduces its message."""
    engine = LawEngine()
    spec = TrialSpec(p=2, max_dim=4, samples=50, seed=0)
    report = engine.run_law("L6", spec, {"unrestricted": True})
    first = report.failures[0]
    again = engine.replay(first)
    assert again is not None
    assert again.message == first.message
    assert again.objects == first.objects


def test_verify_law_on_given_objects():
    """Explicit objects are checked against the law's roles."""
    engine = LawEngine()
    unit = make_object(FieldSpec(2), 1, 1, [[1]])
    assert engine.verify_law("L5", [unit, unit]) == []
    with pytest.raises(RegistryError):
        engine.verify_law("L5", [unit])


def test_unknown_law():
    """Unknown ids raise a registry error."""
    with pytest.raises(RegistryError):
        LawEngine().build_checker("L42")
