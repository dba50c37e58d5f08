"""
Tests for the bundled reflective/coreflective situations.
"""

import json

import pytest

from chulaws.core.canned import (
    CANNED,
    load_situation,
    situation_to_json,
    with_components,
)
from chulaws.core.fincat import (
    CategoryError,
    InstanceInvalid,
    check_corollaries,
    check_theorem,
    instance_failures,
    mu,
    nu,
    validate_instance,
)


@pytest.mark.parametrize("name", sorted(CANNED))
def test_canned_situations_satisfy_the_theorem(name):
    """Every bundled instance is valid and mu, nu are inverse."""
    situation = load_situation(name)
    assert instance_failures(situation) == []
    theorem = check_theorem(situation)
    assert theorem.passed, theorem.problems
    corollaries = check_corollaries(situation)
    assert corollaries.passed, corollaries.problems
    assert corollaries.details["ff_JTI"] and corollaries.details["ff_ISJ"]


def test_instance_sizes():
    """C has 1, 2 and 4 objects in the bundled instances."""
    sizes = {
        name: check_theorem(load_situation(name)).details["objects"]
        for name in CANNED
    }
    assert sizes == {"trivial": 1, "chain": 2, "parallel": 4}
    parallel = check_theorem(load_situation("parallel"))
    assert parallel.details["arrows"] == 12


def test_mu_on_the_chain():
    """In 0 <= 1 the arrow JT 0 -> 1 corresponds to 0 -> IS 1."""
    situation = load_situation("chain")
    start = ("*", "0")
    arrow = ("id", "0<=1")
    assert mu(situation, start, arrow) == arrow
    assert nu(situation, ("*", "1"), arrow) == arrow


def test_broken_component_is_itemized():
    """A mistyped alpha component invalidates the instance."""
    situation = with_components(
        load_situation("chain"), "alpha", {("*", "0"): ("id", "0<=0")}
    )
    with pytest.raises(InstanceInvalid) as excinfo:
        validate_instance(situation)
    assert any(
        failure.startswith("alpha:") for failure in excinfo.value.failures
    )
    outcome = check_theorem(situation)
    assert not outcome.passed
    assert outcome.details == {}


def test_situation_file_round_trip(tmp_path):
    """A situation written to JSON loads back and still checks out."""
    path = tmp_path / "parallel.json"
    payload = situation_to_json(load_situation("parallel"))
    path.write_text(json.dumps(payload), encoding="utf-8")
    situation = load_situation(str(path))
    assert situation.name == "parallel"
    assert check_theorem(situation).passed


def test_unknown_situation():
    """Names that are neither canned nor files are rejected."""
    with pytest.raises(CategoryError):
        load_situation("no-such-situation")


def test_unreadable_situation_file(tmp_path):
    """Malformed JSON is reported as a category error."""
    path = tmp_path / "broken.json"
    path.write_text("{not json", encoding="utf-8")
    with pytest.raises(CategoryError):
        load_situation(str(path))
