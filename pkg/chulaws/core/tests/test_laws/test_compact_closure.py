"""
Tests for the compact-closure law.
"""

import hypothesis
import hypothesis.strategies as strat

from chulaws.core.base import TrialContext, TrialSpec
from chulaws.core.chu import make_object, unit_object, zero_object
from chulaws.core.law_scripts.compact_closure import CompactClosureCheck
from chulaws.core.linalg import FieldSpec
from chulaws.core.sampling import trial_rng


def _checker() -> CompactClosureCheck:
    """Checker with catalog defaults only."""
    checker = CompactClosureCheck()
    checker.set_options({}, {})
    return checker


@hypothesis.given(
    seed=strat.integers(0, 2**16), p=strat.sampled_from([2, 3, 5])
)
def test_seeded_trials_pass(seed, p):
    """Sampled separated and extensional pairs satisfy the law."""
    spec = TrialSpec(p=p, max_dim=3, samples=1, seed=seed)
    context = TrialContext(spec, 0, trial_rng(seed, p, 9, 0))
    assert _checker().run_trial(context) is None


def test_inputs_must_be_separated_and_extensional():
    """A degenerate U is rejected before any comparison."""
    field = FieldSpec(2)
    glued = make_object(field, 2, 1, [[1], [1]])
    problems = _checker().verify({"U": glued, "V": unit_object(field)})
    assert problems == ["U is not separated and extensional"]


def test_explicit_pairs():
    """Square nondegenerate pairings of different sizes."""
    field = FieldSpec(5)
    plane = make_object(field, 2, 2, [[1, 2], [3, 4]])
    checker = _checker()
    assert checker.verify({"U": plane, "V": unit_object(field)}) == []
    assert checker.verify({"U": zero_object(field), "V": plane}) == []
