"""
Tests for the reflector-adjointness law.
"""

import hypothesis
import hypothesis.strategies as strat

from chulaws.core.base import TrialContext, TrialSpec
from chulaws.core.chu import make_object, unit_object, zero_object
from chulaws.core.law_scripts.reflector_adjointness import (
    ReflectorAdjointnessCheck,
)
from chulaws.core.linalg import FieldSpec
from chulaws.core.sampling import trial_rng


def _checker() -> ReflectorAdjointnessCheck:
    """Checker with catalog defaults only."""
    checker = ReflectorAdjointnessCheck()
    checker.set_options({}, {})
    return checker


@hypothesis.given(
    seed=strat.integers(0, 2**16), p=strat.sampled_from([2, 3, 5])
)
def test_seeded_trials_pass(seed, p):
    """Sampled triples satisfy the law."""
    spec = TrialSpec(p=p, max_dim=3, samples=1, seed=seed)
    context = TrialContext(spec, 0, trial_rng(seed, p, 7, 0))
    assert _checker().run_trial(context) is None


def test_wrong_targets_are_reported():
    """U_sep must be separated and U_ext extensional."""
    field = FieldSpec(2)
    glued = make_object(field, 2, 1, [[1], [1]])
    problems = _checker().verify(
        {
            "T": unit_object(field),
            "U_sep": glued,
            "U_ext": make_object(field, 1, 2, [[1, 1]]),
        }
    )
    assert problems == ["U_sep is not separated", "U_ext is not extensional"]


def test_explicit_objects():
    """Transport along S and E for a degenerate T."""
    field = FieldSpec(3)
    degenerate = make_object(field, 2, 2, [[1, 2], [2, 1]])
    objects = {
        "T": degenerate,
        "U_sep": unit_object(field),
        "U_ext": zero_object(field),
    }
    assert _checker().verify(objects) == []
