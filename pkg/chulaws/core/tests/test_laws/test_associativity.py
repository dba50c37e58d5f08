"""
Tests for the associativity law.
"""

import hypothesis
import hypothesis.strategies as strat

from chulaws.core.base import TrialContext, TrialSpec
from chulaws.core.chu import make_object, unit_object, zero_object
from chulaws.core.law_scripts.associativity import AssociativityCheck
from chulaws.core.linalg import FieldSpec
from chulaws.core.sampling import trial_rng


def _checker() -> AssociativityCheck:
    """Checker with catalog defaults only."""
    checker = AssociativityCheck()
    checker.set_options({}, {})
    return checker


@hypothesis.given(
    seed=strat.integers(0, 2**16), p=strat.sampled_from([2, 3, 5])
)
def test_seeded_trials_pass(seed, p):
    """Sampled triples satisfy the law."""
    spec = TrialSpec(p=p, max_dim=3, samples=1, seed=seed)
    context = TrialContext(spec, 0, trial_rng(seed, p, 10, 0))
    assert _checker().run_trial(context) is None


def test_explicit_triples():
    """The associator on units, zero and a rectangular pairing."""
    field = FieldSpec(2)
    unit, zero = unit_object(field), zero_object(field)
    rectangle = make_object(field, 2, 1, [[1], [1]])
    checker = _checker()
    for t, u, w in (
        (unit, unit, unit),
        (rectangle, unit, rectangle),
        (zero, rectangle, unit),
    ):
        assert checker.verify({"T": t, "U": u, "W": w}) == []


def test_catalog_caps_the_dimension():
    """L10 trials never exceed three dimensions per carrier."""
    checker = AssociativityCheck()
    checker.set_options({"max_dim": 3}, {})
    spec = TrialSpec(p=3, max_dim=4, samples=1, seed=2)
    context = TrialContext(spec, 0, trial_rng(2, 3, 10, 0))
    objects = checker.sample(context)
    assert all(o.dim_a <= 3 and o.dim_x <= 3 for o in objects.values())
