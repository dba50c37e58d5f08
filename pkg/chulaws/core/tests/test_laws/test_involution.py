"""
Tests for the involution law.
"""

import hypothesis
import hypothesis.strategies as strat

from chulaws.core.base import TrialContext, TrialSpec
from chulaws.core.chu import make_object, unit_object, zero_object
from chulaws.core.law_scripts.involution import InvolutionCheck
from chulaws.core.linalg import FieldSpec
from chulaws.core.sampling import trial_rng


def _checker() -> InvolutionCheck:
    """Checker with catalog defaults only."""
    checker = InvolutionCheck()
    checker.set_options({}, {})
    return checker


@hypothesis.given(
    seed=strat.integers(0, 2**16), p=strat.sampled_from([2, 3, 5])
)
def test_seeded_trials_pass(seed, p):
    """Sampled objects satisfy the law."""
    spec = TrialSpec(p=p, max_dim=3, samples=1, seed=seed)
    context = TrialContext(spec, 0, trial_rng(seed, p, 1, 0))
    assert _checker().run_trial(context) is None


def test_edge_objects():
    """Zero, unit and rectangular pairings are fixed by double duals."""
    field = FieldSpec(3)
    checker = _checker()
    for obj in (
        zero_object(field),
        unit_object(field),
        make_object(field, 2, 3, [[1, 2, 0], [0, 1, 1]]),
    ):
        assert checker.verify({"T": obj}) == []


def test_trial_size_follows_the_campaign():
    """Without a max_dim option the campaign bound applies."""
    spec = TrialSpec(p=2, max_dim=2, samples=30, seed=1)
    checker = _checker()
    for trial in range(spec.samples):
        context = TrialContext(spec, trial, trial_rng(1, 2, 1, trial))
        obj = checker.sample(context)["T"]
        assert obj.dim_a <= 2 and obj.dim_x <= 2
