"""
Tests for the dual-as-hom law.
"""

import hypothesis
import hypothesis.strategies as strat

from chulaws.core.base import TrialContext, TrialSpec
from chulaws.core.chu import make_object, unit_object, zero_object
from chulaws.core.law_scripts.dual_as_hom import DualAsHomCheck
from chulaws.core.linalg import FieldSpec
from chulaws.core.sampling import trial_rng


def _checker() -> DualAsHomCheck:
    """Checker with catalog defaults only."""
    checker = DualAsHomCheck()
    checker.set_options({}, {})
    return checker


@hypothesis.given(
    seed=strat.integers(0, 2**16), p=strat.sampled_from([2, 3, 5])
)
def test_seeded_trials_pass(seed, p):
    """Sampled objects satisfy the law."""
    spec = TrialSpec(p=p, max_dim=3, samples=1, seed=seed)
    context = TrialContext(spec, 0, trial_rng(seed, p, 2, 0))
    assert _checker().run_trial(context) is None


def test_edge_objects():
    """The unit, the zero object and a degenerate pairing."""
    field = FieldSpec(5)
    checker = _checker()
    for obj in (
        zero_object(field),
        unit_object(field),
        make_object(field, 2, 1, [[0], [0]]),
    ):
        assert checker.verify({"T": obj}) == []
