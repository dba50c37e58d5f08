"""
Tests for the tensor-unit law.
"""

import hypothesis
import hypothesis.strategies as strat

from chulaws.core.base import TrialContext, TrialSpec
from chulaws.core.chu import make_object, unit_object, zero_object
from chulaws.core.law_scripts.tensor_unit import TensorUnitCheck
from chulaws.core.linalg import FieldSpec
from chulaws.core.sampling import trial_rng


def _checker() -> TensorUnitCheck:
    """Checker with catalog defaults only."""
    checker = TensorUnitCheck()
    checker.set_options({}, {})
    return checker


@hypothesis.given(
    seed=strat.integers(0, 2**16), p=strat.sampled_from([2, 3, 5])
)
def test_seeded_trials_pass(seed, p):
    """Sampled objects satisfy the law."""
    spec = TrialSpec(p=p, max_dim=3, samples=1, seed=seed)
    context = TrialContext(spec, 0, trial_rng(seed, p, 4, 0))
    assert _checker().run_trial(context) is None


def test_edge_objects():
    """1 (x) T = T for the unit, zero and a rank-one pairing."""
    field = FieldSpec(3)
    checker = _checker()
    for obj in (
        zero_object(field),
        unit_object(field),
        make_object(field, 2, 2, [[1, 2], [2, 1]]),
    ):
        assert checker.verify({"T": obj}) == []
