"""
Tests for the tensor-hom-adjunction law.
"""

import hypothesis
import hypothesis.strategies as strat

from chulaws.core.base import TrialContext, TrialSpec
from chulaws.core.chu import make_object, unit_object, zero_object
from chulaws.core.law_scripts.tensor_hom_adjunction import (
    TensorHomAdjunctionCheck,
)
from chulaws.core.linalg import FieldSpec
from chulaws.core.sampling import trial_rng


def _checker() -> TensorHomAdjunctionCheck:
    """Checker with catalog defaults only."""
    checker = TensorHomAdjunctionCheck()
    checker.set_options({}, {})
    return checker


@hypothesis.given(
    seed=strat.integers(0, 2**16), p=strat.sampled_from([2, 3, 5])
)
def test_seeded_trials_pass(seed, p):
    """Sampled triples satisfy the law."""
    spec = TrialSpec(p=p, max_dim=3, samples=1, seed=seed)
    context = TrialContext(spec, 0, trial_rng(seed, p, 3, 0))
    assert _checker().run_trial(context) is None


def test_catalog_caps_the_dimension():
    """The catalog default max_dim 3 lowers a larger campaign bound."""
    checker = TensorHomAdjunctionCheck()
    checker.set_options({"max_dim": 3}, {})
    spec = TrialSpec(p=2, max_dim=5, samples=1, seed=0)
    context = TrialContext(spec, 0, trial_rng(0, 2, 3, 0))
    assert checker.trial_max_dim(context) == 3
    checker.set_options({"max_dim": 3}, {}, {"max_dim": 1})
    assert checker.trial_max_dim(context) == 1


def test_unit_and_zero():
    """Hom(1 (x) 1, 0) and Hom(1, 1 -o 1) on explicit objects."""
    field = FieldSpec(2)
    unit, zero = unit_object(field), zero_object(field)
    checker = _checker()
    assert checker.verify({"T": unit, "U": unit, "V": zero}) == []
    assert checker.verify({"T": unit, "U": unit, "V": unit}) == []
    rectangle = make_object(field, 1, 2, [[1, 1]])
    assert checker.verify({"T": rectangle, "U": unit, "V": rectangle}) == []
