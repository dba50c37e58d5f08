"""
Tests for the functors between presented spaces and pairing objects.
"""

import hypothesis
import hypothesis.strategies as strat
import pytest

from chulaws.core.chu import make_object, sep_ext_flags, unit_object
from chulaws.core.linalg import FieldSpec
from chulaws.core.sampling import random_sep_ext, trial_rng
from chulaws.core.theorem import (
    NotSeparated,
    check_FR_identity,
    check_RF_equals_sigma,
    check_RFR,
    end_of_K_check,
    functor_F,
    functor_R,
)
from chulaws.core.topo import enumerate_presented, make_presented, sigma

F2 = FieldSpec(2)


def test_end_of_K_is_one_dimensional():
    """End(K) = F_p for every small prime."""
    for p in (2, 3, 5, 7):
        outcome = end_of_K_check(FieldSpec(p))
        assert outcome.passed
        assert outcome.details == {"p": p, "dim": 1}


def test_F_gives_an_identity_pairing():
    """F(V) pairs V with its dual basis."""
    space = make_presented(F2, [1, 1, 1], [[1, 1, 0], [0, 1, 1]])
    obj = functor_F(space)
    assert (obj.dim_a, obj.dim_x) == (2, 2)
    flags = sep_ext_flags(obj)
    assert flags.separated and flags.extensional


def test_R_needs_a_separated_object():
    """Repeated rows make R undefined."""
    with pytest.raises(NotSeparated):
        functor_R(make_object(F2, 2, 1, [[1], [1]]))


def test_R_is_the_row_space():
    """R(o) sits in K^X with one factor per point of X."""
    obj = make_object(F2, 1, 2, [[1, 1]])
    space = functor_R(obj)
    assert space.factors == (1, 1)
    assert space.basis.to_lists() == [[1, 1]]


def test_FR_identity_on_the_unit():
    """The unit recovers its only functional with theta = 1."""
    outcome = check_FR_identity(unit_object(F2))
    assert outcome.passed
    assert outcome.details == {
        "dimA": 1,
        "dimX": 1,
        "dim_hom": 1,
        "thetas": [[1]],
    }


def test_FR_identity_rejects_non_extensional_objects():
    """A repeated column is not in the sep+ext subcategory."""
    outcome = check_FR_identity(make_object(F2, 1, 2, [[1, 1]]))
    assert not outcome.passed
    assert outcome.problems == ["object is not separated and extensional"]


@hypothesis.given(
    strat.integers(0, 2**16), strat.sampled_from([2, 3, 5])
)
def test_FR_identity_and_RFR_on_random_objects(seed, p):
    """Both hold on every separated and extensional object."""
    obj = random_sep_ext(trial_rng(seed, p, 0, 0), FieldSpec(p), 3)
    assert check_FR_identity(obj).passed
    assert check_RFR(obj).passed


def test_RF_equals_sigma_on_small_spaces():
    """R(F(V)) = sigma(V) for every space with at most three factors."""
    for space in enumerate_presented(F2, 3, factor_dim=None):
        outcome = check_RF_equals_sigma(space)
        assert outcome.passed, outcome.problems
        assert functor_R(functor_F(space)) == sigma(space)


def test_RF_details():
    """Details carry the dimension and factor shape."""
    space = make_presented(F2, [1, 1], [[1, 1]])
    outcome = check_RF_equals_sigma(space)
    assert outcome.name == "RF_sigma"
    assert outcome.details == {"dim": 1, "factors": [1, 1]}
