"""
Tests for the seeded check campaigns.
"""

import pytest

from chulaws.core.campaigns import (
    appendix_campaign,
    baer_campaign,
    chuK_campaign,
    cogenerator_campaign,
    factorization_campaign,
    fr_identity_campaign,
    rf_sigma_campaign,
    selfinjective_campaign,
    self_dual_campaign,
    square_campaign,
    tensor_table_campaign,
    topo_closure_campaign,
    two_adjoint_campaign,
)
from chulaws.core.canned import load_situation
from chulaws.core.linalg import FieldSpec
from chulaws.core.modules import RingSpec


@pytest.mark.parametrize("p", [2, 3, 5])
def test_fr_identity_campaign(p):
    """FR = Id and RFR = R on seeded objects."""
    outcome = fr_identity_campaign(FieldSpec(p), 10, 3, seed=0)
    assert outcome.passed, outcome.problems
    assert outcome.details == {"p": p, "samples": 10, "max_dim": 3}
    assert outcome.counterexample is None


def test_rf_sigma_campaign():
    """RF = sigma on seeded presented spaces."""
    outcome = rf_sigma_campaign(FieldSpec(3), 10, seed=4)
    assert outcome.passed, outcome.problems
    assert outcome.details["max_factors"] == 3


def test_factorization_campaign_small_corpus():
    """The exact search agrees with the oracle on a small corpus."""
    outcome = factorization_campaign(
        FieldSpec(2), 3, seed=0, corpus_factors=2
    )
    assert outcome.passed, outcome.problems
    assert outcome.details["corpus"] == 8
    assert outcome.details["seeded"] == 3


@pytest.mark.slow
@pytest.mark.parametrize("p", [2, 3])
def test_factorization_campaign_default_corpus(p):
    """The full default corpus (five factors over F_2, three otherwise)."""
    outcome = factorization_campaign(FieldSpec(p), 20, seed=0)
    assert outcome.passed, outcome.problems


def test_topo_closure_campaign():
    """Every automorphism of small spaces survives products and pullbacks."""
    outcome = topo_closure_campaign(FieldSpec(2), seed=0, max_total=2)
    assert outcome.passed, outcome.problems
    details = outcome.details
    assert details["spaces"] == 13
    assert (details["pairs"], details["products"]) == (29, 49)
    assert details["pullbacks"] == 40


@pytest.mark.slow
def test_topo_closure_campaign_default():
    """The default bound of four ambient dimensions."""
    assert topo_closure_campaign(FieldSpec(3), seed=1).passed


@pytest.mark.parametrize("n", [1, 2, 3])
def test_selfinjective_campaign(n):
    """Every seeded map into K extends."""
    outcome = selfinjective_campaign(RingSpec(2, n), 20, 4, seed=0)
    assert outcome.passed, outcome.problems
    assert outcome.details["no_extension"] == 0


@pytest.mark.parametrize("n", [1, 2, 3])
def test_cogenerator_campaign(n):
    """Every seeded module embeds into a power of K."""
    outcome = cogenerator_campaign(RingSpec(3, n), 20, 4, seed=0)
    assert outcome.passed, outcome.problems
    assert outcome.details["max_r"] <= 4


def test_self_dual_campaign():
    """K and its cyclic quotients are self-dual."""
    outcome = self_dual_campaign(RingSpec(2, 3))
    assert outcome.passed, outcome.problems
    assert outcome.details == {"p": 2, "n": 3}


def test_tensor_table_campaign():
    """The tensor table is min(i, j)."""
    outcome = tensor_table_campaign(RingSpec(2, 3))
    assert outcome.passed, outcome.problems
    assert outcome.details["table"] == [[1, 1, 1], [1, 2, 2], [1, 2, 3]]


def test_baer_campaign():
    """Three fixed modules plus the seeded ones."""
    outcome = baer_campaign(RingSpec(3, 2), 5, 3, seed=0)
    assert outcome.passed, outcome.problems
    assert outcome.details["modules"] == 8


def test_chuK_campaign():
    """End of the regular pairing is K; the shift has a radical."""
    outcome = chuK_campaign(RingSpec(2, 3))
    assert outcome.passed, outcome.problems
    assert outcome.details == {
        "p": 2,
        "n": 3,
        "dim_end_regular": 3,
        "shifted_left_kernel": 1,
    }
    assert "shifted_left_kernel" not in chuK_campaign(
        RingSpec(2, 1)
    ).details


@pytest.mark.parametrize("name", ["trivial", "chain", "parallel"])
def test_appendix_campaign(name):
    """Validation, theorem and corollaries in that order."""
    outcomes = appendix_campaign(load_situation(name))
    assert [o.name for o in outcomes] == [
        "appendix_instance",
        "appendix_theorem",
        "appendix_corollaries",
    ]
    assert all(o.passed for o in outcomes)


def test_two_adjoint_campaign():
    """ff(L) iff ff(R) on every bundled triple."""
    outcome = two_adjoint_campaign()
    assert outcome.passed, outcome.problems
    assert outcome.details["chain"]["ff_L"] is False
    assert outcome.details["identity_parallel"]["ff_R"] is True


def test_square_campaign():
    """Identity, half-invertible, invertible and non-commuting squares."""
    outcome = square_campaign()
    assert outcome.passed, outcome.problems
    assert outcome.details == {
        "identity": True,
        "half_only": True,
        "full": True,
        "rejects_non_commuting": True,
    }


@pytest.mark.slow
@pytest.mark.parametrize("p", [2, 3, 5])
def test_main_theorem_at_full_scale(p):
    """FR = Id and RF = sigma on 100 seeded inputs each."""
    field = FieldSpec(p)
    outcome = fr_identity_campaign(field, 100, 4, seed=0)
    assert outcome.passed, outcome.problems
    outcome = rf_sigma_campaign(field, 100, seed=0)
    assert outcome.passed, outcome.problems


@pytest.mark.slow
@pytest.mark.parametrize("p", [2, 3])
@pytest.mark.parametrize("n", [2, 3, 4])
def test_selfinjective_at_full_scale(p, n):
    """100 seeded injections of modules up to dimension 6 all extend."""
    outcome = selfinjective_campaign(RingSpec(p, n), 100, 6, seed=0)
    assert outcome.passed, outcome.problems
    assert outcome.details["no_extension"] == 0


@pytest.mark.slow
@pytest.mark.parametrize("p", [2, 3])
@pytest.mark.parametrize("n", [2, 3, 4])
def test_cogenerator_at_full_scale(p, n):
    """100 seeded modules up to dimension 6 embed into a power of K."""
    outcome = cogenerator_campaign(RingSpec(p, n), 100, 6, seed=0)
    assert outcome.passed, outcome.problems


@pytest.mark.slow
@pytest.mark.parametrize("p", [2, 3, 5])
def test_self_duality_and_tensor_table_at_full_scale(p):
    """K is self-dual for n <= 6; the tensor table holds for n <= 4."""
    for n in range(1, 7):
        outcome = self_dual_campaign(RingSpec(p, n))
        assert outcome.passed, (n, outcome.problems)
    for n in range(1, 5):
        outcome = tensor_table_campaign(RingSpec(p, n))
        assert outcome.passed, (n, outcome.problems)
