"""
Tests for presented spaces, functional factorization and pullbacks.
"""

import pytest

from chulaws.core.linalg import (
    DimensionMismatch,
    FieldSpec,
    Matrix,
    NotInSubspace,
    iter_vectors,
)
from chulaws.core.topo import (
    FunctionalP,
    MorphismP,
    TooManyFactors,
    all_subspaces,
    enumerate_presented,
    extend_functional,
    factor_functional,
    factorization_holds,
    full_space,
    hom_functionals,
    identity_morphism,
    is_weak_iso,
    make_presented,
    minimal_J_oracle,
    morphism_from_ambient,
    product,
    product_morphism,
    pullback_weak_iso,
    restrict_functional,
    sigma,
    sigma_morphism,
)

F2 = FieldSpec(2)
F3 = FieldSpec(3)


def _functional(space, coeffs):
    return FunctionalP(space, Matrix.row(space.field, coeffs))


def test_generator_length_is_checked():
    """Generators must live in the product of the factors."""
    with pytest.raises(DimensionMismatch):
        make_presented(F2, [1, 1], [[1, 0, 1]])


def test_functional_shape_is_checked():
    """Coefficients must match the dimension of the space."""
    space = full_space(F2, [1, 1])
    with pytest.raises(DimensionMismatch):
        _functional(space, [1])


def test_coordinate_projection_needs_one_factor():
    """The first coordinate on K x K factors through factor 0."""
    space = full_space(F2, [1, 1])
    result = factor_functional(space, _functional(space, [1, 0]))
    assert result.J == (0,)
    assert result.certified
    assert factorization_holds(space, _functional(space, [1, 0]), result)


def test_sum_of_coordinates_needs_both_factors():
    """x0 + x1 on the full product depends on both factors."""
    space = full_space(F2, [1, 1])
    assert factor_functional(space, _functional(space, [1, 1])).J == (0, 1)


def test_diagonal_is_seen_by_either_factor():
    """On the diagonal any single coordinate determines the member."""
    diagonal = make_presented(F2, [1, 1], [[1, 1]])
    phi = _functional(diagonal, [1])
    assert factor_functional(diagonal, phi).J == (0,)
    assert minimal_J_oracle(diagonal, phi) == (0,)


def test_zero_functional_needs_no_factors():
    """The zero functional factors through the empty product."""
    space = full_space(F3, [1, 2])
    result = factor_functional(space, _functional(space, [0, 0, 0]))
    assert result.J == ()
    assert result.t0.dim == 0


def test_factorization_matches_oracle_exhaustively():
    """Every functional on every small space gets the oracle's J."""
    for space in enumerate_presented(F2, 3):
        for phi in hom_functionals(space):
            result = factor_functional(space, phi)
            assert result.J == minimal_J_oracle(space, phi)
            assert factorization_holds(space, phi, result)


def test_extension_restricts_back():
    """The ambient extension of phi restricts to phi."""
    space = make_presented(F3, [1, 1, 1], [[1, 2, 0], [0, 1, 1]])
    for phi in hom_functionals(space):
        psi = extend_functional(space, phi)
        assert psi.shape == (1, space.ambient_dim)
        assert restrict_functional(space, psi) == phi


def test_oracle_refuses_large_products():
    """The brute-force oracle stops above its factor limit."""
    space = full_space(F2, [1, 1, 1])
    phi = _functional(space, [1, 0, 0])
    with pytest.raises(TooManyFactors):
        minimal_J_oracle(space, phi, limit=2)


def test_greedy_fallback_is_uncertified():
    """Above the certified limit the result is greedy but still valid."""
    space = make_presented(F2, [1, 1, 1], [[1, 1, 0], [0, 0, 1]])
    phi = _functional(space, [1, 0])
    result = factor_functional(space, phi, certified_limit=0)
    assert not result.certified
    assert factorization_holds(space, phi, result)
    assert len(result.J) == 1


def test_sigma_is_idempotent():
    """sigma(sigma(V)) = sigma(V) and V -> sigma(V) is a weak iso."""
    space = make_presented(F3, [2, 1], [[1, 0, 2]])
    once = sigma(space)
    assert once.factors == (1,)
    assert sigma(once) == once
    assert is_weak_iso(sigma_morphism(space))


def test_product_of_spaces_and_morphisms():
    """Products concatenate factors and add dimensions."""
    first = make_presented(F2, [1, 1], [[1, 1]])
    second = full_space(F2, [2])
    both = product([first, second])
    assert both.factors == (1, 1, 2)
    assert both.dim == 3
    morphism = product_morphism(
        [identity_morphism(first), identity_morphism(second)]
    )
    assert morphism.source == both
    assert morphism.map == Matrix.identity(F2, 3)


def test_pullback_along_an_automorphism_is_weak_iso():
    """Pulling back a weak iso V' -> V along f = id keeps W' = V'."""
    target = full_space(F3, [2])
    f = identity_morphism(target)
    g = MorphismP(target, target, Matrix.from_rows(F3, [[1, 1], [0, 2]]))
    result = pullback_weak_iso(f, g)
    assert result.space.dim == 2
    assert result.weak_iso
    assert is_weak_iso(result.to_other)


def test_pullback_of_the_identity_along_any_map():
    """Every f: W -> F_2 pulls the identity back to a weak iso W' -> W."""
    line = full_space(F2, [1])
    g = identity_morphism(line)
    for space in enumerate_presented(F2, 2, factor_dim=None):
        for entries in iter_vectors(F2, space.dim):
            f = MorphismP(
                space, line, Matrix.from_rows(F2, [entries], cols=space.dim)
            )
            result = pullback_weak_iso(f, g)
            assert result.space.dim == space.dim
            assert result.weak_iso


def test_pullback_along_a_non_iso_is_flagged():
    """A proper subspace V' -> V pulls back to a map W' -> W that is not."""
    target = full_space(F3, [2])
    other = make_presented(F3, [1], [[1]])
    g = MorphismP(other, target, Matrix.from_rows(F3, [[1], [2]]))
    result = pullback_weak_iso(identity_morphism(target), g)
    assert result.space.dim == 1
    assert not result.weak_iso


def test_enumeration_counts():
    """Subspace and presented-space counts over F_2 and F_3."""
    assert len(all_subspaces(F2, 2)) == 5
    assert len(all_subspaces(F3, 2)) == 6
    assert len(enumerate_presented(F2, 2)) == 8
    assert len(enumerate_presented(F2, 2, factor_dim=None)) == 13


def test_presented_json():
    """Spaces serialize with their factors and canonical basis."""
    space = make_presented(F2, [1, 1], [[1, 1]])
    assert space.to_json() == {"p": 2, "factors": [1, 1], "basis": [[1, 1]]}


def test_morphism_from_ambient():
    """Ambient maps restrict only when the image stays inside."""
    diagonal = make_presented(F2, [1, 1], [[1, 1]])
    whole = full_space(F2, [1, 1])
    ident = Matrix.identity(F2, 2)
    inclusion = morphism_from_ambient(diagonal, whole, ident)
    assert inclusion.map.to_lists() == [[1], [1]]
    with pytest.raises(NotInSubspace):
        morphism_from_ambient(whole, diagonal, ident)


def test_functional_evaluation():
    """Functionals act on ambient vectors through their coordinates."""
    diagonal = make_presented(F3, [1, 1], [[1, 1]])
    phi = FunctionalP(diagonal, Matrix.row(F3, [2]))
    assert phi.evaluate(Matrix.row(F3, [2, 2])) == 1
    with pytest.raises(NotInSubspace):
        phi.evaluate(Matrix.row(F3, [1, 0]))
