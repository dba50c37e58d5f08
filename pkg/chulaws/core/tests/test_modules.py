"""
Tests for modules over truncated polynomial rings.
"""

import hypothesis
import hypothesis.strategies as strat
import pytest

from chulaws.core.linalg import Matrix, NotPrime, Subspace
from chulaws.core.modules import (
    EXTENSIONAL,
    SEPARATED,
    BilinearityViolated,
    ChuKObject,
    EquivarianceViolated,
    InvariantViolation,
    KLinearMap,
    ModuleError,
    NilModule,
    NilpotencyViolated,
    NoExtension,
    RingSpec,
    baer_adjunction_check,
    chuK_dual,
    chuK_flags,
    chuK_hom_basis,
    chuK_reduce,
    cogenerator_embed,
    cyclic,
    direct_sum,
    dual_module,
    embed_cyclic,
    extend_hom,
    find_isomorphism,
    free_module,
    hom_K_basis,
    jordan_type,
    make_module,
    random_hom,
    random_module,
    random_submodule,
    regular_pairing,
    self_dual_iso,
    submodule,
    tensor_K,
    zero_module,
)
from chulaws.core.sampling import random_invertible, trial_rng

seeds = strat.integers(0, 2**16)
rings = strat.builds(
    RingSpec, strat.sampled_from([2, 3]), strat.integers(1, 4)
)


def test_ring_validation():
    """The modulus must be prime and n positive."""
    with pytest.raises(NotPrime):
        RingSpec(4, 2)
    with pytest.raises(ModuleError):
        RingSpec(2, 0)


def test_non_nilpotent_action_is_rejected():
    """x must act nilpotently of degree at most n."""
    ring = RingSpec(2, 2)
    with pytest.raises(NilpotencyViolated):
        make_module(ring, [[1]])
    with pytest.raises(NilpotencyViolated):
        direct_sum(RingSpec(2, 1), [cyclic(ring, 2)])


def test_cyclic_order_bounds():
    """Cyclic modules have order 1..n."""
    ring = RingSpec(3, 2)
    with pytest.raises(ModuleError):
        cyclic(ring, 3)
    with pytest.raises(ModuleError):
        cyclic(ring, 0)


def test_non_equivariant_map_is_rejected():
    """A projection onto the generator does not commute with x."""
    ring = RingSpec(2, 2)
    module = cyclic(ring, 2)
    projection = Matrix.from_rows(ring.field, [[1, 0], [0, 0]])
    with pytest.raises(EquivarianceViolated):
        KLinearMap(module, module, projection)


def test_non_invariant_subspace():
    """The span of the generator alone is not a submodule."""
    ring = RingSpec(2, 2)
    module = cyclic(ring, 2)
    line = Subspace.span(
        ring.field, 2, Matrix.from_rows(ring.field, [[1, 0]])
    )
    with pytest.raises(InvariantViolation):
        submodule(module, line)


@hypothesis.given(rings)
def test_K_is_self_dual(ring):
    """K -> Hom_k(K, k) is an isomorphism of K-modules."""
    iso = self_dual_iso(ring)
    assert iso.map.is_invertible()
    assert iso.target == dual_module(free_module(ring))


def test_jordan_type_of_cyclic_modules():
    """Ranks of powers of x read off the cyclic decomposition."""
    ring = RingSpec(2, 3)
    assert jordan_type(cyclic(ring, 2)) == (1, 0, 0)
    both = direct_sum(ring, [cyclic(ring, 3), cyclic(ring, 1)])
    assert jordan_type(both) == (2, 1, 0)


@hypothesis.given(seeds, rings)
def test_find_isomorphism_after_change_of_basis(seed, ring):
    """A conjugated module is found isomorphic to the original."""
    rng = trial_rng(seed, ring.p, 0, 0, ring.n)
    module = random_module(rng, ring, 3)
    change = random_invertible(rng, ring.field, module.dim)
    other = NilModule(
        ring, module.dim, change @ module.action @ change.inverse()
    )
    iso = find_isomorphism(module, other)
    assert iso is not None
    assert iso.map.is_invertible()


def test_different_jordan_types_are_not_isomorphic():
    """K/(x^2) differs from k + k."""
    ring = RingSpec(2, 2)
    split = direct_sum(ring, [cyclic(ring, 1), cyclic(ring, 1)])
    assert find_isomorphism(cyclic(ring, 2), split) is None


@hypothesis.given(seeds, rings)
def test_homs_into_K_extend(seed, ring):
    """K is self-injective: A -> K extends along A -> B."""
    rng = trial_rng(seed, ring.p, 1, 0, ring.n)
    big = random_module(rng, ring, 4)
    small, inclusion = random_submodule(rng, big)
    phi = random_hom(rng, small, free_module(ring))
    psi = extend_hom(inclusion, phi)
    assert psi.map @ inclusion.map == phi.map


def test_socle_identity_does_not_extend_into_k():
    """k is not injective over K = F_2[x]/(x^2)."""
    ring = RingSpec(2, 2)
    simple = cyclic(ring, 1)
    socle = embed_cyclic(ring, 1)
    identity = KLinearMap(simple, simple, Matrix.identity(ring.field, 1))
    with pytest.raises(NoExtension):
        extend_hom(socle, identity)


def test_extension_needs_an_injection():
    """The zero map is not an inclusion."""
    ring = RingSpec(2, 2)
    simple = cyclic(ring, 1)
    zero = KLinearMap(
        simple, free_module(ring), Matrix.zeros(ring.field, 2, 1)
    )
    identity = KLinearMap(simple, simple, Matrix.identity(ring.field, 1))
    with pytest.raises(ModuleError):
        extend_hom(zero, identity)


@hypothesis.given(seeds, rings)
def test_cogenerator_embedding(seed, ring):
    """Every module embeds in K^r, r the number of cyclic summands."""
    rng = trial_rng(seed, ring.p, 2, 0, ring.n)
    module = random_module(rng, ring, 5)
    embedding = cogenerator_embed(module)
    assert embedding.map.is_injective()
    assert embedding.map.target.dim == ring.n * embedding.count
    assert embedding.count == len(embedding.orders)
    assert sum(embedding.orders) == module.dim
    assert embedding.count == module.dim - module.action.rank


def test_cogenerator_embedding_orders():
    """Orders are split off largest first."""
    ring = RingSpec(2, 3)
    module = direct_sum(ring, [cyclic(ring, 2), cyclic(ring, 3)])
    embedding = cogenerator_embed(module)
    assert embedding.orders == (3, 2)
    assert cogenerator_embed(zero_module(ring)).count == 0


def test_cogenerator_embeds_short_cyclic_modules():
    """Cyclic summands shorter than n land in the top powers of x."""
    ring = RingSpec(2, 3)
    embedding = cogenerator_embed(cyclic(ring, 2))
    assert (embedding.count, embedding.orders) == (1, (2,))
    assert embedding.map.map == embed_cyclic(ring, 2).map
    small = RingSpec(2, 2)
    mixed = direct_sum(small, [cyclic(small, 1), cyclic(small, 2)])
    embedding = cogenerator_embed(mixed)
    assert (embedding.count, embedding.orders) == (2, (2, 1))
    assert embedding.map.is_injective()
    assert embedding.map.target.dim == 4


def test_tensor_of_cyclic_modules():
    """K/(x^i) (x)_K K/(x^j) = K/(x^min(i, j))."""
    ring = RingSpec(3, 3)
    for i in range(1, 4):
        for j in range(1, 4):
            product = tensor_K(cyclic(ring, i), cyclic(ring, j))
            assert product.dim == min(i, j)
            assert jordan_type(product) == jordan_type(
                cyclic(ring, min(i, j))
            )


@hypothesis.given(seeds, rings)
def test_dual_and_tensor_with_K(seed, ring):
    """M* has the Jordan type of M and K (x)_K M = M."""
    module = random_module(trial_rng(seed, ring.p, 3, 0, ring.n), ring, 4)
    assert jordan_type(dual_module(module)) == jordan_type(module)
    assert tensor_K(free_module(ring), module).dim == module.dim


@hypothesis.given(seeds, rings)
def test_baer_adjunction(seed, ring):
    """Hom_K(B, K*) = Hom_k(K (x)_K B, k) on random modules."""
    module = random_module(trial_rng(seed, ring.p, 4, 0, ring.n), ring, 4)
    report = baer_adjunction_check(module)
    assert report.passed, report.problems
    assert report.dim_hom_K == report.dim_tensor_dual == module.dim


@hypothesis.given(rings)
def test_regular_pairing(ring):
    """K x K -> K is separated and extensional with End = K."""
    regular = regular_pairing(ring)
    assert chuK_flags(regular) == (True, True)
    assert chuK_hom_basis(regular, regular).dim == ring.n
    assert chuK_dual(regular) == regular


def test_shifted_pairing_has_kernels():
    """<a, b> = x a b kills the socle on both sides."""
    ring = RingSpec(2, 3)
    shifted = regular_pairing(ring, shift=1)
    assert chuK_flags(shifted) == (False, False)
    reduced, projection = chuK_reduce(shifted, SEPARATED)
    assert reduced.left.dim == 2
    assert projection.shape == (2, 3)
    assert chuK_flags(reduced)[0]
    reduced, _ = chuK_reduce(shifted, EXTENSIONAL)
    assert reduced.right.dim == 2
    assert chuK_flags(reduced)[1]


def test_pairing_component_count():
    """A pairing over K needs one component per power of x."""
    ring = RingSpec(2, 2)
    free = free_module(ring)
    with pytest.raises(BilinearityViolated):
        ChuKObject(free, free, (Matrix.identity(ring.field, 2),))


def test_module_json():
    """Modules serialize with their row-major action."""
    ring = RingSpec(2, 2)
    assert cyclic(ring, 2).to_json() == {
        "p": 2,
        "n": 2,
        "dim": 2,
        "X": [0, 0, 1, 0],
    }
    assert NilModule.from_json(cyclic(ring, 2).to_json()) == cyclic(ring, 2)


def test_hom_between_cyclic_modules():
    """Hom_K(K/(x^i), K/(x^j)) has dimension min(i, j)."""
    ring = RingSpec(2, 4)
    for i in range(1, 5):
        for j in range(1, 5):
            basis = hom_K_basis(cyclic(ring, i), cyclic(ring, j))
            assert basis.dim == min(i, j)
    with pytest.raises(ModuleError):
        hom_K_basis(cyclic(ring, 1), cyclic(RingSpec(2, 2), 1))


def test_unbalanced_pairing_is_rejected():
    """The identity pairing on K is not compatible with x."""
    ring = RingSpec(2, 2)
    free = free_module(ring)
    zero = Matrix.zeros(ring.field, 2, 2)
    with pytest.raises(BilinearityViolated, match="degree 0"):
        ChuKObject(free, free, (Matrix.identity(ring.field, 2), zero))
