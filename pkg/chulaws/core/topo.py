"""
Presented spaces: subspaces of finite products of discrete spaces.

A ``PresentedSpace`` is a subspace V of T_0 x ... x T_{m-1} where each T_i
is F_p^{d_i} with the discrete topology. Over a discrete field every
Hausdorff linear topology on a finite-dimensional space is discrete, so
every subspace is closed, every linear map is continuous and the weak
and strong retopologizations both act as the identity on objects. The
interesting content that survives is combinatorial: which finite set of
factors a functional actually depends on.
"""

import itertools
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .linalg import (
    DimensionMismatch,
    FieldMismatch,
    FieldSpec,
    Matrix,
    Subspace,
    block_diag,
    iter_vectors,
    kernel,
    pullback_pair,
    solve,
    vstack,
)

DEFAULT_CERTIFIED_LIMIT = 15


class TopologyError(ValueError):
    """Base class for presented-space failures."""


class TooManyFactors(TopologyError):
    """Raised by the exhaustive oracle above its factor limit."""


@dataclass(frozen=True)
class PresentedSpace:
    """
    A subspace of a finite product of discrete spaces.

    Attributes:
        field: The prime field
        factors: Dimensions of the factors, in order
        subspace: Canonical subspace of the concatenated ambient
    """

    field: FieldSpec
    factors: Tuple[int, ...]
    subspace: Subspace

    def __post_init__(self) -> None:
        """Check the subspace lives in the product of the factors."""
        object.__setattr__(
            self, "factors", tuple(int(d) for d in self.factors)
        )
        if any(d < 0 for d in self.factors):
            raise TopologyError("factor dimensions must be nonnegative")
        if self.subspace.ambient_dim != sum(self.factors):
            raise DimensionMismatch(
                f"subspace of F^{self.subspace.ambient_dim} in a product "
                f"of total dimension {sum(self.factors)}"
            )
        if self.subspace.field != self.field:
            raise FieldMismatch("subspace over another field")

    @property
    def ambient_dim(self) -> int:
        """Total dimension of the product."""
        return sum(self.factors)

    @property
    def dim(self) -> int:
        """Dimension of the subspace."""
        return self.subspace.dim

    @property
    def basis(self) -> Matrix:
        """Intrinsic basis rows (rref, ambient coordinates)."""
        return self.subspace.basis

    def factor_columns(self, indices: Sequence[int]) -> List[int]:
        """Ambient columns belonging to the given factors, in order."""
        offsets = np.concatenate(([0], np.cumsum(self.factors)))
        columns: List[int] = []
        for index in indices:
            columns.extend(
                range(int(offsets[index]), int(offsets[index + 1]))
            )
        return columns

    def to_json(self) -> Dict[str, Any]:
        """Return ``{"p", "factors", "basis"}``."""
        return {
            "p": self.field.p,
            "factors": list(self.factors),
            "basis": self.basis.to_lists(),
        }

    @classmethod
    def from_json(cls, payload: Dict[str, Any]) -> "PresentedSpace":
        """Inverse of ``to_json``."""
        field = FieldSpec(int(payload["p"]))
        return make_presented(field, payload["factors"], payload["basis"])


@dataclass(frozen=True)
class FunctionalP:
    """
    A functional on a presented space, in the space's intrinsic basis.

    ``coeffs`` is a 1 x dim row; the value on basis row k is coeffs[k].
    """

    space: PresentedSpace
    coeffs: Matrix

    def __post_init__(self) -> None:
        """Check the coefficient row fits the space."""
        if self.coeffs.shape != (1, self.space.dim):
            raise DimensionMismatch(
                f"functional needs 1x{self.space.dim} coefficients, got "
                f"{self.coeffs.rows}x{self.coeffs.cols}"
            )

    def evaluate(self, vector: Matrix) -> int:
        """Value on an ambient row vector that lies in the space."""
        coords = self.space.subspace.coordinates(vector)
        return (coords @ self.coeffs.T).entry(0, 0)

    def is_zero(self) -> bool:
        """True for the zero functional."""
        return self.coeffs.is_zero()


@dataclass(frozen=True)
class FactorizationResult:
    """
    phi = phi0 o pi_J on the space.

    Attributes:
        J: Sorted factor indices
        t0: The image pi_J(V) inside the J-restricted ambient
        phi0: 1 x dim(t0) row in t0's basis
        certified: False when found by the greedy fallback
    """

    J: Tuple[int, ...]
    t0: Subspace
    phi0: Matrix
    certified: bool = True


@dataclass(frozen=True)
class MorphismP:
    """
    A linear map between presented spaces in intrinsic bases.

    ``map`` is target.dim x source.dim. In the discrete model every
    linear map is continuous.
    """

    source: PresentedSpace
    target: PresentedSpace
    map: Matrix

    def __post_init__(self) -> None:
        """Check the matrix shape."""
        if self.map.shape != (self.target.dim, self.source.dim):
            raise DimensionMismatch(
                f"map is {self.map.rows}x{self.map.cols}, expected "
                f"{self.target.dim}x{self.source.dim}"
            )


@dataclass(frozen=True)
class PullbackResult:
    """The pullback W' of f: W -> V along g: V' -> V."""

    space: PresentedSpace
    to_source: MorphismP
    to_other: MorphismP
    weak_iso: bool


def make_presented(
    field: FieldSpec,
    factors: Sequence[int],
    generators: Sequence[Sequence[int]],
) -> PresentedSpace:
    """
    Span of *generators* inside the product of *factors*.

    Raises:
        DimensionMismatch: when a generator does not have length sum(d_i)
    """
    total = sum(int(d) for d in factors)
    for row in generators:
        if len(row) != total:
            raise DimensionMismatch(
                f"generator of length {len(row)} in a product of "
                f"dimension {total}"
            )
    matrix = Matrix.from_rows(field, list(generators), cols=total)
    return PresentedSpace(
        field, tuple(factors), Subspace.span(field, total, matrix)
    )


def full_space(field: FieldSpec, factors: Sequence[int]) -> PresentedSpace:
    """The whole product."""
    total = sum(factors)
    return PresentedSpace(field, tuple(factors), Subspace.full(field, total))


def product(spaces: Sequence[PresentedSpace]) -> PresentedSpace:
    """Concatenated factors with the direct sum of subspaces."""
    if not spaces:
        raise TopologyError("product of an empty list needs a field")
    field = spaces[0].field
    for space in spaces:
        if space.field != field:
            raise FieldMismatch("product over mixed fields")
    factors = tuple(d for space in spaces for d in space.factors)
    basis = block_diag([space.basis for space in spaces], field)
    total = sum(factors)
    return PresentedSpace(
        field, factors, Subspace.span(field, total, basis)
    )


def product_morphism(morphisms: Sequence[MorphismP]) -> MorphismP:
    """Componentwise product of morphisms."""
    field = morphisms[0].map.field
    return MorphismP(
        product([m.source for m in morphisms]),
        product([m.target for m in morphisms]),
        block_diag([m.map for m in morphisms], field),
    )


def identity_morphism(space: PresentedSpace) -> MorphismP:
    """The identity map."""
    return MorphismP(space, space, Matrix.identity(space.field, space.dim))


def morphism_from_ambient(
    source: PresentedSpace, target: PresentedSpace, ambient: Matrix
) -> MorphismP:
    """
    Restrict an ambient matrix (target D x source D) to the subspaces.

    Raises:
        NotInSubspace: when the image leaves the target subspace
    """
    images = (ambient @ source.basis.T).T
    coords = target.subspace.coordinates(images)
    return MorphismP(source, target, coords.T)


def _restricted_basis(space: PresentedSpace, indices: Sequence[int]):
    return space.basis.select_columns(space.factor_columns(indices))


def _is_admissible(
    space: PresentedSpace, phi: FunctionalP, indices: Sequence[int]
) -> bool:
    """phi vanishes on the members whose J-coordinates are all zero."""
    hidden = kernel(_restricted_basis(space, indices).T)
    if hidden.dim == 0:
        return True
    return (hidden.basis @ phi.coeffs.T).is_zero()


def _check_functional(space: PresentedSpace, phi: FunctionalP) -> None:
    if phi.space != space:
        raise TopologyError("functional is defined on another space")


def _induced(
    space: PresentedSpace, phi: FunctionalP, indices: Tuple[int, ...]
) -> Tuple[Subspace, Matrix]:
    """T0 = pi_J(V) and phi0 in T0's basis."""
    restricted = _restricted_basis(space, indices)
    t0 = Subspace.span(space.field, restricted.cols, restricted)
    lifts = solve(restricted.T, t0.basis.T)
    phi0 = phi.coeffs @ lifts
    return t0, phi0


def factor_functional(
    space: PresentedSpace,
    phi: FunctionalP,
    certified_limit: int = DEFAULT_CERTIFIED_LIMIT,
) -> FactorizationResult:
    """
    Find a minimum finite J with phi = phi0 o pi_J.

    Subsets are scanned by cardinality, then lexicographically, up to
    *certified_limit* factors. Above the limit indices are removed
    greedily from the full set and the result is marked uncertified.
    """
    _check_functional(space, phi)
    count = len(space.factors)
    chosen: Optional[Tuple[int, ...]] = None
    certified = count <= certified_limit
    if certified:
        for size in range(count + 1):
            for subset in itertools.combinations(range(count), size):
                if _is_admissible(space, phi, subset):
                    chosen = subset
                    break
            if chosen is not None:
                break
    else:
        current = list(range(count))
        for index in range(count):
            trial = [i for i in current if i != index]
            if _is_admissible(space, phi, trial):
                current = trial
        chosen = tuple(current)
    assert chosen is not None
    t0, phi0 = _induced(space, phi, chosen)
    result = FactorizationResult(chosen, t0, phi0, certified)
    if not factorization_holds(space, phi, result):
        raise TopologyError(f"phi0 o pi_J != phi for J = {chosen}")
    return result


def factorization_holds(
    space: PresentedSpace, phi: FunctionalP, result: FactorizationResult
) -> bool:
    """Check phi0 o pi_J = phi on every basis vector of the space."""
    restricted = _restricted_basis(space, result.J)
    values = result.t0.coordinates(restricted) @ result.phi0.T
    return values == phi.coeffs.T


def minimal_J_oracle(
    space: PresentedSpace,
    phi: FunctionalP,
    limit: int = DEFAULT_CERTIFIED_LIMIT,
) -> Tuple[int, ...]:
    """
    Brute-force minimal J by enumerating every member of the space.

    Raises:
        TooManyFactors: above *limit* factors
    """
    _check_functional(space, phi)
    count = len(space.factors)
    if count > limit:
        raise TooManyFactors(f"{count} factors exceeds the limit {limit}")
    field = space.field
    members = []
    for coords in iter_vectors(field, space.dim):
        row = Matrix.row(field, coords)
        vector = (row @ space.basis).entries()
        members.append((vector, (row @ phi.coeffs.T).entry(0, 0)))
    for size in range(count + 1):
        for subset in itertools.combinations(range(count), size):
            columns = space.factor_columns(subset)
            if all(
                value == 0
                for vector, value in members
                if all(vector[c] == 0 for c in columns)
            ):
                return subset
    return tuple(range(count))


def extend_functional(
    space: PresentedSpace,
    phi: FunctionalP,
    certified_limit: int = DEFAULT_CERTIFIED_LIMIT,
) -> Matrix:
    """
    Extend phi to a functional on the whole product (1 x D row).

    phi0 on T0 is completed by placing its values on T0's pivot
    coordinates and zero elsewhere; the J-block is then embedded with
    zeros on the other factors.
    """
    result = factor_functional(space, phi, certified_limit)
    columns = space.factor_columns(result.J)
    values = np.zeros(space.ambient_dim, dtype=np.int64)
    for position, pivot in enumerate(result.t0.pivots):
        values[columns[pivot]] = result.phi0.entry(0, position)
    psi = Matrix(space.field, values.reshape(1, space.ambient_dim))
    if restrict_functional(space, psi) != phi:
        raise TopologyError("extension does not restrict to phi")
    return psi


def restrict_functional(space: PresentedSpace, ambient: Matrix) -> FunctionalP:
    """Restriction of an ambient 1 x D functional to the subspace."""
    if ambient.shape != (1, space.ambient_dim):
        raise DimensionMismatch(
            f"ambient functional must be 1x{space.ambient_dim}"
        )
    return FunctionalP(space, (space.basis @ ambient.T).T)


def hom_functionals(space: PresentedSpace) -> List[FunctionalP]:
    """The dual basis: every linear functional is continuous here."""
    identity = Matrix.identity(space.field, space.dim)
    return [
        FunctionalP(space, identity.select_rows([k]))
        for k in range(space.dim)
    ]


def is_weak_iso(morphism: MorphismP) -> bool:
    """Bijective, and the induced map on functionals is bijective."""
    forward = morphism.map.is_invertible()
    on_functionals = morphism.map.T.is_invertible()
    return forward and on_functionals


def pullback_weak_iso(f: MorphismP, g: MorphismP) -> PullbackResult:
    """
    Pull f: W -> V back along g: V' -> V.

    W' = {(w, v') : f w = g v'} is presented inside W x V'. The flag
    records whether the pulled-back map W' -> W is a weak isomorphism,
    which holds whenever g is one.
    """
    if f.target != g.target:
        raise TopologyError("pullback needs a shared target")
    field = f.map.field
    w_space, other = f.source, g.source
    pairs = pullback_pair(f.map, g.map)
    w_coords = pairs.basis.select_columns(range(w_space.dim))
    other_coords = pairs.basis.select_columns(
        range(w_space.dim, w_space.dim + other.dim)
    )
    ambient_rows = np.hstack(
        [
            (w_coords @ w_space.basis).data,
            (other_coords @ other.basis).data,
        ]
    )
    factors = w_space.factors + other.factors
    total = sum(factors)
    space = PresentedSpace(
        field,
        factors,
        Subspace.span(
            field,
            total,
            Matrix(field, ambient_rows.reshape(pairs.dim, total)),
        ),
    )
    split = w_space.ambient_dim
    coords_w = w_space.subspace.coordinates(
        space.basis.select_columns(range(split))
    )
    coords_other = other.subspace.coordinates(
        space.basis.select_columns(range(split, total))
    )
    to_source = MorphismP(space, w_space, coords_w.T)
    to_other = MorphismP(space, other, coords_other.T)
    return PullbackResult(space, to_source, to_other, is_weak_iso(to_source))


def sigma(space: PresentedSpace) -> PresentedSpace:
    """
    Retopologize inside K^{Hom(V, K)}.

    Each member maps to its values on the dual basis, which are its
    coordinates, so the image is all of K^dim.
    """
    return PresentedSpace(
        space.field,
        (1,) * space.dim,
        Subspace.full(space.field, space.dim),
    )


def sigma_morphism(space: PresentedSpace) -> MorphismP:
    """The canonical map V -> sigma(V)."""
    return MorphismP(
        space, sigma(space), Matrix.identity(space.field, space.dim)
    )


def all_subspaces(field: FieldSpec, dim: int) -> List[Subspace]:
    """Every subspace of F^dim, smallest first. Meant for dim <= 5."""
    vectors = [
        Matrix.row(field, v) for v in iter_vectors(field, dim) if any(v)
    ]
    found = [Subspace.zero(field, dim)]
    seen = set(found)
    frontier = list(found)
    while frontier:
        grown: List[Subspace] = []
        for sub in frontier:
            for vector in vectors:
                if sub.contains_vector(vector.entries()):
                    continue
                bigger = Subspace.span(
                    field, dim, vstack([sub.basis, vector])
                )
                if bigger not in seen:
                    seen.add(bigger)
                    grown.append(bigger)
        found.extend(grown)
        frontier = grown
    return found


def factor_shapes(total: int) -> List[Tuple[int, ...]]:
    """Ordered ways of writing *total* as a sum of positive factors."""
    if total == 0:
        return [()]
    shapes = []
    for first in range(1, total + 1):
        shapes.extend((first,) + rest for rest in factor_shapes(total - first))
    return shapes


def enumerate_presented(
    field: FieldSpec,
    max_factors: int,
    factor_dim: Optional[int] = 1,
) -> List[PresentedSpace]:
    """
    All presented spaces with at most *max_factors* factors.

    With ``factor_dim`` set every factor has that dimension; with None the
    factor shapes range over all compositions of totals up to
    *max_factors*.
    """
    shapes: List[Tuple[int, ...]] = []
    if factor_dim is None:
        for total in range(max_factors + 1):
            shapes.extend(factor_shapes(total))
    else:
        shapes = [(factor_dim,) * count for count in range(max_factors + 1)]
    return [
        PresentedSpace(field, shape, sub)
        for shape in shapes
        for sub in all_subspaces(field, sum(shape))
    ]
