"""
The functors F: presented spaces -> chu and R: chu -> presented spaces.

F(V) = (|V|, Hom(V, K)) with evaluation as pairing, and R(A, X) is A
embedded in K^X by a -> a^T P. The checks below confirm FR = Id on
separated and extensional objects (through the factor-and-extend
machinery of the topology module) and RF = sigma.
"""

from typing import List

from .base import CheckOutcome
from .chu import (
    ChuMorphism,
    ChuObject,
    hom_space,
    internal_hom,
    sep_ext_flags,
    unit_object,
)
from .linalg import FieldSpec, Matrix, Subspace
from .topo import (
    DEFAULT_CERTIFIED_LIMIT,
    PresentedSpace,
    extend_functional,
    hom_functionals,
    sigma,
)
from .witness import confirm_iso


class NotSeparated(ValueError):
    """Raised when R is applied to a non-separated object."""


def functor_F(space: PresentedSpace) -> ChuObject:
    """(d, d, I_d) in the basis of V and its dual basis."""
    return ChuObject(
        space.field,
        space.dim,
        space.dim,
        Matrix.identity(space.field, space.dim),
    )


def functor_R(obj: ChuObject) -> PresentedSpace:
    """
    A inside K^X as the row space of P.

    Raises:
        NotSeparated: when a -> a^T P is not injective
    """
    if not sep_ext_flags(obj).separated:
        raise NotSeparated(
            f"rank {obj.pairing.rank} < dim A = {obj.dim_a}; "
            "R needs a separated object"
        )
    return PresentedSpace(
        obj.field,
        (1,) * obj.dim_x,
        Subspace.span(obj.field, obj.dim_x, obj.pairing),
    )


def end_of_K_check(field_spec: FieldSpec) -> CheckOutcome:
    """End(K) is one-dimensional and I -> K -o K is an isomorphism."""
    unit = unit_object(field_spec)
    endo = hom_space(unit, unit)
    problems: List[str] = []
    if endo.dim != 1:
        problems.append(f"End(K) has dimension {endo.dim}, expected 1")
    hom_obj = internal_hom(unit, unit)
    if endo.dim == 1:
        scalar = Matrix.identity(field_spec, 1)
        coords = endo.coordinates(scalar, scalar)
        canonical = ChuMorphism(unit, hom_obj, coords.T, scalar)
        problems.extend(confirm_iso(canonical))
    return CheckOutcome(
        name="end_of_K",
        passed=not problems,
        details={"p": field_spec.p, "dim": endo.dim},
        problems=problems,
    )


def check_FR_identity(
    obj: ChuObject, certified_limit: int = DEFAULT_CERTIFIED_LIMIT
) -> CheckOutcome:
    """
    Every functional on R(o) is a theta-combination of coordinates.

    For each dual-basis functional phi on R(o) the extension psi to K^X
    gives theta_x = psi[x] in End(K) = F_p, and sum_x theta_x pi_x must
    equal phi. The map X -> Hom(R(o), K), x -> pi_x, must be bijective.
    """
    problems: List[str] = []
    flags = sep_ext_flags(obj)
    if not (flags.separated and flags.extensional):
        return CheckOutcome(
            name="FR_identity",
            passed=False,
            details={"dimA": obj.dim_a, "dimX": obj.dim_x},
            problems=["object is not separated and extensional"],
        )
    gate = end_of_K_check(obj.field)
    if not gate.passed:
        problems.extend(gate.problems)
    space = functor_R(obj)
    coordinate_map = space.basis
    thetas: List[List[int]] = []
    for index, phi in enumerate(hom_functionals(space)):
        psi = extend_functional(space, phi, certified_limit)
        combined = (coordinate_map @ psi.T).T
        if combined != phi.coeffs:
            problems.append(
                f"theta-combination for functional {index} does not "
                "reproduce it"
            )
        thetas.append(list(psi.entries()))
    if not coordinate_map.is_invertible():
        problems.append(
            "X -> Hom(R(o), K) is not a bijection "
            f"({coordinate_map.rows}x{coordinate_map.cols}, rank "
            f"{coordinate_map.rank})"
        )
    return CheckOutcome(
        name="FR_identity",
        passed=not problems,
        details={
            "dimA": obj.dim_a,
            "dimX": obj.dim_x,
            "dim_hom": space.dim,
            "thetas": thetas,
        },
        problems=problems,
    )


def check_RF_equals_sigma(space: PresentedSpace) -> CheckOutcome:
    """R(F(V)) and sigma(V) agree as canonical presented spaces."""
    lhs = functor_R(functor_F(space))
    rhs = sigma(space)
    problems = [] if lhs == rhs else ["R(F(V)) differs from sigma(V)"]
    return CheckOutcome(
        name="RF_sigma",
        passed=not problems,
        details={"dim": space.dim, "factors": list(space.factors)},
        problems=problems,
    )


def check_RFR(obj: ChuObject) -> CheckOutcome:
    """R o F o R = R on a separated and extensional object."""
    first = functor_R(obj)
    again = functor_R(functor_F(first))
    problems = [] if first == again else ["R(F(R(o))) differs from R(o)"]
    return CheckOutcome(
        name="RFR",
        passed=not problems,
        details={"dimA": obj.dim_a, "dimX": obj.dim_x},
        problems=problems,
    )
