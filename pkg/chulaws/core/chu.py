"""
The categories Chu(Vect, k) and chu(Vect, k) over k = F_p.

An object (A, X, P) pairs a-vectors with x-vectors through <a, x> = a^T P x.
A morphism (F, G): (A, X, P) -> (B, Y, Q) has F: A -> B and G: Y -> X and
satisfies the single matrix identity F^T Q = P G. Everything below (hom
objects, tensor, reflections) is derived from that identity.
"""

from dataclasses import dataclass
from typing import Any, Dict, List, Tuple

from .linalg import (
    DimensionMismatch,
    FieldSpec,
    LinalgError,
    Matrix,
    NoSolution,
    NotInSubspace,
    Subspace,
    hstack,
    kernel,
    kron,
    quotient_map,
    section_map,
    solve,
    transpose_permutation,
    unvec,
    vec,
)

SEPARATED = "separated"
EXTENSIONAL = "extensional"


class ChuError(ValueError):
    """Base class for Chu construction failures."""


class ShapeMismatch(ChuError):
    """Raised when a pairing or component does not fit its carriers."""


class AdjointnessViolated(ChuError):
    """Raised when F^T Q != P G; carries the first failing entry."""

    def __init__(self, row: int, col: int, lhs: int, rhs: int):
        super().__init__(
            f"<fa,y> != <a,gy> at (a={row}, y={col}): {lhs} != {rhs}"
        )
        self.row = row
        self.col = col
        self.lhs = lhs
        self.rhs = rhs


class BoundaryMismatch(ChuError):
    """Raised when composing morphisms whose ends do not meet."""


class NotAMorphism(ChuError):
    """Raised when no G makes (F, G) a morphism."""


@dataclass(frozen=True)
class ChuObject:
    """
    A pairing object (A, X, P) over F_p.

    Attributes:
        field: The prime field
        dim_a: Dimension of the first carrier A
        dim_x: Dimension of the second carrier X
        pairing: dim_a x dim_x matrix P
    """

    field: FieldSpec
    dim_a: int
    dim_x: int
    pairing: Matrix

    def __post_init__(self) -> None:
        """Reject pairings that do not fit the carriers."""
        validate_object(self)

    def to_json(self) -> Dict[str, Any]:
        """Return ``{"p", "dimA", "dimX", "P"}`` with row-major entries."""
        return {
            "p": self.field.p,
            "dimA": self.dim_a,
            "dimX": self.dim_x,
            "P": list(self.pairing.entries()),
        }

    @classmethod
    def from_json(cls, payload: Dict[str, Any]) -> "ChuObject":
        """Inverse of ``to_json``."""
        field = FieldSpec(int(payload["p"]))
        dim_a, dim_x = int(payload["dimA"]), int(payload["dimX"])
        entries = [int(value) for value in payload["P"]]
        if len(entries) != dim_a * dim_x:
            raise ShapeMismatch(
                f"{len(entries)} pairing entries for {dim_a}x{dim_x}"
            )
        pairing = Matrix.from_json(
            {"p": field.p, "rows": dim_a, "cols": dim_x, "entries": entries}
        )
        return cls(field, dim_a, dim_x, pairing)


@dataclass(frozen=True)
class ChuMorphism:
    """
    A candidate morphism (F, G): source -> target.

    Construction does not validate; call ``validate_morphism``.

    Attributes:
        source: (A, X, P)
        target: (B, Y, Q)
        f: dim_b x dim_a matrix, A -> B
        g: dim_x x dim_y matrix, Y -> X
    """

    source: ChuObject
    target: ChuObject
    f: Matrix
    g: Matrix

    def to_json(self) -> Dict[str, Any]:
        """Return the source, target and row-major F and G entries."""
        return {
            "source": self.source.to_json(),
            "target": self.target.to_json(),
            "F": list(self.f.entries()),
            "G": list(self.g.entries()),
        }

    @classmethod
    def from_json(cls, payload: Dict[str, Any]) -> "ChuMorphism":
        """Inverse of ``to_json``."""
        source = ChuObject.from_json(payload["source"])
        target = ChuObject.from_json(payload["target"])
        p = source.field.p
        f = Matrix.from_json(
            {
                "p": p,
                "rows": target.dim_a,
                "cols": source.dim_a,
                "entries": payload["F"],
            }
        )
        g = Matrix.from_json(
            {
                "p": p,
                "rows": source.dim_x,
                "cols": target.dim_x,
                "entries": payload["G"],
            }
        )
        return cls(source, target, f, g)


@dataclass(frozen=True)
class SepExtFlags:
    """Separated (rank P = dim A) and extensional (rank P = dim X)."""

    separated: bool
    extensional: bool


@dataclass(frozen=True)
class Reflection:
    """A reflected object with its unit (S) or counit (E) morphism."""

    obj: ChuObject
    morphism: ChuMorphism


def validate_object(obj: ChuObject) -> None:
    """
    Check the pairing shape against the carrier dimensions.

    Raises:
        ShapeMismatch: when P is not dim_a x dim_x or lives over
            another field
    """
    if obj.dim_a < 0 or obj.dim_x < 0:
        raise ShapeMismatch("carrier dimensions must be nonnegative")
    if obj.pairing.field != obj.field:
        raise ShapeMismatch(
            f"pairing over F_{obj.pairing.field.p}, object over "
            f"F_{obj.field.p}"
        )
    if obj.pairing.shape != (obj.dim_a, obj.dim_x):
        raise ShapeMismatch(
            f"pairing is {obj.pairing.rows}x{obj.pairing.cols}, expected "
            f"{obj.dim_a}x{obj.dim_x}"
        )


def make_object(
    field: FieldSpec, dim_a: int, dim_x: int, rows: List[List[int]]
) -> ChuObject:
    """Build an object from nested pairing rows."""
    return ChuObject(
        field, dim_a, dim_x, Matrix.from_rows(field, rows, cols=dim_x)
    )


def unit_object(field: FieldSpec) -> ChuObject:
    """The tensor unit (k, k, [1])."""
    return ChuObject(field, 1, 1, Matrix.identity(field, 1))


def zero_object(field: FieldSpec) -> ChuObject:
    """The object (0, 0, empty)."""
    return ChuObject(field, 0, 0, Matrix.zeros(field, 0, 0))


def eval_pairing(obj: ChuObject, a: Matrix, x: Matrix) -> int:
    """Return a^T P x for column vectors a and x."""
    if a.shape != (obj.dim_a, 1) or x.shape != (obj.dim_x, 1):
        raise DimensionMismatch(
            f"expected columns of length {obj.dim_a} and {obj.dim_x}"
        )
    return (a.T @ obj.pairing @ x).entry(0, 0)


def _check_component_shapes(morphism: ChuMorphism) -> None:
    source, target = morphism.source, morphism.target
    if source.field != target.field:
        raise ShapeMismatch("source and target over different fields")
    if morphism.f.shape != (target.dim_a, source.dim_a):
        raise ShapeMismatch(
            f"F is {morphism.f.rows}x{morphism.f.cols}, expected "
            f"{target.dim_a}x{source.dim_a}"
        )
    if morphism.g.shape != (source.dim_x, target.dim_x):
        raise ShapeMismatch(
            f"G is {morphism.g.rows}x{morphism.g.cols}, expected "
            f"{source.dim_x}x{target.dim_x}"
        )


def validate_morphism(morphism: ChuMorphism) -> None:
    """
    Check F^T Q = P G entrywise.

    Raises:
        ShapeMismatch: when F or G has the wrong shape
        AdjointnessViolated: at the first (row-major) failing entry
    """
    _check_component_shapes(morphism)
    lhs = morphism.f.T @ morphism.target.pairing
    rhs = morphism.source.pairing @ morphism.g
    if lhs == rhs:
        return
    for row in range(lhs.rows):
        for col in range(lhs.cols):
            if lhs.entry(row, col) != rhs.entry(row, col):
                raise AdjointnessViolated(
                    row, col, lhs.entry(row, col), rhs.entry(row, col)
                )


def is_morphism(morphism: ChuMorphism) -> bool:
    """Boolean form of ``validate_morphism``."""
    try:
        validate_morphism(morphism)
    except ChuError:
        return False
    return True


def identity_morphism(obj: ChuObject) -> ChuMorphism:
    """(I_A, I_X) on *obj*."""
    return ChuMorphism(
        obj,
        obj,
        Matrix.identity(obj.field, obj.dim_a),
        Matrix.identity(obj.field, obj.dim_x),
    )


def compose(second: ChuMorphism, first: ChuMorphism) -> ChuMorphism:
    """
    Return second o first = (F2 F1, G1 G2).

    Raises:
        BoundaryMismatch: when first.target != second.source
    """
    if first.target != second.source:
        raise BoundaryMismatch(
            "cannot compose: target of the first morphism is not the "
            "source of the second"
        )
    return ChuMorphism(
        first.source,
        second.target,
        second.f @ first.f,
        first.g @ second.g,
    )


def dual(obj: ChuObject) -> ChuObject:
    """(A, X, P)* = (X, A, P^T)."""
    return ChuObject(obj.field, obj.dim_x, obj.dim_a, obj.pairing.T)


def dual_morphism(morphism: ChuMorphism) -> ChuMorphism:
    """(F, G)* = (G, F): target* -> source*."""
    return ChuMorphism(
        dual(morphism.target), dual(morphism.source), morphism.g, morphism.f
    )


def sep_ext_flags(obj: ChuObject) -> SepExtFlags:
    """Rank criteria for separated and extensional."""
    rank = obj.pairing.rank
    return SepExtFlags(
        separated=rank == obj.dim_a, extensional=rank == obj.dim_x
    )


def left_kernel(obj: ChuObject) -> Subspace:
    """{a : a^T P = 0} inside A."""
    return kernel(obj.pairing.T)


def right_kernel(obj: ChuObject) -> Subspace:
    """{x : P x = 0} inside X."""
    return kernel(obj.pairing)


def reflect(obj: ChuObject, side: str) -> Reflection:
    """
    Separated reflection S or extensional coreflection E.

    ``side == "separated"`` quotients A by the left kernel and returns
    S(obj) with the unit obj -> S(obj). ``side == "extensional"``
    quotients X by the right kernel and returns E(obj) with the counit
    E(obj) -> obj. Already separated (extensional) inputs come back
    unchanged with identity morphisms.
    """
    field = obj.field
    if side == SEPARATED:
        kept = left_kernel(obj)
        q = quotient_map(obj.dim_a, kept)
        s = section_map(obj.dim_a, kept)
        reflected = ChuObject(
            field, q.rows, obj.dim_x, s.T @ obj.pairing
        )
        unit = ChuMorphism(
            obj, reflected, q, Matrix.identity(field, obj.dim_x)
        )
        return Reflection(reflected, unit)
    if side == EXTENSIONAL:
        kept = right_kernel(obj)
        q = quotient_map(obj.dim_x, kept)
        s = section_map(obj.dim_x, kept)
        reflected = ChuObject(field, obj.dim_a, q.rows, obj.pairing @ s)
        counit = ChuMorphism(
            reflected, obj, Matrix.identity(field, obj.dim_a), q
        )
        return Reflection(reflected, counit)
    raise ChuError(f"unknown reflection side '{side}'")


def separate(obj: ChuObject) -> ChuObject:
    """S(obj)."""
    return reflect(obj, SEPARATED).obj


def extensionalize(obj: ChuObject) -> ChuObject:
    """E(obj)."""
    return reflect(obj, EXTENSIONAL).obj


def morphism_constraints(source: ChuObject, target: ChuObject) -> Matrix:
    """
    Linear system whose kernel is the hom space.

    The unknown vector is vec(F) followed by vec(G), both row-major. Using
    vec(M N K) = (M kron K^T) vec(N) the identity F^T Q - P G = 0 becomes
    [(I_A kron Q^T) T | -(P kron I_Y)] v = 0 where T vec(F) = vec(F^T).
    """
    if source.field != target.field:
        raise ShapeMismatch("hom between objects over different fields")
    field = source.field
    f_part = kron(
        Matrix.identity(field, source.dim_a), target.pairing.T
    ) @ transpose_permutation(field, target.dim_a, source.dim_a)
    g_part = kron(source.pairing, Matrix.identity(field, target.dim_x))
    return hstack([f_part, -g_part])


@dataclass(frozen=True)
class HomSpace:
    """
    The space of morphisms source -> target with a stored basis.

    ``subspace`` lives in F_p^(dim_b*dim_a + dim_x*dim_y); each vector is
    vec(F) followed by vec(G).
    """

    source: ChuObject
    target: ChuObject
    subspace: Subspace

    @property
    def dim(self) -> int:
        """Dimension of the hom space."""
        return self.subspace.dim

    @property
    def f_size(self) -> int:
        """Length of the vec(F) block."""
        return self.target.dim_a * self.source.dim_a

    def pack(self, f: Matrix, g: Matrix) -> Matrix:
        """vec(F) followed by vec(G) as a single row."""
        return hstack([vec(f).T, vec(g).T])

    def unpack(self, row: Matrix) -> Tuple[Matrix, Matrix]:
        """Inverse of ``pack``."""
        field = self.source.field
        values = row.entries()
        f_values = values[: self.f_size]
        g_values = values[self.f_size :]
        f = unvec(
            Matrix.column(field, f_values),
            self.target.dim_a,
            self.source.dim_a,
        )
        g = unvec(
            Matrix.column(field, g_values),
            self.source.dim_x,
            self.target.dim_x,
        )
        return f, g

    def element(self, index: int) -> Tuple[Matrix, Matrix]:
        """The (F, G) pair of basis vector *index*."""
        return self.unpack(self.subspace.basis.select_rows([index]))

    def elements(self) -> List[Tuple[Matrix, Matrix]]:
        """All basis pairs in stored order."""
        return [self.element(index) for index in range(self.dim)]

    def morphism(self, index: int) -> ChuMorphism:
        """Basis vector *index* as a ChuMorphism."""
        f, g = self.element(index)
        return ChuMorphism(self.source, self.target, f, g)

    def coordinates(self, f: Matrix, g: Matrix) -> Matrix:
        """
        Coordinates (a 1 x dim row) of the pair (F, G) in the basis.

        Raises:
            NotInSubspace: when (F, G) is not a morphism
        """
        return self.subspace.coordinates(self.pack(f, g))

    def combine(self, coords: Matrix) -> Tuple[Matrix, Matrix]:
        """The pair with the given coordinates."""
        if coords.cols != self.dim:
            raise DimensionMismatch(
                f"{coords.cols} coordinates for a {self.dim}-dim hom"
            )
        if self.dim == 0:
            return self.unpack(
                Matrix.zeros(
                    self.source.field, 1, self.subspace.ambient_dim
                )
            )
        return self.unpack(coords @ self.subspace.basis)

    def contains(self, f: Matrix, g: Matrix) -> bool:
        """True when (F, G) is a morphism source -> target."""
        try:
            self.coordinates(f, g)
        except (NotInSubspace, LinalgError):
            return False
        return True


def hom_space(source: ChuObject, target: ChuObject) -> HomSpace:
    """The hom space with its canonical basis."""
    return HomSpace(
        source, target, kernel(morphism_constraints(source, target))
    )


def hom_basis(source: ChuObject, target: ChuObject) -> Subspace:
    """Solution space of F^T Q = P G in the vectorized pair space."""
    return hom_space(source, target).subspace


def internal_hom(source: ChuObject, target: ChuObject) -> ChuObject:
    """
    (A, X) -o (B, Y) = (Hom, A kron Y).

    Row k of the pairing is vec(F_k^T Q), so <(F, G), a kron y> equals
    a^T F^T Q y.
    """
    space = hom_space(source, target)
    field = source.field
    width = source.dim_a * target.dim_x
    rows = [
        vec(f.T @ target.pairing).T.entries() for f, _ in space.elements()
    ]
    pairing = Matrix.from_rows(field, rows, cols=width)
    return ChuObject(field, space.dim, width, pairing)


def tensor_hom_space(left: ChuObject, right: ChuObject) -> HomSpace:
    """Hom(left, right*): the second carrier of left (x) right."""
    return hom_space(left, dual(right))


def tensor(left: ChuObject, right: ChuObject) -> ChuObject:
    """
    (A, X) (x) (B, Y) = (A kron B, Hom((A, X), (Y, B))).

    Column k of the pairing is vec(P G_k), so <a kron b, (f, g)> equals
    a^T P g b.
    """
    space = tensor_hom_space(left, right)
    field = left.field
    height = left.dim_a * right.dim_a
    columns = [
        vec(left.pairing @ g).T.entries() for _, g in space.elements()
    ]
    pairing = Matrix.from_rows(field, columns, cols=height).T
    return ChuObject(field, height, space.dim, pairing)


@dataclass(frozen=True)
class RecoveredG:
    """
    Solutions of P G = F^T Q.

    Every solution is ``particular`` plus a matrix whose columns lie in
    ``freedom`` (the right kernel of the source pairing).
    """

    particular: Matrix
    freedom: Subspace

    @property
    def unique(self) -> bool:
        """True when the source is extensional."""
        return self.freedom.dim == 0

    def admits(self, g: Matrix) -> bool:
        """True when *g* is one of the solutions."""
        if g.shape != self.particular.shape:
            return False
        difference = g - self.particular
        if difference.cols == 0:
            return True
        return self.freedom.contains(
            Subspace.span(g.field, g.rows, difference.T)
        )


def recover_g(source: ChuObject, target: ChuObject, f: Matrix) -> RecoveredG:
    """
    Recover the G component from F alone.

    Raises:
        ShapeMismatch: when F is not dim_b x dim_a
        NotAMorphism: when some column of F^T Q is outside the column
            space of P
    """
    if f.shape != (target.dim_a, source.dim_a):
        raise ShapeMismatch(
            f"F is {f.rows}x{f.cols}, expected "
            f"{target.dim_a}x{source.dim_a}"
        )
    try:
        particular = solve(source.pairing, f.T @ target.pairing)
    except NoSolution as exc:
        raise NotAMorphism(
            f"no G satisfies P G = F^T Q (column {exc.column})"
        ) from exc
    return RecoveredG(particular, right_kernel(source))
