"""
Modules over K = F_p[x]/(x^n) as spaces with a nilpotent operator.

A K-module M of k-dimension d is a d x d matrix X (the action of x) with
X^n = 0. K itself is the cyclic module of order n with basis
1, x, ..., x^{n-1}; the action shifts e_j to e_{j+1}.

K is self-injective and a cogenerator. ``extend_hom`` realizes the first
fact by solving a linear system, ``cogenerator_embed`` the second by
splitting off cyclic summands and embedding each into K.
"""

from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .linalg import (
    FieldSpec,
    Matrix,
    NoSolution,
    Subspace,
    block_diag,
    hstack,
    image,
    iter_vectors,
    kernel,
    kron,
    quotient_map,
    section_map,
    solve,
    transpose_permutation,
    vstack,
)
from .sampling import random_invertible

SEPARATED = "separated"
EXTENSIONAL = "extensional"


class ModuleError(ValueError):
    """Base class for module-ring failures."""


class NilpotencyViolated(ModuleError):
    """Raised when X^n != 0."""


class EquivarianceViolated(ModuleError):
    """Raised when a map does not commute with the x-action."""


class NoExtension(ModuleError):
    """Raised when a homomorphism does not extend along an injection."""


class BilinearityViolated(ModuleError):
    """Raised when a K-valued pairing breaks X^T P_t = P_{t-1} = P_t X."""


class InvariantViolation(ModuleError):
    """Raised when a subspace expected to be a submodule is not."""


@dataclass(frozen=True)
class RingSpec:
    """K = F_p[x]/(x^n)."""

    p: int
    n: int

    def __post_init__(self) -> None:
        """Validate the modulus and the nilpotency degree."""
        FieldSpec(self.p)
        if int(self.n) < 1:
            raise ModuleError(f"nilpotency degree must be >= 1, got {self.n}")

    @property
    def field(self) -> FieldSpec:
        """The residue field k = F_p."""
        return FieldSpec(self.p)


@dataclass(frozen=True)
class NilModule:
    """
    A K-module: a k-space of dimension ``dim`` with x acting as ``action``.
    """

    ring: RingSpec
    dim: int
    action: Matrix

    def __post_init__(self) -> None:
        """Reject non-nilpotent actions."""
        validate_module(self)

    def to_json(self) -> Dict[str, Any]:
        """Return ``{"p", "n", "dim", "X"}``."""
        return {
            "p": self.ring.p,
            "n": self.ring.n,
            "dim": self.dim,
            "X": list(self.action.entries()),
        }

    @classmethod
    def from_json(cls, payload: Dict[str, Any]) -> "NilModule":
        """Inverse of ``to_json``."""
        ring = RingSpec(int(payload["p"]), int(payload["n"]))
        dim = int(payload["dim"])
        action = Matrix.from_json(
            {"p": ring.p, "rows": dim, "cols": dim, "entries": payload["X"]}
        )
        return cls(ring, dim, action)


@dataclass(frozen=True)
class KLinearMap:
    """A K-linear map; ``map`` is target.dim x source.dim."""

    source: "NilModule"
    target: "NilModule"
    map: Matrix

    def __post_init__(self) -> None:
        """Reject maps that do not commute with x."""
        validate_klinear(self)

    def then(self, other: "KLinearMap") -> "KLinearMap":
        """other o self."""
        return KLinearMap(self.source, other.target, other.map @ self.map)

    def is_injective(self) -> bool:
        """Full column rank."""
        return self.map.rank == self.source.dim


def validate_module(module: NilModule) -> None:
    """
    Check the action shape and X^n = 0.

    Raises:
        NilpotencyViolated: when X^n != 0
        ModuleError: on a shape or field mismatch
    """
    if module.action.shape != (module.dim, module.dim):
        raise ModuleError(
            f"action is {module.action.rows}x{module.action.cols}, "
            f"expected {module.dim}x{module.dim}"
        )
    if module.action.field != module.ring.field:
        raise ModuleError("action over the wrong field")
    if not module.action.power(module.ring.n).is_zero():
        raise NilpotencyViolated(
            f"x^{module.ring.n} does not act as zero"
        )


def validate_klinear(morphism: KLinearMap) -> None:
    """
    Check F X_source = X_target F.

    Raises:
        EquivarianceViolated: when the square does not commute
    """
    source, target = morphism.source, morphism.target
    if source.ring != target.ring:
        raise ModuleError("modules over different rings")
    if morphism.map.shape != (target.dim, source.dim):
        raise ModuleError(
            f"map is {morphism.map.rows}x{morphism.map.cols}, expected "
            f"{target.dim}x{source.dim}"
        )
    if morphism.map @ source.action != target.action @ morphism.map:
        raise EquivarianceViolated("map does not commute with x")


def make_module(ring: RingSpec, rows: Sequence[Sequence[int]]) -> NilModule:
    """Module from explicit action rows."""
    dim = len(rows)
    return NilModule(ring, dim, Matrix.from_rows(ring.field, rows, cols=dim))


def zero_module(ring: RingSpec) -> NilModule:
    """The zero module."""
    return NilModule(ring, 0, Matrix.zeros(ring.field, 0, 0))


def cyclic(ring: RingSpec, order: int) -> NilModule:
    """
    K/(x^order) with basis m, xm, ..., x^{order-1} m.

    Raises:
        ModuleError: unless 1 <= order <= n
    """
    if not 1 <= order <= ring.n:
        raise ModuleError(f"cyclic order {order} outside 1..{ring.n}")
    array = np.zeros((order, order), dtype=np.int64)
    for j in range(order - 1):
        array[j + 1, j] = 1
    return NilModule(ring, order, Matrix(ring.field, array))


def free_module(ring: RingSpec) -> NilModule:
    """K as a module over itself."""
    return cyclic(ring, ring.n)


def direct_sum(ring: RingSpec, modules: Sequence[NilModule]) -> NilModule:
    """Block-diagonal direct sum."""
    action = block_diag([m.action for m in modules], ring.field)
    return NilModule(ring, action.rows, action)


def free_power(ring: RingSpec, count: int) -> NilModule:
    """K^count."""
    return direct_sum(ring, [free_module(ring)] * count)


def order_of(module: NilModule, vector: Matrix) -> int:
    """Least i with x^i v = 0."""
    current = vector
    order = 0
    while not current.is_zero():
        current = module.action @ current
        order += 1
    return order


def cyclic_span(module: NilModule, vector: Matrix) -> KLinearMap:
    """The injection K/(x^i) -> module sending m to *vector*."""
    order = order_of(module, vector)
    if order == 0:
        raise ModuleError("the zero vector generates no cyclic summand")
    columns = [vector]
    for _ in range(order - 1):
        columns.append(module.action @ columns[-1])
    return KLinearMap(cyclic(module.ring, order), module, hstack(columns))


def submodule(
    module: NilModule, subspace: Subspace
) -> Tuple[NilModule, KLinearMap]:
    """
    The submodule on an x-invariant subspace, with its inclusion.

    Raises:
        InvariantViolation: when x moves the subspace outside itself
    """
    ring = module.ring
    basis = subspace.basis
    inclusion = basis.T
    moved = (module.action @ inclusion).T
    if not subspace.contains(Subspace.span(ring.field, module.dim, moved)):
        raise InvariantViolation("subspace is not x-invariant")
    action = subspace.coordinates(moved).T
    sub = NilModule(ring, subspace.dim, action)
    return sub, KLinearMap(sub, module, inclusion)


def quotient_module(
    module: NilModule, subspace: Subspace
) -> Tuple[NilModule, KLinearMap]:
    """
    module / subspace with the projection.

    Raises:
        InvariantViolation: when the subspace is not a submodule
    """
    submodule(module, subspace)
    q = quotient_map(module.dim, subspace)
    s = section_map(module.dim, subspace)
    quotient = NilModule(module.ring, q.rows, q @ module.action @ s)
    return quotient, KLinearMap(module, quotient, q)


def generated_submodule(
    module: NilModule, generators: Matrix
) -> Tuple[NilModule, KLinearMap]:
    """Submodule generated by the columns of *generators*."""
    columns = [generators]
    for _ in range(module.ring.n - 1):
        columns.append(module.action @ columns[-1])
    stacked = hstack(columns)
    return submodule(module, image(stacked))


def hom_K_constraints(first: NilModule, second: NilModule) -> Matrix:
    """Rows of F X_1 - X_2 F = 0 acting on vec(F), F of shape d2 x d1."""
    field = first.ring.field
    return kron(Matrix.identity(field, second.dim), first.action.T) - kron(
        second.action, Matrix.identity(field, first.dim)
    )


def hom_K_basis(first: NilModule, second: NilModule) -> Subspace:
    """Hom_K(first, second) as a subspace of vectorized d2 x d1 maps."""
    if first.ring != second.ring:
        raise ModuleError("modules over different rings")
    return kernel(hom_K_constraints(first, second))


def hom_K_maps(first: NilModule, second: NilModule) -> List[KLinearMap]:
    """Basis of Hom_K(first, second) as maps."""
    basis = hom_K_basis(first, second).basis
    maps = []
    for row in basis.data:
        matrix = Matrix(
            first.ring.field, row.reshape(second.dim, first.dim)
        )
        maps.append(KLinearMap(first, second, matrix))
    return maps


def dual_module(module: NilModule) -> NilModule:
    """Hom_k(M, k) with (x f)(a) = f(x a), i.e. action X^T."""
    return NilModule(module.ring, module.dim, module.action.T)


def jordan_type(module: NilModule) -> Tuple[int, ...]:
    """Ranks of X^1..X^n; equal tuples mean isomorphic modules."""
    return tuple(
        module.action.power(k).rank for k in range(1, module.ring.n + 1)
    )


def find_isomorphism(
    first: NilModule, second: NilModule, limit: int = 4096
) -> Optional[KLinearMap]:
    """
    An invertible element of Hom_K(first, second), or None.

    Basis elements are tried first, then coefficient vectors in order,
    at most *limit* of them.
    """
    if first.dim != second.dim or jordan_type(first) != jordan_type(second):
        return None
    maps = hom_K_maps(first, second)
    for candidate in maps:
        if candidate.map.is_invertible():
            return candidate
    field = first.ring.field
    basis = hom_K_basis(first, second).basis
    for tried, coeffs in enumerate(iter_vectors(field, basis.rows)):
        if tried >= limit:
            break
        flat = Matrix.row(field, coeffs) @ basis
        candidate = Matrix(
            field, flat.data.reshape(second.dim, first.dim)
        )
        if candidate.is_invertible():
            return KLinearMap(first, second, candidate)
    return None


def self_dual_iso(ring: RingSpec) -> KLinearMap:
    """
    K -> Hom_k(K, k), x^i -> (x^{n-1-i})*.

    The exponent pairing is i + j = n - 1; with exponents in 0..n-1 the
    index i + j = n would send 1 to zero.
    """
    n = ring.n
    array = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        array[n - 1 - i, i] = 1
    free = free_module(ring)
    return KLinearMap(free, dual_module(free), Matrix(ring.field, array))


def embed_cyclic(ring: RingSpec, order: int) -> KLinearMap:
    """K/(x^i) -> K, x^j m -> x^{n-i+j}."""
    source = cyclic(ring, order)
    array = np.zeros((ring.n, order), dtype=np.int64)
    for j in range(order):
        array[ring.n - order + j, j] = 1
    return KLinearMap(source, free_module(ring), Matrix(ring.field, array))


def extend_hom(inclusion: KLinearMap, phi: KLinearMap) -> KLinearMap:
    """
    Extend phi: A -> Q along an injection A -> B.

    Solves psi incl = phi together with psi X_B = X_Q psi; free
    parameters are zero.

    Raises:
        ModuleError: when the inclusion is not injective or the sources
            differ
        NoExtension: when no K-linear extension exists
    """
    if inclusion.source != phi.source:
        raise ModuleError("phi and the inclusion have different sources")
    if not inclusion.is_injective():
        raise ModuleError("extension needs an injective inclusion")
    field = inclusion.source.ring.field
    big, codomain = inclusion.target, phi.target
    restrict = kron(Matrix.identity(field, codomain.dim), inclusion.map.T)
    commute = hom_K_constraints(big, codomain)
    system = vstack([restrict, commute])
    rhs = vstack(
        [
            Matrix(field, phi.map.data.reshape(-1, 1)),
            Matrix.zeros(field, commute.rows, 1),
        ]
    )
    try:
        solution = solve(system, rhs)
    except NoSolution as exc:
        raise NoExtension("no K-linear extension exists") from exc
    psi = Matrix(field, solution.data.reshape(codomain.dim, big.dim))
    return KLinearMap(big, codomain, psi)


@dataclass(frozen=True)
class CogeneratorEmbedding:
    """An injective K-map into K^count, one summand per cyclic piece."""

    count: int
    map: KLinearMap
    orders: Tuple[int, ...]


def cogenerator_embed(module: NilModule) -> CogeneratorEmbedding:
    """
    Embed *module* into K^r.

    Picks a basis vector of maximal order i, extends the embedding of
    K/(x^i) into K along its cyclic span to psi: M -> K, reads the last
    i coordinates of psi as a retraction rho onto K/(x^i) and recurses on
    ker rho.
    """
    ring = module.ring
    field = ring.field
    if module.dim == 0:
        target = free_power(ring, 0)
        return CogeneratorEmbedding(
            0, KLinearMap(module, target, Matrix.zeros(field, 0, 0)), ()
        )
    orders = [
        order_of(module, Matrix.unit_column(field, module.dim, b))
        for b in range(module.dim)
    ]
    best = max(range(module.dim), key=lambda b: (orders[b], -b))
    generator = Matrix.unit_column(field, module.dim, best)
    span = cyclic_span(module, generator)
    order = span.source.dim
    embed = embed_cyclic(ring, order)
    psi = extend_hom(span, embed)
    # order is maximal, so psi lands in x^{n-order} K
    rho = psi.map.select_rows(range(ring.n - order, ring.n))
    kernel_space = kernel(rho)
    rest, _ = submodule(module, kernel_space)
    projector = Matrix.identity(field, module.dim) - span.map @ rho
    to_rest = kernel_space.coordinates(projector.T).T
    inner = cogenerator_embed(rest)
    combined = vstack([psi.map, inner.map.map @ to_rest])
    target = free_power(ring, 1 + inner.count)
    result = KLinearMap(module, target, combined)
    if not result.is_injective():
        raise InvariantViolation("cogenerator embedding is not injective")
    return CogeneratorEmbedding(
        1 + inner.count, result, (order,) + inner.orders
    )


def tensor_relations(first: NilModule, second: NilModule) -> Matrix:
    """Columns (X a) (x) b - a (x) (X b) over the basis pairs."""
    field = first.ring.field
    return kron(first.action, Matrix.identity(field, second.dim)) - kron(
        Matrix.identity(field, first.dim), second.action
    )


@dataclass(frozen=True)
class TensorK:
    """first (x)_K second with its projection from the k-tensor."""

    module: NilModule
    projection: Matrix
    section: Matrix


def tensor_K_full(first: NilModule, second: NilModule) -> TensorK:
    """Quotient of the k-tensor by the K-balancing relations."""
    if first.ring != second.ring:
        raise ModuleError("modules over different rings")
    field = first.ring.field
    relations = image(tensor_relations(first, second))
    q = quotient_map(first.dim * second.dim, relations)
    s = section_map(first.dim * second.dim, relations)
    action = q @ kron(first.action, Matrix.identity(field, second.dim)) @ s
    return TensorK(NilModule(first.ring, q.rows, action), q, s)


def tensor_K(first: NilModule, second: NilModule) -> NilModule:
    """first (x)_K second."""
    return tensor_K_full(first, second).module


@dataclass
class BaerReport:
    """Hom_K(B, Hom_k(K, k)) against Hom_k(K (x)_K B, k)."""

    dim_hom_K: int
    dim_tensor_dual: int
    dim_b: int
    bijective: bool
    problems: List[str]

    @property
    def passed(self) -> bool:
        """True when the natural map is a bijection of equal dims."""
        return not self.problems


def baer_adjunction_check(module: NilModule) -> BaerReport:
    """
    Exhibit Hom_K(B, Hom_k(K, k)) = Hom_k(K (x)_K B, k) on a basis.

    h is sent to the functional r (x) b -> h(b)(r); it must vanish on
    the balancing relations so it descends to the quotient.
    """
    ring = module.ring
    field = ring.field
    free = free_module(ring)
    codual = dual_module(free)
    homs = hom_K_maps(module, codual)
    tensor = tensor_K_full(free, module)
    relations = tensor_relations(free, module)
    problems: List[str] = []
    descended = []
    for index, h in enumerate(homs):
        flat = Matrix(field, h.map.data.reshape(1, -1))
        if not (flat @ relations).is_zero():
            problems.append(f"functional {index} ignores the relations")
            continue
        reduced = flat @ tensor.section
        if reduced @ tensor.projection != flat:
            problems.append(f"functional {index} does not descend")
        descended.append(reduced)
    dim_dual = tensor.module.dim
    if descended:
        rank = vstack(descended).rank
    else:
        rank = 0
    bijective = (
        rank == len(homs) == dim_dual and len(descended) == len(homs)
    )
    if len(homs) != module.dim:
        problems.append(
            f"dim Hom_K(B, K*) = {len(homs)} but dim B = {module.dim}"
        )
    if not bijective:
        problems.append(
            f"natural map has rank {rank} between dims {len(homs)} and "
            f"{dim_dual}"
        )
    return BaerReport(len(homs), dim_dual, module.dim, bijective, problems)


@dataclass(frozen=True)
class ChuKObject:
    """
    A K-valued pairing <a, b> = sum_t (a^T P_t b) x^t between two modules.
    """

    left: NilModule
    right: NilModule
    components: Tuple[Matrix, ...]

    def __post_init__(self) -> None:
        """Check the recurrence that encodes K-bilinearity."""
        object.__setattr__(self, "components", tuple(self.components))
        chuK_validate(self)

    @property
    def ring(self) -> RingSpec:
        """The coefficient ring."""
        return self.left.ring

    def pair(self, a: Matrix, b: Matrix) -> Tuple[int, ...]:
        """Coefficients of <a, b> in 1, x, ..., x^{n-1}."""
        return tuple(
            (a.T @ component @ b).entry(0, 0)
            for component in self.components
        )

    def to_json(self) -> Dict[str, Any]:
        """Modules plus the list of component matrices."""
        return {
            "left": self.left.to_json(),
            "right": self.right.to_json(),
            "P": [list(c.entries()) for c in self.components],
        }


def chuK_validate(obj: ChuKObject) -> None:
    """
    Check X_M^T P_t = P_{t-1} = P_t X_N for all t, with P_{-1} = 0.

    Raises:
        BilinearityViolated: at the first failing component
    """
    ring = obj.left.ring
    if obj.right.ring != ring:
        raise ModuleError("pairing between modules over different rings")
    if len(obj.components) != ring.n:
        raise BilinearityViolated(
            f"{len(obj.components)} components for n = {ring.n}"
        )
    shape = (obj.left.dim, obj.right.dim)
    previous = Matrix.zeros(ring.field, *shape)
    for t, component in enumerate(obj.components):
        if component.shape != shape:
            raise BilinearityViolated(
                f"component {t} is {component.rows}x{component.cols}"
            )
        if obj.left.action.T @ component != previous:
            raise BilinearityViolated(f"<xa, b> != x<a, b> at degree {t}")
        if component @ obj.right.action != previous:
            raise BilinearityViolated(f"<a, xb> != x<a, b> at degree {t}")
        previous = component


def regular_pairing(ring: RingSpec, shift: int = 0) -> ChuKObject:
    """<a, b> = x^shift a b on K x K."""
    n = ring.n
    components = []
    for t in range(n):
        array = np.zeros((n, n), dtype=np.int64)
        for i in range(n):
            for j in range(n):
                if i + j + shift == t:
                    array[i, j] = 1
        components.append(Matrix(ring.field, array))
    free = free_module(ring)
    return ChuKObject(free, free, tuple(components))


def chuK_dual(obj: ChuKObject) -> ChuKObject:
    """Swap the modules and transpose every component."""
    return ChuKObject(
        obj.right, obj.left, tuple(c.T for c in obj.components)
    )


def chuK_left_kernel(obj: ChuKObject) -> Subspace:
    """{a : a^T P_t = 0 for all t}."""
    return kernel(hstack(list(obj.components)).T)


def chuK_right_kernel(obj: ChuKObject) -> Subspace:
    """{b : P_t b = 0 for all t}."""
    return kernel(vstack(list(obj.components)))


def chuK_flags(obj: ChuKObject) -> Tuple[bool, bool]:
    """(separated, extensional)."""
    return (chuK_left_kernel(obj).dim == 0, chuK_right_kernel(obj).dim == 0)


def chuK_reduce(obj: ChuKObject, side: str) -> Tuple[ChuKObject, Matrix]:
    """
    S (quotient the left module) or E (quotient the right module).

    Returns the reduced object and the quotient matrix. The kernels are
    asserted to be submodules before quotienting.
    """
    if side == SEPARATED:
        kept = chuK_left_kernel(obj)
        quotient, projection = quotient_module(obj.left, kept)
        s = section_map(obj.left.dim, kept)
        components = tuple(s.T @ c for c in obj.components)
        return ChuKObject(quotient, obj.right, components), projection.map
    if side == EXTENSIONAL:
        kept = chuK_right_kernel(obj)
        quotient, projection = quotient_module(obj.right, kept)
        s = section_map(obj.right.dim, kept)
        components = tuple(c @ s for c in obj.components)
        return ChuKObject(obj.left, quotient, components), projection.map
    raise ModuleError(f"unknown reduction side '{side}'")


def chuK_hom_basis(source: ChuKObject, target: ChuKObject) -> Subspace:
    """
    Pairs (F: M -> M', G: N' -> N) with F^T Q_t = P_t G for all t.

    F and G must also be K-linear. Vector layout: vec(F) then vec(G).
    """
    ring = source.ring
    if target.ring != ring:
        raise ModuleError("hom between pairings over different rings")
    field = ring.field
    dm, dn = source.left.dim, source.right.dim
    dm2, dn2 = target.left.dim, target.right.dim
    f_size, g_size = dm2 * dm, dn * dn2
    blocks = []
    for p_t, q_t in zip(source.components, target.components):
        f_part = kron(
            Matrix.identity(field, dm), q_t.T
        ) @ transpose_permutation(field, dm2, dm)
        g_part = kron(p_t, Matrix.identity(field, dn2))
        blocks.append(hstack([f_part, -g_part]))
    f_commute = hom_K_constraints(source.left, target.left)
    g_commute = hom_K_constraints(target.right, source.right)
    blocks.append(
        hstack([f_commute, Matrix.zeros(field, f_commute.rows, g_size)])
    )
    blocks.append(
        hstack([Matrix.zeros(field, g_commute.rows, f_size), g_commute])
    )
    return kernel(vstack(blocks))


def random_module(
    rng: np.random.Generator, ring: RingSpec, max_dim: int
) -> NilModule:
    """
    Random cyclic decomposition conjugated by a random invertible matrix.
    """
    dim = int(rng.integers(0, max_dim + 1))
    parts = []
    remaining = dim
    while remaining > 0:
        part = int(rng.integers(1, min(ring.n, remaining) + 1))
        parts.append(part)
        remaining -= part
    jordan = direct_sum(ring, [cyclic(ring, part) for part in parts])
    change = random_invertible(rng, ring.field, dim)
    return NilModule(
        ring, dim, change @ jordan.action @ change.inverse()
    )


def random_submodule(
    rng: np.random.Generator, module: NilModule
) -> Tuple[NilModule, KLinearMap]:
    """Submodule generated by a few random vectors."""
    field = module.ring.field
    count = int(rng.integers(0, module.dim + 1)) if module.dim else 0
    generators = Matrix(
        field, rng.integers(0, field.p, size=(module.dim, count))
    )
    return generated_submodule(module, generators)


def random_hom(
    rng: np.random.Generator, first: NilModule, second: NilModule
) -> KLinearMap:
    """Uniform element of Hom_K(first, second)."""
    field = first.ring.field
    basis = hom_K_basis(first, second).basis
    coeffs = Matrix(field, rng.integers(0, field.p, size=(1, basis.rows)))
    flat = coeffs @ basis
    return KLinearMap(
        first, second, Matrix(field, flat.data.reshape(second.dim, first.dim))
    )
