"""
Canonical witnesses for the *-autonomous law catalog.

Each witness is built analytically from the object data (never searched
for) and is then confirmed with ``confirm_iso``, which validates the
morphism condition, checks both components are bijective and checks that
the G component is one of the solutions ``recover_g`` allows.

Notation: T = (A, X, P), U = (B, Y, Q), V or W = (C, Z, R).
"""

from typing import List, Tuple

import numpy as np

from .chu import (
    EXTENSIONAL,
    SEPARATED,
    ChuError,
    ChuMorphism,
    ChuObject,
    HomSpace,
    compose,
    dual,
    hom_space,
    internal_hom,
    recover_g,
    reflect,
    tensor,
    tensor_hom_space,
    unit_object,
    validate_morphism,
)
from .linalg import FieldSpec, Matrix, hstack


def _stack(
    pairs: List[Tuple[Matrix, Matrix]], which: int, rows: int, cols: int
) -> np.ndarray:
    """Stack one component of each basis pair into a (count, r, c) array."""
    if not pairs:
        return np.zeros((0, rows, cols), dtype=np.int64)
    return np.stack([pair[which].data for pair in pairs])


def _coordinate_columns(
    space: HomSpace, pairs: List[Tuple[Matrix, Matrix]]
) -> Matrix:
    """Coordinates of each pair as the columns of a dim x len matrix."""
    field = space.source.field
    if not pairs:
        return Matrix.zeros(field, space.dim, 0)
    rows = [space.coordinates(f, g) for f, g in pairs]
    return hstack([row.T for row in rows])


def confirm_iso(morphism: ChuMorphism) -> List[str]:
    """
    Return the reasons *morphism* is not a confirmed isomorphism.

    An empty list means the morphism is valid, both components are
    bijective and G is admitted by ``recover_g``.
    """
    problems: List[str] = []
    try:
        validate_morphism(morphism)
    except ChuError as exc:
        return [f"{type(exc).__name__}: {exc}"]
    if not morphism.f.is_invertible():
        problems.append(
            f"F ({morphism.f.rows}x{morphism.f.cols}, rank "
            f"{morphism.f.rank}) is not bijective"
        )
    if not morphism.g.is_invertible():
        problems.append(
            f"G ({morphism.g.rows}x{morphism.g.cols}, rank "
            f"{morphism.g.rank}) is not bijective"
        )
    try:
        recovered = recover_g(morphism.source, morphism.target, morphism.f)
    except ChuError as exc:
        problems.append(f"{type(exc).__name__}: {exc}")
    else:
        if not recovered.admits(morphism.g):
            problems.append("G is not a solution of P G = F^T Q")
    return problems


def dual_as_hom_witness(obj: ChuObject) -> ChuMorphism:
    """
    T* -> T -o unit sending x to the functional pair ((P x)^T, x).

    Hom(T, unit) consists of pairs (F, G) with F^T = P G, so x determines
    the whole element and the map is bijective.
    """
    field = obj.field
    target = internal_hom(obj, unit_object(field))
    space = hom_space(obj, unit_object(field))
    pairs = []
    for x in range(obj.dim_x):
        e_x = Matrix.unit_column(field, obj.dim_x, x)
        pairs.append(((obj.pairing @ e_x).T, e_x))
    f = _coordinate_columns(space, pairs)
    return ChuMorphism(
        dual(obj), target, f, Matrix.identity(field, obj.dim_a)
    )


def unit_witness(obj: ChuObject) -> ChuMorphism:
    """
    unit (x) T -> T with F = I and G sending x to (e_x, (P e_x)^T).
    """
    field = obj.field
    unit = unit_object(field)
    source = tensor(unit, obj)
    space = tensor_hom_space(unit, obj)
    pairs = []
    for x in range(obj.dim_x):
        e_x = Matrix.unit_column(field, obj.dim_x, x)
        pairs.append((e_x, (obj.pairing @ e_x).T))
    g = _coordinate_columns(space, pairs)
    return ChuMorphism(
        source, obj, Matrix.identity(field, obj.dim_a), g
    )


def swap_permutation(field: FieldSpec, left: int, right: int) -> Matrix:
    """S with S (a kron b) = b kron a for a in F^left, b in F^right."""
    array = np.zeros((left * right, left * right), dtype=np.int64)
    for i in range(left):
        for j in range(right):
            array[j * left + i, i * right + j] = 1
    return Matrix(field, array)


def symmetry_witness(left: ChuObject, right: ChuObject) -> ChuMorphism:
    """T (x) U -> U (x) T: swap on A kron B, (f, g) -> (g, f) on homs."""
    field = left.field
    source = tensor(left, right)
    target = tensor(right, left)
    source_space = tensor_hom_space(left, right)
    target_space = tensor_hom_space(right, left)
    swapped = [(g, f) for f, g in target_space.elements()]
    g = _coordinate_columns(source_space, swapped)
    f = swap_permutation(field, left.dim_a, right.dim_a)
    return ChuMorphism(source, target, f, g)


def associativity_witness(
    first: ChuObject, second: ChuObject, third: ChuObject
) -> ChuMorphism:
    """
    (T (x) U) (x) W -> T (x) (U (x) W).

    Both first carriers are A kron B kron C in the same row-major order,
    so F is the identity. G reassociates a pair (f: A -> Hom(U, W*),
    g: B kron C -> X) into (f': A kron B -> Z, g'': C -> Hom(T, U*)).
    """
    field = first.field
    a_dim, b_dim, c_dim = first.dim_a, second.dim_a, third.dim_a
    x_dim, y_dim, z_dim = first.dim_x, second.dim_x, third.dim_x

    inner_left = tensor(first, second)
    inner_right = tensor(second, third)
    source = tensor(inner_left, third)
    target = tensor(first, inner_right)

    left_space = tensor_hom_space(inner_left, third)
    right_space = tensor_hom_space(first, inner_right)
    tu_space = tensor_hom_space(first, second)
    uw_pairs = tensor_hom_space(second, third).elements()
    phi = _stack(uw_pairs, 0, z_dim, b_dim)
    gamma = _stack(uw_pairs, 1, y_dim, c_dim)

    columns = []
    for f, g in right_space.elements():
        f_data = f.data
        f_prime = np.einsum("mi,mzj->zij", f_data, phi).reshape(
            z_dim, a_dim * b_dim
        )
        f_second = np.einsum("mi,myl->lyi", f_data, gamma)
        g_second = g.data.reshape(x_dim, b_dim, c_dim).transpose(2, 0, 1)
        inner = [
            (Matrix(field, f_second[l]), Matrix(field, g_second[l]))
            for l in range(c_dim)
        ]
        g_double = _coordinate_columns(tu_space, inner)
        columns.append((Matrix(field, f_prime), g_double))
    g_witness = _coordinate_columns(left_space, columns)
    size = a_dim * b_dim * c_dim
    return ChuMorphism(
        source, target, Matrix.identity(field, size), g_witness
    )


def dual_of_hom_witness(t: ChuObject, u: ChuObject) -> ChuMorphism:
    """
    (T -o U)* -> T (x) U* with both components the identity.

    Both objects have first carrier A kron Y and second carrier
    Hom(T, U) in the same stored basis (U** is U), and both pair
    (a kron y, (F, G)) to a^T F^T Q y = a^T P G y.
    """
    field = t.field
    source = dual(internal_hom(t, u))
    target = tensor(t, dual(u))
    return ChuMorphism(
        source,
        target,
        Matrix.identity(field, t.dim_a * u.dim_x),
        Matrix.identity(field, target.dim_x),
    )


class TensorHomAdjunction:
    """
    The transpose Hom(T (x) U, V) <-> Hom(T, U -o V).

    ``curry`` and ``uncurry`` act on (F, G) pairs; ``curry_matrix`` and
    ``uncurry_matrix`` express them in the stored hom bases.
    """

    def __init__(self, t: ChuObject, u: ChuObject, v: ChuObject):
        """Materialize the four hom spaces involved."""
        self.t, self.u, self.v = t, u, v
        self.field = t.field
        self.pair_space = tensor_hom_space(t, u)
        self.tensor_obj = tensor(t, u)
        self.left = hom_space(self.tensor_obj, v)
        self.inner = hom_space(u, v)
        self.hom_obj = internal_hom(u, v)
        self.right = hom_space(t, self.hom_obj)
        pairs = self.pair_space.elements()
        self._f1 = _stack(pairs, 0, u.dim_x, t.dim_a)
        self._g1 = _stack(pairs, 1, t.dim_x, u.dim_a)
        inner_pairs = self.inner.elements()
        self._f2 = _stack(inner_pairs, 0, v.dim_a, u.dim_a)
        self._g2 = _stack(inner_pairs, 1, u.dim_x, v.dim_x)

    def curry(self, f: Matrix, g: Matrix) -> Tuple[Matrix, Matrix]:
        """(F, G): T (x) U -> V  to  (F', G'): T -> U -o V."""
        a_dim, b_dim = self.t.dim_a, self.u.dim_a
        x_dim, z_dim = self.t.dim_x, self.v.dim_x
        g_slices = np.einsum("myi,mz->iyz", self._f1, g.data)
        pairs = []
        for i in range(a_dim):
            f_slice = f.data[:, i * b_dim : (i + 1) * b_dim]
            pairs.append(
                (Matrix(self.field, f_slice), Matrix(self.field, g_slices[i]))
            )
        f_curried = _coordinate_columns(self.inner, pairs)
        g_curried = np.einsum("mz,mxj->xjz", g.data, self._g1).reshape(
            x_dim, b_dim * z_dim
        )
        return f_curried, Matrix(self.field, g_curried)

    def uncurry(self, f: Matrix, g: Matrix) -> Tuple[Matrix, Matrix]:
        """(F', G'): T -> U -o V  to  (F, G): T (x) U -> V."""
        a_dim, b_dim = self.t.dim_a, self.u.dim_a
        c_dim, x_dim, z_dim = self.v.dim_a, self.t.dim_x, self.v.dim_x
        f_flat = np.einsum("ki,kcj->cij", f.data, self._f2).reshape(
            c_dim, a_dim * b_dim
        )
        f_z = np.einsum("ki,kyz->zyi", f.data, self._g2)
        g_z = g.data.reshape(x_dim, b_dim, z_dim).transpose(2, 0, 1)
        pairs = [
            (Matrix(self.field, f_z[z]), Matrix(self.field, g_z[z]))
            for z in range(z_dim)
        ]
        g_uncurried = _coordinate_columns(self.pair_space, pairs)
        return Matrix(self.field, f_flat), g_uncurried

    def curry_matrix(self) -> Matrix:
        """dim right x dim left matrix of ``curry`` on the left basis."""
        images = [self.curry(f, g) for f, g in self.left.elements()]
        return _coordinate_columns(self.right, images)

    def uncurry_matrix(self) -> Matrix:
        """dim left x dim right matrix of ``uncurry`` on the right basis."""
        images = [self.uncurry(f, g) for f, g in self.right.elements()]
        return _coordinate_columns(self.left, images)


def reflector_transport(
    t: ChuObject, u: ChuObject, side: str
) -> Tuple[HomSpace, HomSpace, Matrix]:
    """
    Compare hom spaces across the S unit or the E counit.

    For ``side == "separated"`` each m: S(T) -> U is sent to m o unit in
    Hom(T, U); for ``side == "extensional"`` each m: U -> E(T) is sent to
    counit o m in Hom(U, T).

    Returns:
        (reflected hom space, plain hom space, transport matrix)
    """
    reflection = reflect(t, side)
    if side == SEPARATED:
        reflected = hom_space(reflection.obj, u)
        plain = hom_space(t, u)
        images = []
        for index in range(reflected.dim):
            moved = compose(reflected.morphism(index), reflection.morphism)
            images.append((moved.f, moved.g))
    elif side == EXTENSIONAL:
        reflected = hom_space(u, reflection.obj)
        plain = hom_space(u, t)
        images = []
        for index in range(reflected.dim):
            moved = compose(reflection.morphism, reflected.morphism(index))
            images.append((moved.f, moved.g))
    else:
        raise ChuError(f"unknown reflection side '{side}'")
    return reflected, plain, _coordinate_columns(plain, images)


def trace_gram(field: FieldSpec, left: int, right: int) -> Matrix:
    """
    Gram matrix of tr(g f) between Hom(F^left, F^right) and its reverse.

    Rows index the row-major basis of right x left matrices f, columns
    the basis of left x right matrices g.
    """
    size = left * right
    array = np.zeros((size, size), dtype=np.int64)
    for i in range(right):
        for j in range(left):
            # tr(E'_{kl} E_{ij}) is 1 exactly when k = j and l = i
            array[i * left + j, j * right + i] = 1
    return Matrix(field, array)


def compact_closure_map(u: ChuObject, v: ChuObject) -> Matrix:
    """
    Coordinates in Hom(V, U) of the rank-one maps a (Q_V y)^T.

    u and v must be separated and extensional, so their pairings are
    invertible and G = Q_V^-1 F^T P_U is forced. Columns follow the
    row-major basis of A_U kron Y_V.
    """
    field = u.field
    space = hom_space(v, u)
    q_inverse = v.pairing.inverse()
    pairs = []
    for a in range(u.dim_a):
        e_a = Matrix.unit_column(field, u.dim_a, a)
        for y in range(v.dim_x):
            e_y = Matrix.unit_column(field, v.dim_x, y)
            f = e_a @ (v.pairing @ e_y).T
            g = q_inverse @ f.T @ u.pairing
            pairs.append((f, g))
    return _coordinate_columns(space, pairs)
