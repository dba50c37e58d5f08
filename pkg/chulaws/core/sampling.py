"""
Seeded random generators for law trials and campaigns.

Every trial draws from its own generator, keyed by
``SeedSequence([seed, p, law_index, trial])``, so a trial can be replayed
alone and results do not depend on scheduling.
"""

from typing import Callable, Optional

import numpy as np

from .chu import ChuObject, sep_ext_flags
from .linalg import FieldSpec, Matrix, Subspace
from .topo import PresentedSpace

# Rejection sampling gives up after this many draws and shrinks the object.
MAX_REJECTIONS = 64


def trial_rng(
    seed: int, p: int, law_index: int, trial: int, *extra: int
) -> np.random.Generator:
    """Independent generator for one (seed, field, law, trial) cell."""
    return np.random.default_rng(
        np.random.SeedSequence([seed, p, law_index, trial, *extra])
    )


def random_matrix(
    rng: np.random.Generator, field: FieldSpec, rows: int, cols: int
) -> Matrix:
    """Uniform residues."""
    return Matrix(field, rng.integers(0, field.p, size=(rows, cols)))


def random_invertible(
    rng: np.random.Generator, field: FieldSpec, size: int
) -> Matrix:
    """Uniform invertible matrix by rejection."""
    while True:
        candidate = random_matrix(rng, field, size, size)
        if candidate.is_invertible():
            return candidate


def random_object(
    rng: np.random.Generator,
    field: FieldSpec,
    max_dim: int,
    min_dim: int = 0,
) -> ChuObject:
    """Object with carrier dims in [min_dim, max_dim] and uniform P."""
    dim_a = int(rng.integers(min_dim, max_dim + 1))
    dim_x = int(rng.integers(min_dim, max_dim + 1))
    return ChuObject(
        field, dim_a, dim_x, random_matrix(rng, field, dim_a, dim_x)
    )


def _rejection(
    rng: np.random.Generator,
    field: FieldSpec,
    max_dim: int,
    accept: Callable[[ChuObject], bool],
    shape: Callable[[int], tuple],
) -> ChuObject:
    for dim in range(max_dim, -1, -1):
        for _ in range(MAX_REJECTIONS):
            size = int(rng.integers(0, dim + 1))
            dim_a, dim_x = shape(size)
            candidate = ChuObject(
                field,
                dim_a,
                dim_x,
                random_matrix(rng, field, dim_a, dim_x),
            )
            if accept(candidate):
                return candidate
    return ChuObject(field, 0, 0, Matrix.zeros(field, 0, 0))


def random_sep_ext(
    rng: np.random.Generator, field: FieldSpec, max_dim: int
) -> ChuObject:
    """Separated and extensional object (square invertible pairing)."""

    def accept(obj: ChuObject) -> bool:
        flags = sep_ext_flags(obj)
        return flags.separated and flags.extensional

    return _rejection(
        rng, field, max_dim, accept, lambda size: (size, size)
    )


def random_separated(
    rng: np.random.Generator, field: FieldSpec, max_dim: int
) -> ChuObject:
    """Separated object: rank P = dim A <= dim X."""

    def shape(size: int) -> tuple:
        return (int(rng.integers(0, size + 1)), size)

    return _rejection(
        rng,
        field,
        max_dim,
        lambda obj: sep_ext_flags(obj).separated,
        shape,
    )


def random_extensional(
    rng: np.random.Generator, field: FieldSpec, max_dim: int
) -> ChuObject:
    """Extensional object: rank P = dim X <= dim A."""

    def shape(size: int) -> tuple:
        return (size, int(rng.integers(0, size + 1)))

    return _rejection(
        rng,
        field,
        max_dim,
        lambda obj: sep_ext_flags(obj).extensional,
        shape,
    )


def random_presented(
    rng: np.random.Generator,
    field: FieldSpec,
    max_factors: int,
    max_factor_dim: int,
    max_rows: Optional[int] = None,
) -> PresentedSpace:
    """Random factor shape and the span of a few random ambient rows."""
    count = int(rng.integers(0, max_factors + 1))
    factors = tuple(
        int(rng.integers(1, max_factor_dim + 1)) for _ in range(count)
    )
    total = sum(factors)
    rows = total if max_rows is None else min(total, max_rows)
    generators = random_matrix(
        rng, field, int(rng.integers(0, rows + 1)), total
    )
    return PresentedSpace(
        field, factors, Subspace.span(field, total, generators)
    )
