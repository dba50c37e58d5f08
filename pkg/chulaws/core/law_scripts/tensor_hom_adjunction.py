"""
Law: Tensor-Hom Adjunction

Hom(T (x) U, V) and Hom(T, U -o V) have the same dimension, and the
transpose maps each basis of one into the other, inverting the reverse
transpose.
"""

from typing import Any, Dict, List

from chulaws.core.base import LawCheck, TrialContext
from chulaws.core.linalg import Matrix
from chulaws.core.sampling import random_object
from chulaws.core.witness import TensorHomAdjunction


class TensorHomAdjunctionCheck(LawCheck):
    """Curry and uncurry are mutually inverse on hom bases."""

    law_id = "L3"
    name = "tensor-hom-adjunction"
    version = "1.0.0"
    roles = ["T", "U", "V"]

    def sample(self, context: TrialContext) -> Dict[str, Any]:
        """Three unconstrained objects."""
        size = self.trial_max_dim(context)
        return {
            role: random_object(context.rng, context.field, size)
            for role in self.roles
        }

    def verify(self, objects: Dict[str, Any]) -> List[str]:
        """Dimension equality, then both composites are identities."""
        adjunction = TensorHomAdjunction(
            objects["T"], objects["U"], objects["V"]
        )
        left, right = adjunction.left.dim, adjunction.right.dim
        if left != right:
            return [
                f"dim Hom(T (x) U, V) = {left} but "
                f"dim Hom(T, U -o V) = {right}"
            ]
        curry = adjunction.curry_matrix()
        uncurry = adjunction.uncurry_matrix()
        ident = Matrix.identity(adjunction.field, left)
        problems = []
        if uncurry @ curry != ident:
            problems.append("uncurry o curry is not the identity")
        if curry @ uncurry != ident:
            problems.append("curry o uncurry is not the identity")
        return problems
