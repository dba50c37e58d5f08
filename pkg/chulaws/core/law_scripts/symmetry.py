"""
Law: Symmetry

T (x) U is isomorphic to U (x) T, and swapping twice is the identity.
"""

from typing import Any, Dict, List

from chulaws.core.base import LawCheck, TrialContext
from chulaws.core.chu import compose
from chulaws.core.linalg import Matrix
from chulaws.core.sampling import random_object
from chulaws.core.witness import confirm_iso, symmetry_witness


class SymmetryCheck(LawCheck):
    """Confirm the braiding and that it squares to the identity."""

    law_id = "L5"
    name = "symmetry"
    version = "1.0.0"
    roles = ["T", "U"]

    def sample(self, context: TrialContext) -> Dict[str, Any]:
        """Two unconstrained objects."""
        size = self.trial_max_dim(context)
        return {
            role: random_object(context.rng, context.field, size)
            for role in self.roles
        }

    def verify(self, objects: Dict[str, Any]) -> List[str]:
        """Check the swap one way, then the round trip."""
        t, u = objects["T"], objects["U"]
        forward = symmetry_witness(t, u)
        problems = confirm_iso(forward)
        if problems:
            return problems
        round_trip = compose(symmetry_witness(u, t), forward)
        field = t.field
        if round_trip.f != Matrix.identity(field, round_trip.f.rows):
            problems.append("swap o swap is not the identity on A kron B")
        if round_trip.g != Matrix.identity(field, round_trip.g.rows):
            problems.append("swap o swap is not the identity on Hom")
        return problems
