"""
Law: Dual of Internal Hom

(T -o U)* is isomorphic to T (x) U*.
"""

from typing import Any, Dict, List

from chulaws.core.base import LawCheck, TrialContext
from chulaws.core.sampling import random_object
from chulaws.core.witness import confirm_iso, dual_of_hom_witness


class DualOfHomCheck(LawCheck):
    """Confirm the identity-component witness."""

    law_id = "L8"
    name = "dual-of-hom"
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
        """The witness must be a confirmed isomorphism."""
        return confirm_iso(dual_of_hom_witness(objects["T"], objects["U"]))
