"""
Law: Associativity

(T (x) U) (x) W is isomorphic to T (x) (U (x) W) through the Kronecker
reindexing witness.
"""

from typing import Any, Dict, List

from chulaws.core.base import LawCheck, TrialContext
from chulaws.core.sampling import random_object
from chulaws.core.witness import associativity_witness, confirm_iso


class AssociativityCheck(LawCheck):
    """Confirm the associator."""

    law_id = "L10"
    name = "associativity"
    version = "1.0.0"
    roles = ["T", "U", "W"]

    def sample(self, context: TrialContext) -> Dict[str, Any]:
        """Three unconstrained objects."""
        size = self.trial_max_dim(context)
        return {
            role: random_object(context.rng, context.field, size)
            for role in self.roles
        }

    def verify(self, objects: Dict[str, Any]) -> List[str]:
        """The associator must be a confirmed isomorphism."""
        return confirm_iso(
            associativity_witness(objects["T"], objects["U"], objects["W"])
        )
