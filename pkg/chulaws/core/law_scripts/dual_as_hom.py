"""
Law: Dual as Hom

T* is isomorphic to T -o (K, top), where (K, top) is the unit (1, 1, [1]).
"""

from typing import Any, Dict, List

from chulaws.core.base import LawCheck, TrialContext
from chulaws.core.sampling import random_object
from chulaws.core.witness import confirm_iso, dual_as_hom_witness


class DualAsHomCheck(LawCheck):
    """Confirm the canonical map T* -> T -o unit."""

    law_id = "L2"
    name = "dual-as-hom"
    version = "1.0.0"
    roles = ["T"]

    def sample(self, context: TrialContext) -> Dict[str, Any]:
        """One unconstrained object."""
        return {
            "T": random_object(
                context.rng, context.field, self.trial_max_dim(context)
            )
        }

    def verify(self, objects: Dict[str, Any]) -> List[str]:
        """The witness must be a confirmed isomorphism."""
        return confirm_iso(dual_as_hom_witness(objects["T"]))
