"""
Law: Tensor Unit

(top, K) (x) T is isomorphic to T.
"""

from typing import Any, Dict, List

from chulaws.core.base import LawCheck, TrialContext
from chulaws.core.sampling import random_object
from chulaws.core.witness import confirm_iso, unit_witness


class TensorUnitCheck(LawCheck):
    """Confirm the left unitor."""

    law_id = "L4"
    name = "tensor-unit"
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
        """The unitor must be a confirmed isomorphism."""
        return confirm_iso(unit_witness(objects["T"]))
