"""
Law: Involution

Dualizing twice gives back the object: (A, X, P)** = (A, X, P).
"""

from typing import Any, Dict, List

from chulaws.core.base import LawCheck, TrialContext
from chulaws.core.chu import dual, dual_morphism, identity_morphism
from chulaws.core.sampling import random_object


class InvolutionCheck(LawCheck):
    """(T*)* = T on objects and on the identity morphism."""

    law_id = "L1"
    name = "involution"
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
        """Compare T** with T."""
        t = objects["T"]
        problems = []
        if dual(dual(t)) != t:
            problems.append("(T*)* differs from T")
        ident = identity_morphism(t)
        if dual_morphism(dual_morphism(ident)) != ident:
            problems.append("dualizing id_T twice does not give id_T")
        return problems
