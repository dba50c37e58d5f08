"""
Law: Separated/Extensional Closure

On separated and extensional inputs, T -o U and T (x) U are separated and
extensional again. With ``unrestricted: true`` the inputs are drawn
without that restriction, which turns the claim into an experiment that
does produce counterexamples.
"""

from typing import Any, Dict, List

from chulaws.core.base import LawCheck, TrialContext
from chulaws.core.chu import internal_hom, sep_ext_flags, tensor
from chulaws.core.sampling import random_object, random_sep_ext


class SepExtClosureCheck(LawCheck):
    """Rank checks on the pairings of the hom and tensor objects."""

    law_id = "L6"
    name = "sep-ext-closure"
    version = "1.0.0"
    roles = ["T", "U"]

    def _unrestricted(self) -> bool:
        return bool(self.get_option("unrestricted", False))

    def sample(self, context: TrialContext) -> Dict[str, Any]:
        """Two separated and extensional objects (or two arbitrary ones)."""
        size = self.trial_max_dim(context)
        draw = random_object if self._unrestricted() else random_sep_ext
        return {
            role: draw(context.rng, context.field, size)
            for role in self.roles
        }

    def verify(self, objects: Dict[str, Any]) -> List[str]:
        """Both outputs must have full row and column rank."""
        t, u = objects["T"], objects["U"]
        if not self._unrestricted():
            for role in self.roles:
                flags = sep_ext_flags(objects[role])
                if not (flags.separated and flags.extensional):
                    return [f"{role} is not separated and extensional"]
        problems = []
        for label, built in (
            ("T -o U", internal_hom(t, u)),
            ("T (x) U", tensor(t, u)),
        ):
            flags = sep_ext_flags(built)
            if not flags.separated:
                problems.append(f"{label} is not separated")
            if not flags.extensional:
                problems.append(f"{label} is not extensional")
        return problems
