"""
Law: Reflector Adjointness

Precomposing with the unit T -> S T gives Hom(S T, U) = Hom(T, U) for
separated U, and postcomposing with the counit E T -> T gives
Hom(U, E T) = Hom(U, T) for extensional U.
"""

from typing import Any, Dict, List

from chulaws.core.base import LawCheck, TrialContext
from chulaws.core.chu import EXTENSIONAL, SEPARATED, sep_ext_flags
from chulaws.core.sampling import (
    random_extensional,
    random_object,
    random_separated,
)
from chulaws.core.witness import reflector_transport


class ReflectorAdjointnessCheck(LawCheck):
    """Transport along the S unit and the E counit is bijective."""

    law_id = "L7"
    name = "reflector-adjointness"
    version = "1.0.0"
    roles = ["T", "U_sep", "U_ext"]

    def sample(self, context: TrialContext) -> Dict[str, Any]:
        """An arbitrary T, a separated U and an extensional U."""
        size = self.trial_max_dim(context)
        rng, field = context.rng, context.field
        return {
            "T": random_object(rng, field, size),
            "U_sep": random_separated(rng, field, size),
            "U_ext": random_extensional(rng, field, size),
        }

    def verify(self, objects: Dict[str, Any]) -> List[str]:
        """Each transport matrix must be square and invertible."""
        t = objects["T"]
        problems = []
        if not sep_ext_flags(objects["U_sep"]).separated:
            problems.append("U_sep is not separated")
        if not sep_ext_flags(objects["U_ext"]).extensional:
            problems.append("U_ext is not extensional")
        if problems:
            return problems
        for side, u, label in (
            (SEPARATED, objects["U_sep"], "Hom(S T, U) -> Hom(T, U)"),
            (EXTENSIONAL, objects["U_ext"], "Hom(U, E T) -> Hom(U, T)"),
        ):
            reflected, plain, transport = reflector_transport(t, u, side)
            if reflected.dim != plain.dim:
                problems.append(
                    f"{label}: dimensions {reflected.dim} and {plain.dim}"
                )
            elif not transport.is_invertible():
                problems.append(f"{label} is not bijective")
        return problems
