"""
Law: Compact Closure

For separated and extensional U and V (plain finite-dimensional spaces
with a perfect pairing), the first carrier of (U -o V)* is isomorphic to
Hom(V, U) through the rank-one maps a (Q y)^T, and the trace pairing
between Hom(U, V) and Hom(V, U) is perfect.
"""

from typing import Any, Dict, List

from chulaws.core.base import LawCheck, TrialContext
from chulaws.core.chu import dual, internal_hom, sep_ext_flags
from chulaws.core.sampling import random_sep_ext
from chulaws.core.witness import compact_closure_map, trace_gram


class CompactClosureCheck(LawCheck):
    """The rank-one map and the trace Gram matrix are invertible."""

    law_id = "L9"
    name = "compact-closure"
    version = "1.0.0"
    roles = ["U", "V"]

    def sample(self, context: TrialContext) -> Dict[str, Any]:
        """Two separated and extensional objects."""
        size = self.trial_max_dim(context)
        return {
            role: random_sep_ext(context.rng, context.field, size)
            for role in self.roles
        }

    def verify(self, objects: Dict[str, Any]) -> List[str]:
        """Compare (U -o V)* with V -o U as vector spaces."""
        u, v = objects["U"], objects["V"]
        for role in self.roles:
            flags = sep_ext_flags(objects[role])
            if not (flags.separated and flags.extensional):
                return [f"{role} is not separated and extensional"]
        problems = []
        dualized = dual(internal_hom(u, v))
        reverse = internal_hom(v, u)
        if dualized.dim_a != reverse.dim_a:
            problems.append(
                f"(U -o V)* has carrier dim {dualized.dim_a}, "
                f"V -o U has {reverse.dim_a}"
            )
        elif not compact_closure_map(u, v).is_invertible():
            problems.append("a kron y -> a (Q y)^T is not bijective")
        if not trace_gram(u.field, u.dim_a, v.dim_a).is_invertible():
            problems.append("the trace pairing is degenerate")
        return problems
