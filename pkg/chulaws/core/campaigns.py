"""
Seeded check campaigns outside the law catalog.

Each campaign draws its inputs from ``trial_rng`` with a campaign index
of its own, runs a family of checks and folds the result into a single
CheckOutcome whose counterexample is the first failing input.
"""

from itertools import product as cartesian
from typing import Any, Dict, List, Optional

from .base import CheckOutcome
from .canned import adjoint_triple_chain, identity_triple
from .fincat import (
    CategoryError,
    NotCommuting,
    SituationData,
    chain_category,
    check_2adj,
    check_corollaries,
    check_theorem,
    indiscrete_category,
    instance_failures,
    invert_square,
    parallel_pair_category,
    product_category,
)
from .linalg import FieldSpec, Matrix, iter_vectors, kernel
from .modules import (
    EXTENSIONAL,
    SEPARATED,
    NoExtension,
    RingSpec,
    baer_adjunction_check,
    chuK_dual,
    chuK_flags,
    chuK_hom_basis,
    chuK_left_kernel,
    chuK_reduce,
    cogenerator_embed,
    cyclic,
    direct_sum,
    dual_module,
    embed_cyclic,
    extend_hom,
    find_isomorphism,
    free_module,
    jordan_type,
    random_hom,
    random_module,
    random_submodule,
    regular_pairing,
    self_dual_iso,
    tensor_K,
    zero_module,
)
from .sampling import (
    random_invertible,
    random_matrix,
    random_presented,
    random_sep_ext,
    trial_rng,
)
from .theorem import (
    check_FR_identity,
    check_RF_equals_sigma,
    check_RFR,
    end_of_K_check,
)
from .topo import (
    DEFAULT_CERTIFIED_LIMIT,
    FunctionalP,
    MorphismP,
    PresentedSpace,
    enumerate_presented,
    factor_functional,
    factorization_holds,
    hom_functionals,
    is_weak_iso,
    minimal_J_oracle,
    product_morphism,
    pullback_weak_iso,
    sigma,
)

# Campaign indices share the SeedSequence slot used by law indices 1..10.
CAMPAIGN_INDEX = {
    "fr_identity": 101,
    "rf_sigma": 102,
    "factorization": 103,
    "topo_closure": 104,
    "selfinjective": 111,
    "cogenerator": 112,
    "baer": 113,
}


class _Collector:
    """Accumulate problems and keep the first counterexample."""

    def __init__(self) -> None:
        self.problems: List[str] = []
        self.counterexample: Optional[Dict[str, Any]] = None

    def fail(self, message: str, witness: Optional[Dict[str, Any]]) -> None:
        self.problems.append(message)
        if self.counterexample is None and witness is not None:
            self.counterexample = witness

    def outcome(self, name: str, details: Dict[str, Any]) -> CheckOutcome:
        return CheckOutcome(
            name=name,
            passed=not self.problems,
            details=details,
            problems=self.problems,
            counterexample=self.counterexample,
        )


def fr_identity_campaign(
    field: FieldSpec,
    samples: int,
    max_dim: int,
    seed: int,
    certified_limit: int = DEFAULT_CERTIFIED_LIMIT,
) -> CheckOutcome:
    """FR = Id and RFR = R on seeded separated+extensional objects."""
    gate = end_of_K_check(field)
    if not gate.passed:
        return CheckOutcome("fr_identity", False, gate.details, gate.problems)
    found = _Collector()
    index = CAMPAIGN_INDEX["fr_identity"]
    for trial in range(samples):
        rng = trial_rng(seed, field.p, index, trial)
        obj = random_sep_ext(rng, field, max_dim)
        reports = (check_FR_identity(obj, certified_limit), check_RFR(obj))
        for report in reports:
            if not report.passed:
                found.fail(
                    f"trial {trial}: {report.problems[0]}",
                    {"trial": trial, "object": obj.to_json()},
                )
    return found.outcome(
        "fr_identity",
        {"p": field.p, "samples": samples, "max_dim": max_dim},
    )


def rf_sigma_campaign(
    field: FieldSpec,
    samples: int,
    seed: int,
    max_factors: int = 3,
    max_factor_dim: int = 3,
) -> CheckOutcome:
    """RF = sigma on seeded presented spaces."""
    found = _Collector()
    index = CAMPAIGN_INDEX["rf_sigma"]
    for trial in range(samples):
        rng = trial_rng(seed, field.p, index, trial)
        space = random_presented(rng, field, max_factors, max_factor_dim)
        report = check_RF_equals_sigma(space)
        if not report.passed:
            found.fail(
                f"trial {trial}: {report.problems[0]}",
                {"trial": trial, "space": space.to_json()},
            )
    return found.outcome(
        "rf_sigma",
        {
            "p": field.p,
            "samples": samples,
            "max_factors": max_factors,
            "max_factor_dim": max_factor_dim,
        },
    )


def factorization_campaign(
    field: FieldSpec,
    samples: int,
    seed: int,
    corpus_factors: Optional[int] = None,
    certified_limit: int = DEFAULT_CERTIFIED_LIMIT,
) -> CheckOutcome:
    """
    factor_functional against the brute-force oracle.

    The corpus is every presented space with up to *corpus_factors*
    one-dimensional factors (5 over F_2, 3 otherwise), plus *samples*
    seeded spaces with up to six factors of dimension at most two. Each
    space is tried on its dual basis and one random functional. sigma
    idempotence is checked on the corpus as well.
    """
    if corpus_factors is None:
        corpus_factors = 5 if field.p == 2 else 3
    index = CAMPAIGN_INDEX["factorization"]
    corpus = enumerate_presented(field, corpus_factors, factor_dim=1)
    seeded = [
        random_presented(
            trial_rng(seed, field.p, index, trial), field, 6, 2, max_rows=4
        )
        for trial in range(samples)
    ]
    found = _Collector()
    functionals = 0
    for position, space in enumerate(corpus + seeded):
        rng = trial_rng(seed, field.p, index, position, 1)
        candidates = hom_functionals(space)
        candidates.append(
            FunctionalP(space, random_matrix(rng, field, 1, space.dim))
        )
        for phi in candidates:
            functionals += 1
            result = factor_functional(space, phi, certified_limit)
            oracle = minimal_J_oracle(space, phi, certified_limit)
            witness = {
                "space": space.to_json(),
                "phi": list(phi.coeffs.entries()),
            }
            if result.J != oracle:
                found.fail(
                    f"J = {list(result.J)} but the oracle gives "
                    f"{list(oracle)}",
                    witness,
                )
            if not factorization_holds(space, phi, result):
                found.fail("phi0 o pi_J != phi", witness)
        if position < len(corpus) and sigma(sigma(space)) != sigma(space):
            found.fail("sigma is not idempotent", {"space": space.to_json()})
    return found.outcome(
        "factorization",
        {
            "p": field.p,
            "corpus": len(corpus),
            "seeded": len(seeded),
            "functionals": functionals,
        },
    )


# Below this many candidate matrices the closure campaign enumerates them.
EXHAUSTIVE_MATRICES = 16


def _candidate_maps(
    rng, field: FieldSpec, rows: int, cols: int, draws: int
) -> List[Matrix]:
    """Every rows x cols matrix when few enough, else seeded draws."""
    if field.p ** (rows * cols) <= EXHAUSTIVE_MATRICES:
        return [
            Matrix.from_rows(
                field,
                [entries[r * cols : (r + 1) * cols] for r in range(rows)],
                cols=cols,
            )
            for entries in iter_vectors(field, rows * cols)
        ]
    zero = Matrix.zeros(field, rows, cols)
    return [zero] + [
        random_matrix(rng, field, rows, cols) for _ in range(draws)
    ]


def _weak_isos(rng, space: PresentedSpace, draws: int) -> List[MorphismP]:
    """Every automorphism of a small space, else seeded draws."""
    field, size = space.field, space.dim
    if field.p ** (size * size) <= EXHAUSTIVE_MATRICES:
        matrices = [
            m
            for m in _candidate_maps(rng, field, size, size, 0)
            if m.is_invertible()
        ]
    else:
        matrices = [
            random_invertible(rng, field, size) for _ in range(draws)
        ]
    return [MorphismP(space, space, m) for m in matrices]


def topo_closure_campaign(
    field: FieldSpec, seed: int, max_total: int = 4, draws: int = 2
) -> CheckOutcome:
    """
    Weak isomorphisms are closed under finite products and pullback.

    Runs over every pair of presented spaces whose ambient dimensions
    sum to at most *max_total*. Weak isomorphisms are all automorphisms
    when there are at most EXHAUSTIVE_MATRICES candidate matrices, and
    *draws* seeded ones otherwise; the same rule picks the maps that
    each weak isomorphism is pulled back along.
    """
    index = CAMPAIGN_INDEX["topo_closure"]
    spaces = enumerate_presented(field, max_total, factor_dim=None)
    found = _Collector()
    pairs = products = pullbacks = 0
    for position, (first, second) in enumerate(cartesian(spaces, repeat=2)):
        if first.ambient_dim + second.ambient_dim > max_total:
            continue
        pairs += 1
        rng = trial_rng(seed, field.p, index, position)
        isos_first = _weak_isos(rng, first, draws)
        isos_second = _weak_isos(rng, second, draws)
        witness = {"first": first.to_json(), "second": second.to_json()}
        for left in isos_first:
            for right in isos_second:
                products += 1
                if is_weak_iso(product_morphism([left, right])):
                    continue
                maps = [list(left.map.entries()), list(right.map.entries())]
                found.fail(
                    "product of weak isos is not a weak iso",
                    {**witness, "maps": maps},
                )
        along = _candidate_maps(rng, field, first.dim, second.dim, draws)
        for g in isos_first:
            for matrix in along:
                pullbacks += 1
                f = MorphismP(second, first, matrix)
                if pullback_weak_iso(f, g).weak_iso:
                    continue
                found.fail(
                    "pullback of a weak iso is not a weak iso",
                    {
                        **witness,
                        "f": list(matrix.entries()),
                        "g": list(g.map.entries()),
                    },
                )
    return found.outcome(
        "topo_closure",
        {
            "p": field.p,
            "spaces": len(spaces),
            "pairs": pairs,
            "products": products,
            "pullbacks": pullbacks,
        },
    )


def selfinjective_campaign(
    ring: RingSpec, samples: int, max_dim: int, seed: int
) -> CheckOutcome:
    """Extend seeded maps A -> K along seeded injections A -> B."""
    free = free_module(ring)
    index = CAMPAIGN_INDEX["selfinjective"]
    found = _Collector()
    no_extension = 0
    for trial in range(samples):
        rng = trial_rng(seed, ring.p, index, trial, ring.n)
        big = random_module(rng, ring, max_dim)
        small, inclusion = random_submodule(rng, big)
        phi = random_hom(rng, small, free)
        witness = {
            "trial": trial,
            "B": big.to_json(),
            "A": small.to_json(),
            "inclusion": inclusion.map.to_lists(),
            "phi": phi.map.to_lists(),
        }
        try:
            psi = extend_hom(inclusion, phi)
        except NoExtension as exc:
            no_extension += 1
            found.fail(f"trial {trial}: {exc}", witness)
            continue
        if inclusion.then(psi).map != phi.map:
            found.fail(f"trial {trial}: psi o incl != phi", witness)
    return found.outcome(
        "selfinjective",
        {
            "p": ring.p,
            "n": ring.n,
            "samples": samples,
            "max_dim": max_dim,
            "no_extension": no_extension,
        },
    )


def cogenerator_campaign(
    ring: RingSpec, samples: int, max_dim: int, seed: int
) -> CheckOutcome:
    """
    Embed seeded modules into K^r, and check every embed_cyclic.

    r may not exceed the number of cyclic summands, which is dim ker X.
    """
    found = _Collector()
    free = free_module(ring)
    for order in range(1, ring.n + 1):
        embed = embed_cyclic(ring, order)
        for j in range(order):
            column = [embed.map.entry(r, j) for r in range(ring.n)]
            expected = [int(r == ring.n - order + j) for r in range(ring.n)]
            if column != expected:
                found.fail(
                    f"embed_cyclic({order}) sends x^{j} m to {column}",
                    {"order": order},
                )
        if not embed.is_injective():
            found.fail(f"embed_cyclic({order}) is not injective", None)
        if not (free.action.power(order) @ embed.map).is_zero():
            found.fail(f"x^{order} does not kill embed_cyclic({order})", None)
    index = CAMPAIGN_INDEX["cogenerator"]
    largest = 0
    for trial in range(samples):
        module = random_module(
            trial_rng(seed, ring.p, index, trial, ring.n), ring, max_dim
        )
        embedding = cogenerator_embed(module)
        summands = kernel(module.action).dim
        largest = max(largest, embedding.count)
        witness = {"trial": trial, "module": module.to_json()}
        if not embedding.map.is_injective():
            found.fail(f"trial {trial}: embedding not injective", witness)
        if embedding.count > summands:
            found.fail(
                f"trial {trial}: r = {embedding.count} exceeds "
                f"{summands} cyclic summands",
                witness,
            )
    return found.outcome(
        "cogenerator",
        {
            "p": ring.p,
            "n": ring.n,
            "samples": samples,
            "max_dim": max_dim,
            "max_r": largest,
        },
    )


def self_dual_campaign(ring: RingSpec) -> CheckOutcome:
    """self_dual_iso, and K/(x^i) isomorphic to its dual for every i."""
    found = _Collector()
    iso = self_dual_iso(ring)
    free = free_module(ring)
    codual = dual_module(free)
    if iso.map.rank != ring.n:
        found.fail(f"self_dual_iso has rank {iso.map.rank}", None)
    if iso.map @ free.action != codual.action @ iso.map:
        found.fail("self_dual_iso does not commute with x", None)
    for order in range(1, ring.n + 1):
        module = cyclic(ring, order)
        if find_isomorphism(module, dual_module(module)) is None:
            found.fail(
                f"K/(x^{order}) is not isomorphic to its dual",
                {"order": order},
            )
    return found.outcome("selfdual", {"p": ring.p, "n": ring.n})


def _tensor_dim_oracle(field: FieldSpec, first: int, second: int) -> int:
    """dim K/(x^i) (x)_K K/(x^j) by spelling out the balancing relations."""
    size = first * second
    if size == 0:
        return 0
    rows = []
    for a, b in cartesian(range(first), range(second)):
        row = [0] * size
        if a + 1 < first:
            row[(a + 1) * second + b] += 1
        if b + 1 < second:
            row[a * second + b + 1] -= 1
        rows.append(row)
    return size - Matrix.from_rows(field, rows, cols=size).rank


def tensor_table_campaign(ring: RingSpec) -> CheckOutcome:
    """dim(K/(x^i) (x) K/(x^j)) = min(i, j) and K (x) M = M."""
    found = _Collector()
    field = ring.field
    free = free_module(ring)
    table: List[List[int]] = []
    for i in range(1, ring.n + 1):
        row = []
        for j in range(1, ring.n + 1):
            dim = tensor_K(cyclic(ring, i), cyclic(ring, j)).dim
            row.append(dim)
            oracle = _tensor_dim_oracle(field, i, j)
            if not dim == oracle == min(i, j):
                found.fail(
                    f"dim K/(x^{i}) (x) K/(x^{j}) = {dim}, oracle "
                    f"{oracle}, expected {min(i, j)}",
                    {"i": i, "j": j},
                )
        table.append(row)
    samples = [zero_module(ring), free]
    samples.extend(cyclic(ring, i) for i in range(1, ring.n + 1))
    samples.append(direct_sum(ring, [cyclic(ring, 1), free]))
    for module in samples:
        if jordan_type(tensor_K(free, module)) != jordan_type(module):
            found.fail("K (x)_K M is not M", {"module": module.to_json()})
        top = tensor_K(cyclic(ring, 1), module).dim
        if top != module.dim - module.action.rank:
            found.fail(
                "K/(x) (x)_K M is not M/xM", {"module": module.to_json()}
            )
    return found.outcome(
        "tensor_table", {"p": ring.p, "n": ring.n, "table": table}
    )


def baer_campaign(
    ring: RingSpec, samples: int, max_dim: int, seed: int
) -> CheckOutcome:
    """Hom_K(B, Hom_k(K, k)) = Hom_k(K (x)_K B, k) on fixed and seeded B."""
    found = _Collector()
    modules = [free_module(ring), cyclic(ring, 1), zero_module(ring)]
    index = CAMPAIGN_INDEX["baer"]
    modules.extend(
        random_module(trial_rng(seed, ring.p, index, t, ring.n), ring, max_dim)
        for t in range(samples)
    )
    for position, module in enumerate(modules):
        report = baer_adjunction_check(module)
        if not report.passed:
            found.fail(
                f"module {position}: {report.problems[0]}",
                {"module": module.to_json()},
            )
    return found.outcome(
        "baer",
        {"p": ring.p, "n": ring.n, "modules": len(modules)},
    )


def chuK_campaign(ring: RingSpec) -> CheckOutcome:
    """Regular and shifted K-valued pairings on K x K."""
    found = _Collector()
    regular = regular_pairing(ring)
    details: Dict[str, Any] = {"p": ring.p, "n": ring.n}
    if chuK_flags(regular) != (True, True):
        found.fail("regular pairing is not separated and extensional", None)
    if chuK_dual(chuK_dual(regular)) != regular:
        found.fail("dual is not an involution", None)
    hom_dim = chuK_hom_basis(regular, regular).dim
    details["dim_end_regular"] = hom_dim
    if hom_dim != ring.n:
        found.fail(f"End of the regular pairing has dim {hom_dim}", None)
    if ring.n >= 2:
        shifted = regular_pairing(ring, shift=1)
        radical = chuK_left_kernel(shifted).dim
        details["shifted_left_kernel"] = radical
        if radical != 1:
            found.fail(
                f"x-shifted pairing has left kernel dim {radical}", None
            )
        for side in (SEPARATED, EXTENSIONAL):
            reduced, _ = chuK_reduce(shifted, side)
            flags = chuK_flags(reduced)
            wanted = flags[0] if side == SEPARATED else flags[1]
            if not wanted:
                found.fail(f"{side} reduction did not reach {side}", None)
            if reduced.left.dim + reduced.right.dim != 2 * ring.n - 1:
                found.fail(f"{side} reduction removed the wrong amount", None)
    return found.outcome("chuK", details)


def appendix_campaign(situation: SituationData) -> List[CheckOutcome]:
    """validate_instance, the theorem and its corollaries."""
    failures = instance_failures(situation)
    validation = CheckOutcome(
        "appendix_instance",
        not failures,
        {
            "instance": situation.name,
            "objects": len(situation.C.objects),
            "arrows": len(situation.C.arrows),
        },
        failures,
    )
    return [
        validation,
        check_theorem(situation),
        check_corollaries(situation),
    ]


def two_adjoint_campaign() -> CheckOutcome:
    """ff(L) iff ff(R) on the canned chain triple and identity triples."""
    found = _Collector()
    cases = {
        "chain": adjoint_triple_chain(),
        "identity_chain3": identity_triple(chain_category(3)),
        "identity_parallel": identity_triple(parallel_pair_category()),
    }
    details: Dict[str, Any] = {}
    for label, (lower, upper) in cases.items():
        report = check_2adj(lower, upper)
        details[label] = report.details
        for problem in report.problems:
            found.fail(f"{label}: {problem}", {"case": label})
    return found.outcome("2adj", details)


def square_campaign() -> CheckOutcome:
    """invert_square on identity, half-invertible and invertible squares."""
    found = _Collector()
    details: Dict[str, Any] = {}
    grid = product_category(indiscrete_category(["A", "B"]), chain_category(2))
    ident = grid.identity(("A", "0"))
    trivial = invert_square(grid, ident, ident, ident, ident)
    details["identity"] = trivial.half[0] == ident
    if trivial.half != (ident, ident):
        found.fail("identity square does not invert to identities", None)
    half = invert_square(
        grid,
        ("A->B", "0<=0"),
        ("B->B", "0<=1"),
        ("A->A", "0<=1"),
        ("A->B", "1<=1"),
    )
    details["half_only"] = half.full is None
    if half.full is not None:
        found.fail("a non-invertible square was fully inverted", None)
    loose = indiscrete_category(["a", "b", "c", "d"])
    full = invert_square(loose, "a->b", "b->d", "a->c", "c->d")
    details["full"] = full.full is not None
    if full.full is None:
        found.fail("an all-iso square was not fully inverted", None)
    pair = parallel_pair_category()
    try:
        invert_square(pair, "id_a", "u", "id_a", "v")
    except NotCommuting:
        details["rejects_non_commuting"] = True
    except CategoryError as exc:
        found.fail(f"wrong error for a non-commuting square: {exc}", None)
    else:
        found.fail("a non-commuting square was accepted", None)
    return found.outcome("invert_square", details)
