"""
Bundled finite-category instances and situation files.
"""

import json
from dataclasses import replace
from pathlib import Path
from typing import Any, Callable, Dict, Tuple

from .fincat import (
    Adjunction,
    CategoryError,
    FinCat,
    FinFunctor,
    NatTrans,
    SituationData,
    chain_category,
    compose_functors,
    decode_label,
    full_subcategory,
    identity_functor,
    monotone_functor,
    parallel_pair_category,
    product_category,
    terminal_category,
    thin_adjunction,
)

FUNCTOR_ENDS = {
    "I": ("B", "C"),
    "J": ("D", "C"),
    "S": ("C", "B"),
    "T": ("C", "D"),
}


def trivial_situation() -> SituationData:
    """Everything is the one-object, one-arrow category."""
    cat = terminal_category()
    sub_b, incl_b = full_subcategory(cat, cat.objects, "B")
    sub_d, incl_d = full_subcategory(cat, cat.objects, "D")
    reflect = FinFunctor("S", cat, sub_b, {"*": "*"}, {"id": "id"})
    coreflect = FinFunctor("T", cat, sub_d, {"*": "*"}, {"id": "id"})
    ident = {"*": "id"}
    return SituationData(
        name="trivial",
        C=cat,
        B=sub_b,
        D=sub_d,
        I=incl_b,
        J=incl_d,
        S=reflect,
        T=coreflect,
        alpha=NatTrans(
            "alpha",
            identity_functor(cat),
            compose_functors(incl_b, reflect),
            ident,
        ),
        beta=NatTrans(
            "beta",
            compose_functors(reflect, incl_b),
            identity_functor(sub_b),
            ident,
        ),
        delta=NatTrans(
            "delta",
            identity_functor(sub_d),
            compose_functors(coreflect, incl_d),
            ident,
        ),
        epsilon=NatTrans(
            "epsilon",
            compose_functors(incl_d, coreflect),
            identity_functor(cat),
            ident,
        ),
    )


def reflective_chain_situation(base: FinCat, name: str) -> SituationData:
    """
    ``C = base x (0 <= 1)`` with ``B = base x {1}`` and ``D = base x {0}``.

    S pushes everything to level 1 and T to level 0; alpha and epsilon
    are the level arrows ``(id, i<=1)`` and ``(id, 0<=i)``.
    """
    cat = product_category(base, chain_category(2))
    top = [(m, "1") for m in base.objects]
    bottom = [(m, "0") for m in base.objects]
    sub_b, incl_b = full_subcategory(cat, top, "B")
    sub_d, incl_d = full_subcategory(cat, bottom, "D")
    reflect = FinFunctor(
        "S",
        cat,
        sub_b,
        {(m, i): (m, "1") for m, i in cat.objects},
        {(f, r): (f, "1<=1") for f, r in cat.arrows},
    )
    coreflect = FinFunctor(
        "T",
        cat,
        sub_d,
        {(m, i): (m, "0") for m, i in cat.objects},
        {(f, r): (f, "0<=0") for f, r in cat.arrows},
    )
    return SituationData(
        name=name,
        C=cat,
        B=sub_b,
        D=sub_d,
        I=incl_b,
        J=incl_d,
        S=reflect,
        T=coreflect,
        alpha=NatTrans(
            "alpha",
            identity_functor(cat),
            compose_functors(incl_b, reflect),
            {(m, i): (base.identity(m), f"{i}<=1") for m, i in cat.objects},
        ),
        beta=NatTrans(
            "beta",
            compose_functors(reflect, incl_b),
            identity_functor(sub_b),
            {b: sub_b.identity(b) for b in sub_b.objects},
        ),
        delta=NatTrans(
            "delta",
            identity_functor(sub_d),
            compose_functors(coreflect, incl_d),
            {d: sub_d.identity(d) for d in sub_d.objects},
        ),
        epsilon=NatTrans(
            "epsilon",
            compose_functors(incl_d, coreflect),
            identity_functor(cat),
            {(m, i): (base.identity(m), f"0<={i}") for m, i in cat.objects},
        ),
    )


def chain_situation() -> SituationData:
    """The two-object poset ``0 <= 1`` with B = {1} and D = {0}."""
    return reflective_chain_situation(terminal_category(), "chain")


def parallel_situation() -> SituationData:
    """A non-thin instance: the parallel pair times ``0 <= 1``."""
    return reflective_chain_situation(parallel_pair_category(), "parallel")


CANNED: Dict[str, Callable[[], SituationData]] = {
    "trivial": trivial_situation,
    "chain": chain_situation,
    "parallel": parallel_situation,
}


def adjoint_triple_chain() -> Tuple[Adjunction, Adjunction]:
    """
    ``L -| F -| R`` with F the embedding ``0, 1 -> 0, 2`` of chains.

    L and R both fail to be fully faithful.
    """
    two, three = chain_category(2), chain_category(3)
    embed = monotone_functor("F", two, three, {"0": "0", "1": "2"})
    left = monotone_functor("L", three, two, {"0": "0", "1": "1", "2": "1"})
    right = monotone_functor("R", three, two, {"0": "0", "1": "0", "2": "1"})
    return thin_adjunction(left, embed), thin_adjunction(embed, right)


def identity_triple(category: FinCat) -> Tuple[Adjunction, Adjunction]:
    """``Id -| Id -| Id`` on any category."""
    ident = identity_functor(category)
    units = {o: category.identity(o) for o in category.objects}
    adj = Adjunction(
        ident,
        ident,
        NatTrans("unit", ident, compose_functors(ident, ident), units),
        NatTrans("counit", compose_functors(ident, ident), ident, units),
    )
    return adj, adj


def situation_to_json(situation: SituationData) -> Dict[str, Any]:
    """All categories, functors and components of a situation."""
    s = situation
    return {
        "name": s.name,
        "categories": {
            "C": s.C.to_json(),
            "B": s.B.to_json(),
            "D": s.D.to_json(),
        },
        "functors": {k: getattr(s, k).to_json() for k in FUNCTOR_ENDS},
        "transformations": {
            k: getattr(s, k).to_json()
            for k in ("alpha", "beta", "delta", "epsilon")
        },
    }


def situation_from_json(payload: Dict[str, Any]) -> SituationData:
    """
    Rebuild a situation without validating it.

    Run ``validate_instance`` on the result to get every failure itemized.
    """
    cats = {
        k: FinCat.from_json(payload["categories"][k], validate=False)
        for k in ("C", "B", "D")
    }
    functors = {
        k: FinFunctor.from_json(
            payload["functors"][k], cats[src], cats[tgt], validate=False
        )
        for k, (src, tgt) in FUNCTOR_ENDS.items()
    }
    inc_b, inc_d = functors["I"], functors["J"]
    refl, corefl = functors["S"], functors["T"]
    ends = {
        "alpha": (identity_functor(cats["C"]), compose_functors(inc_b, refl)),
        "beta": (compose_functors(refl, inc_b), identity_functor(cats["B"])),
        "delta": (
            identity_functor(cats["D"]),
            compose_functors(corefl, inc_d),
        ),
        "epsilon": (
            compose_functors(inc_d, corefl),
            identity_functor(cats["C"]),
        ),
    }
    trans = {}
    for key, (src, tgt) in ends.items():
        raw = payload["transformations"][key]
        trans[key] = NatTrans(
            str(raw.get("name", key)),
            src,
            tgt,
            {decode_label(o): decode_label(c) for o, c in raw["components"]},
            validate=False,
        )
    return SituationData(
        name=str(payload.get("name", "situation")),
        C=cats["C"],
        B=cats["B"],
        D=cats["D"],
        I=inc_b,
        J=inc_d,
        S=refl,
        T=corefl,
        **trans,
    )


def load_situation(name_or_path: str) -> SituationData:
    """
    A canned situation by name, or a situation JSON file.

    Raises:
        CategoryError: for an unknown name or unreadable file
    """
    if name_or_path in CANNED:
        return CANNED[name_or_path]()
    path = Path(name_or_path)
    if not path.is_file():
        raise CategoryError(
            f"unknown situation {name_or_path!r}; canned: "
            f"{', '.join(sorted(CANNED))}"
        )
    try:
        payload = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise CategoryError(f"cannot read {path}: {exc}") from exc
    return situation_from_json(payload)


def with_components(
    situation: SituationData, which: str, replacements: Dict[Any, Any]
) -> SituationData:
    """Copy of ``situation`` with components of ``which`` replaced."""
    old: NatTrans = getattr(situation, which)
    components = dict(old.components)
    components.update(replacements)
    patched = NatTrans(
        old.name, old.source, old.target, components, validate=False
    )
    return replace(situation, **{which: patched})
