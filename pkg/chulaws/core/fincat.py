"""
Finite categories as explicit tables.

A FinCat stores its objects, named arrows, an identity per object and a
composition table keyed by ``(g, f)`` for ``g o f``. Functors and natural
transformations are dictionaries validated exhaustively against those
tables. On top of that sit adjunctions given by unit and counit, and the
reflective/coreflective situation whose comparison maps mu and nu are
checked to be mutually inverse.
"""

from dataclasses import dataclass
from itertools import product as cartesian
from typing import (
    Any,
    Callable,
    Dict,
    Hashable,
    Iterable,
    List,
    Optional,
    Sequence,
    Tuple,
)

from .base import CheckOutcome

Label = Hashable


class CategoryError(ValueError):
    """Base error for finite-category operations."""


class CategoryAxiomError(CategoryError):
    """A category, functor or transformation violates its axioms."""

    def __init__(self, subject: str, failures: Sequence[str]):
        self.subject = subject
        self.failures = list(failures)
        first = self.failures[0] if self.failures else "unknown"
        super().__init__(
            f"{subject}: {len(self.failures)} axiom failure(s); "
            f"first: {first}"
        )


class InstanceInvalid(CategoryError):
    """A situation fails its hypotheses."""

    def __init__(self, subject: str, failures: Sequence[str]):
        self.subject = subject
        self.failures = list(failures)
        first = self.failures[0] if self.failures else "unknown"
        super().__init__(
            f"{subject}: {len(self.failures)} failure(s); first: {first}"
        )


class NotIso(CategoryError):
    """An arrow required to be invertible is not."""


class NotCommuting(CategoryError):
    """A square does not commute."""


@dataclass(frozen=True)
class Arrow:
    """A named arrow with its endpoints."""

    name: Label
    source: Label
    target: Label


class FinCat:
    """
    A finite category given by tables.

    Args:
        name: Display name
        objects: Object labels
        arrows: All arrows, identities included
        identities: Identity arrow name per object
        composition: ``(g, f) -> g o f`` for every composable pair
        validate: Check the axioms exhaustively

    Raises:
        CategoryAxiomError: when validation finds failures
    """

    def __init__(
        self,
        name: str,
        objects: Sequence[Label],
        arrows: Iterable[Arrow],
        identities: Dict[Label, Label],
        composition: Dict[Tuple[Label, Label], Label],
        validate: bool = True,
    ):
        self.name = name
        self.objects: List[Label] = list(objects)
        self.arrows: Dict[Label, Arrow] = {a.name: a for a in arrows}
        self.identities: Dict[Label, Label] = dict(identities)
        self.composition: Dict[Tuple[Label, Label], Label] = dict(
            composition
        )
        self._homs: Dict[Tuple[Label, Label], List[Label]] = {
            (a, b): [] for a in self.objects for b in self.objects
        }
        for arrow in self.arrows.values():
            key = (arrow.source, arrow.target)
            if key in self._homs:
                self._homs[key].append(arrow.name)
        if validate:
            failures = self.axiom_failures()
            if failures:
                raise CategoryAxiomError(f"category {name}", failures)

    def __repr__(self) -> str:
        return (
            f"FinCat({self.name!r}, objects={len(self.objects)}, "
            f"arrows={len(self.arrows)})"
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FinCat):
            return NotImplemented
        return (
            set(self.objects) == set(other.objects)
            and self.arrows == other.arrows
            and self.identities == other.identities
            and self.composition == other.composition
        )

    __hash__ = None  # type: ignore[assignment]

    def source(self, arrow: Label) -> Label:
        return self._arrow(arrow).source

    def target(self, arrow: Label) -> Label:
        return self._arrow(arrow).target

    def identity(self, obj: Label) -> Label:
        """Identity arrow on ``obj``."""
        if obj not in self.identities:
            raise CategoryError(f"{obj!r} is not an object of {self.name}")
        return self.identities[obj]

    def hom(self, source: Label, target: Label) -> List[Label]:
        """Arrows ``source -> target`` in declaration order."""
        if (source, target) not in self._homs:
            raise CategoryError(
                f"({source!r}, {target!r}) are not objects of {self.name}"
            )
        return list(self._homs[(source, target)])

    def compose(self, second: Label, first: Label) -> Label:
        """``second o first``."""
        if self.target(first) != self.source(second):
            raise CategoryError(
                f"cannot compose {second!r} after {first!r}: "
                f"{self.target(first)!r} != {self.source(second)!r}"
            )
        try:
            return self.composition[(second, first)]
        except KeyError as exc:
            raise CategoryError(
                f"composition table of {self.name} has no entry for "
                f"({second!r}, {first!r})"
            ) from exc

    def compose_all(self, *arrows: Label) -> Label:
        """Compose right to left: ``compose_all(h, g, f) = h o g o f``."""
        if not arrows:
            raise CategoryError("compose_all needs at least one arrow")
        result = arrows[-1]
        for arrow in reversed(arrows[:-1]):
            result = self.compose(arrow, result)
        return result

    def is_identity(self, arrow: Label) -> bool:
        return self.identities.get(self.source(arrow)) == arrow

    def inverse(self, arrow: Label) -> Optional[Label]:
        """The two-sided inverse, or None."""
        start, end = self.source(arrow), self.target(arrow)
        for candidate in self.hom(end, start):
            if self.is_identity(
                self.compose(candidate, arrow)
            ) and self.is_identity(self.compose(arrow, candidate)):
                return candidate
        return None

    def is_iso(self, arrow: Label) -> bool:
        return self.inverse(arrow) is not None

    def require_inverse(self, arrow: Label) -> Label:
        """Inverse of ``arrow``; raises NotIso when there is none."""
        inverse = self.inverse(arrow)
        if inverse is None:
            raise NotIso(f"{arrow!r} is not an isomorphism in {self.name}")
        return inverse

    def axiom_failures(self) -> List[str]:
        """Exhaustive check of endpoints, identities and associativity."""
        failures: List[str] = []
        object_set = set(self.objects)
        if len(object_set) != len(self.objects):
            failures.append("duplicate object labels")
        for arrow in self.arrows.values():
            if arrow.source not in object_set:
                failures.append(f"{arrow.name!r} has unknown source")
            if arrow.target not in object_set:
                failures.append(f"{arrow.name!r} has unknown target")
        if failures:
            return failures
        for obj in self.objects:
            ident = self.identities.get(obj)
            arrow = self.arrows.get(ident)
            if arrow is None or arrow.source != obj or arrow.target != obj:
                failures.append(f"object {obj!r} has no valid identity")
        if failures:
            return failures
        composable = [
            (g, f)
            for f in self.arrows.values()
            for g in self.arrows.values()
            if f.target == g.source
        ]
        for g, f in composable:
            result = self.composition.get((g.name, f.name))
            arrow = self.arrows.get(result)
            if arrow is None:
                failures.append(f"{g.name!r} o {f.name!r} is undefined")
            elif arrow.source != f.source or arrow.target != g.target:
                failures.append(
                    f"{g.name!r} o {f.name!r} = {result!r} has the wrong "
                    "endpoints"
                )
        for second, first in self.composition:
            if (
                second not in self.arrows
                or first not in self.arrows
                or self.arrows[first].target != self.arrows[second].source
            ):
                failures.append(
                    f"table entry ({second!r}, {first!r}) is not composable"
                )
        if failures:
            return failures
        for arrow in self.arrows.values():
            left = self.identities[arrow.target]
            right = self.identities[arrow.source]
            if self.composition[(left, arrow.name)] != arrow.name:
                failures.append(f"id o {arrow.name!r} != {arrow.name!r}")
            if self.composition[(arrow.name, right)] != arrow.name:
                failures.append(f"{arrow.name!r} o id != {arrow.name!r}")
        for g, f in composable:
            gf = self.composition[(g.name, f.name)]
            for h in self.arrows.values():
                if h.source != g.target:
                    continue
                lhs = self.composition[(h.name, gf)]
                hg = self.composition[(h.name, g.name)]
                rhs = self.composition[(hg, f.name)]
                if lhs != rhs:
                    failures.append(
                        f"associativity fails on ({h.name!r}, {g.name!r}, "
                        f"{f.name!r})"
                    )
        return failures

    def to_json(self) -> Dict[str, Any]:
        """Objects, arrows, identities and the composition table."""
        return {
            "name": self.name,
            "objects": [encode_label(o) for o in self.objects],
            "arrows": [
                {
                    "id": encode_label(a.name),
                    "src": encode_label(a.source),
                    "tgt": encode_label(a.target),
                }
                for a in self.arrows.values()
            ],
            "identities": [
                [encode_label(o), encode_label(i)]
                for o, i in self.identities.items()
            ],
            "composition": [
                [encode_label(g), encode_label(f), encode_label(h)]
                for (g, f), h in self.composition.items()
            ],
        }

    @classmethod
    def from_json(
        cls, payload: Dict[str, Any], validate: bool = True
    ) -> "FinCat":
        """Inverse of ``to_json``."""
        return cls(
            name=str(payload.get("name", "C")),
            objects=[decode_label(o) for o in payload["objects"]],
            arrows=[
                Arrow(
                    decode_label(a["id"]),
                    decode_label(a["src"]),
                    decode_label(a["tgt"]),
                )
                for a in payload["arrows"]
            ],
            identities={
                decode_label(o): decode_label(i)
                for o, i in payload["identities"]
            },
            composition={
                (decode_label(g), decode_label(f)): decode_label(h)
                for g, f, h in payload["composition"]
            },
            validate=validate,
        )

    def _arrow(self, name: Label) -> Arrow:
        try:
            return self.arrows[name]
        except KeyError as exc:
            raise CategoryError(
                f"{name!r} is not an arrow of {self.name}"
            ) from exc


def encode_label(label: Label) -> Any:
    """Tuples become lists so labels survive JSON."""
    if isinstance(label, tuple):
        return [encode_label(part) for part in label]
    return label


def decode_label(raw: Any) -> Label:
    """Inverse of ``encode_label``."""
    if isinstance(raw, list):
        return tuple(decode_label(part) for part in raw)
    return raw


class FinFunctor:
    """
    A functor between finite categories.

    Raises:
        CategoryAxiomError: when ``validate`` is set and the maps do not
            preserve endpoints, identities or composition
    """

    def __init__(
        self,
        name: str,
        source: FinCat,
        target: FinCat,
        object_map: Dict[Label, Label],
        arrow_map: Dict[Label, Label],
        validate: bool = True,
    ):
        self.name = name
        self.source = source
        self.target = target
        self.object_map = dict(object_map)
        self.arrow_map = dict(arrow_map)
        if validate:
            failures = self.axiom_failures()
            if failures:
                raise CategoryAxiomError(f"functor {name}", failures)

    def __repr__(self) -> str:
        return (
            f"FinFunctor({self.name!r}: {self.source.name} -> "
            f"{self.target.name})"
        )

    def on_object(self, obj: Label) -> Label:
        try:
            return self.object_map[obj]
        except KeyError as exc:
            raise CategoryError(
                f"{self.name} is undefined on object {obj!r}"
            ) from exc

    def on_arrow(self, arrow: Label) -> Label:
        try:
            return self.arrow_map[arrow]
        except KeyError as exc:
            raise CategoryError(
                f"{self.name} is undefined on arrow {arrow!r}"
            ) from exc

    def arrow_preimage(self, arrow: Label) -> Label:
        """The unique arrow mapped to ``arrow`` (for full embeddings)."""
        matches = [a for a, b in self.arrow_map.items() if b == arrow]
        if len(matches) != 1:
            raise CategoryError(
                f"{arrow!r} has {len(matches)} preimages under {self.name}"
            )
        return matches[0]

    def same_maps(self, other: "FinFunctor") -> bool:
        """True when both functors agree on every object and arrow."""
        return (
            self.object_map == other.object_map
            and self.arrow_map == other.arrow_map
        )

    def axiom_failures(self) -> List[str]:
        failures: List[str] = []
        src, tgt = self.source, self.target
        for obj in src.objects:
            if self.object_map.get(obj) not in tgt.identities:
                failures.append(f"object {obj!r} has no valid image")
        for name in src.arrows:
            if self.arrow_map.get(name) not in tgt.arrows:
                failures.append(f"arrow {name!r} has no valid image")
        if failures:
            return failures
        for arrow in src.arrows.values():
            image = self.arrow_map[arrow.name]
            if tgt.source(image) != self.object_map[arrow.source] or (
                tgt.target(image) != self.object_map[arrow.target]
            ):
                failures.append(f"image of {arrow.name!r} has wrong ends")
        if failures:
            return failures
        for obj in src.objects:
            image = self.arrow_map[src.identity(obj)]
            if image != tgt.identity(self.object_map[obj]):
                failures.append(f"identity on {obj!r} is not preserved")
        for (second, first), composite in src.composition.items():
            lhs = self.arrow_map[composite]
            rhs = tgt.compose(self.arrow_map[second], self.arrow_map[first])
            if lhs != rhs:
                failures.append(
                    f"composite {second!r} o {first!r} is not preserved"
                )
        return failures

    def to_json(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "objects": [
                [encode_label(a), encode_label(b)]
                for a, b in self.object_map.items()
            ],
            "arrows": [
                [encode_label(a), encode_label(b)]
                for a, b in self.arrow_map.items()
            ],
        }

    @classmethod
    def from_json(
        cls,
        payload: Dict[str, Any],
        source: FinCat,
        target: FinCat,
        validate: bool = True,
    ) -> "FinFunctor":
        return cls(
            name=str(payload.get("name", "F")),
            source=source,
            target=target,
            object_map={
                decode_label(a): decode_label(b)
                for a, b in payload["objects"]
            },
            arrow_map={
                decode_label(a): decode_label(b)
                for a, b in payload["arrows"]
            },
            validate=validate,
        )


def identity_functor(category: FinCat) -> FinFunctor:
    return FinFunctor(
        f"1_{category.name}",
        category,
        category,
        {o: o for o in category.objects},
        {a: a for a in category.arrows},
        validate=False,
    )


def compose_functors(
    second: FinFunctor, first: FinFunctor, name: Optional[str] = None
) -> FinFunctor:
    """``second o first``."""
    if second.source != first.target:
        raise CategoryError(
            f"cannot compose {second.name} after {first.name}"
        )
    return FinFunctor(
        name or f"{second.name}{first.name}",
        first.source,
        second.target,
        {o: second.on_object(v) for o, v in first.object_map.items()},
        {a: second.on_arrow(v) for a, v in first.arrow_map.items()},
        validate=False,
    )


def is_fully_faithful(functor: FinFunctor) -> bool:
    """Every hom-set map is a bijection (exhaustive)."""
    src, tgt = functor.source, functor.target
    for a, b in cartesian(src.objects, repeat=2):
        images = {functor.on_arrow(f) for f in src.hom(a, b)}
        domain = src.hom(a, b)
        codomain = tgt.hom(functor.on_object(a), functor.on_object(b))
        if len(images) != len(domain) or len(images) != len(codomain):
            return False
    return True


class NatTrans:
    """
    A natural transformation ``source => target`` given by components.

    Raises:
        CategoryAxiomError: on a mistyped component or a naturality
            square that does not commute
    """

    def __init__(
        self,
        name: str,
        source: FinFunctor,
        target: FinFunctor,
        components: Dict[Label, Label],
        validate: bool = True,
    ):
        self.name = name
        self.source = source
        self.target = target
        self.components = dict(components)
        if validate:
            failures = self.axiom_failures()
            if failures:
                raise CategoryAxiomError(f"transformation {name}", failures)

    def __repr__(self) -> str:
        return (
            f"NatTrans({self.name!r}: {self.source.name} => "
            f"{self.target.name})"
        )

    def __getitem__(self, obj: Label) -> Label:
        try:
            return self.components[obj]
        except KeyError as exc:
            raise CategoryError(
                f"{self.name} has no component at {obj!r}"
            ) from exc

    @property
    def domain(self) -> FinCat:
        return self.source.source

    @property
    def codomain(self) -> FinCat:
        return self.source.target

    def axiom_failures(self) -> List[str]:
        failures: List[str] = []
        if self.source.source != self.target.source or (
            self.source.target != self.target.target
        ):
            return ["source and target functors are not parallel"]
        dom, cod = self.domain, self.codomain
        for obj in dom.objects:
            comp = self.components.get(obj)
            if comp not in cod.arrows:
                failures.append(f"no component at {obj!r}")
                continue
            if cod.source(comp) != self.source.on_object(obj) or (
                cod.target(comp) != self.target.on_object(obj)
            ):
                failures.append(f"component at {obj!r} has wrong ends")
        if failures:
            return failures
        for arrow in dom.arrows.values():
            lhs = cod.compose(
                self.target.on_arrow(arrow.name),
                self.components[arrow.source],
            )
            rhs = cod.compose(
                self.components[arrow.target],
                self.source.on_arrow(arrow.name),
            )
            if lhs != rhs:
                failures.append(f"naturality fails at {arrow.name!r}")
        return failures

    def is_iso(self) -> bool:
        """Every component is invertible."""
        return all(self.codomain.is_iso(c) for c in self.components.values())

    def inverse(self) -> "NatTrans":
        """Componentwise inverse; raises NotIso."""
        return NatTrans(
            f"{self.name}^-1",
            self.target,
            self.source,
            {
                o: self.codomain.require_inverse(c)
                for o, c in self.components.items()
            },
        )

    def to_json(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "components": [
                [encode_label(o), encode_label(c)]
                for o, c in self.components.items()
            ],
        }


def identity_transformation(functor: FinFunctor) -> NatTrans:
    cod = functor.target
    return NatTrans(
        f"1_{functor.name}",
        functor,
        functor,
        {
            o: cod.identity(functor.on_object(o))
            for o in functor.source.objects
        },
        validate=False,
    )


def vertical(second: NatTrans, first: NatTrans) -> NatTrans:
    """``second . first`` componentwise."""
    cod = first.codomain
    return NatTrans(
        f"{second.name}.{first.name}",
        first.source,
        second.target,
        {
            o: cod.compose(second[o], first[o])
            for o in first.domain.objects
        },
    )


class Adjunction:
    """
    ``left -| right`` with unit ``1 => right left`` and counit
    ``left right => 1``.

    Raises:
        CategoryAxiomError: when a triangle identity fails
    """

    def __init__(
        self,
        left: FinFunctor,
        right: FinFunctor,
        unit: NatTrans,
        counit: NatTrans,
        validate: bool = True,
    ):
        self.left = left
        self.right = right
        self.unit = unit
        self.counit = counit
        if validate:
            failures = self.triangle_failures()
            if failures:
                raise CategoryAxiomError(
                    f"adjunction {left.name} -| {right.name}", failures
                )

    def triangle_failures(self) -> List[str]:
        """Both triangle identities at every object."""
        failures: List[str] = []
        lower = self.left.source
        upper = self.left.target
        for obj in lower.objects:
            image = self.left.on_object(obj)
            composite = upper.compose(
                self.counit[image], self.left.on_arrow(self.unit[obj])
            )
            if composite != upper.identity(image):
                failures.append(f"counit L o L unit != id at {obj!r}")
        for obj in upper.objects:
            image = self.right.on_object(obj)
            composite = lower.compose(
                self.right.on_arrow(self.counit[obj]), self.unit[image]
            )
            if composite != lower.identity(image):
                failures.append(f"R counit o unit R != id at {obj!r}")
        return failures

    def transpose(self, obj: Label, arrow: Label) -> Label:
        """``f: L obj -> d`` to ``R f o unit[obj]: obj -> R d``."""
        return self.left.source.compose(
            self.right.on_arrow(arrow), self.unit[obj]
        )

    def untranspose(self, obj: Label, arrow: Label) -> Label:
        """``g: c -> R obj`` to ``counit[obj] o L g: L c -> obj``."""
        return self.left.target.compose(
            self.counit[obj], self.left.on_arrow(arrow)
        )

    def hom_bijection_failures(self) -> List[str]:
        """Transposition is inverse to untransposition on every hom-set."""
        failures: List[str] = []
        lower, upper = self.left.source, self.left.target
        for c, d in cartesian(lower.objects, upper.objects):
            for f in upper.hom(self.left.on_object(c), d):
                if self.untranspose(d, self.transpose(c, f)) != f:
                    failures.append(f"untranspose(transpose({f!r})) != it")
            for g in lower.hom(c, self.right.on_object(d)):
                if self.transpose(c, self.untranspose(d, g)) != g:
                    failures.append(f"transpose(untranspose({g!r})) != it")
        return failures


def adjunction_from_hom_bijection(
    left: FinFunctor,
    right: FinFunctor,
    transpose: Callable[[Label, Label, Label], Label],
) -> Adjunction:
    """
    Build unit and counit from a hom bijection.

    ``transpose(c, d, f)`` maps ``f: L c -> d`` to ``c -> R d``. The unit
    is the transpose of identities; the counit at ``d`` is the unique
    arrow ``L R d -> d`` transposing to the identity of ``R d``.
    """
    lower, upper = left.source, left.target
    unit = {
        c: transpose(c, left.on_object(c), upper.identity(left.on_object(c)))
        for c in lower.objects
    }
    counit: Dict[Label, Label] = {}
    for d in upper.objects:
        rd = right.on_object(d)
        target = lower.identity(rd)
        matches = [
            f
            for f in upper.hom(left.on_object(rd), d)
            if transpose(rd, d, f) == target
        ]
        if len(matches) != 1:
            raise CategoryError(
                f"{len(matches)} arrows transpose to the identity at {d!r}"
            )
        counit[d] = matches[0]
    return Adjunction(
        left,
        right,
        NatTrans(
            "unit",
            identity_functor(lower),
            compose_functors(right, left),
            unit,
        ),
        NatTrans(
            "counit",
            compose_functors(left, right),
            identity_functor(upper),
            counit,
        ),
    )


def thin_adjunction(left: FinFunctor, right: FinFunctor) -> Adjunction:
    """Adjunction between preorders: every transpose is forced."""
    lower = left.source

    def transpose(c: Label, d: Label, arrow: Label) -> Label:
        arrows = lower.hom(c, right.on_object(d))
        if len(arrows) != 1:
            raise CategoryError(
                f"hom({c!r}, R {d!r}) has {len(arrows)} arrows; "
                "not a preorder adjunction"
            )
        return arrows[0]

    return adjunction_from_hom_bijection(left, right, transpose)


def check_2adj(lower: Adjunction, upper: Adjunction) -> CheckOutcome:
    """
    For ``L -| F -| R``: L is fully faithful iff R is.

    ``lower`` is ``L -| F`` and ``upper`` is ``F -| R``.
    """
    problems: List[str] = []
    if not lower.right.same_maps(upper.left):
        problems.append("the two adjunctions do not share F")
    problems.extend(lower.triangle_failures())
    problems.extend(upper.triangle_failures())
    if problems:
        return CheckOutcome("2adj", False, {}, problems)
    ff_left = is_fully_faithful(lower.left)
    ff_right = is_fully_faithful(upper.right)
    if ff_left != ff_right:
        problems.append(
            f"L fully faithful = {ff_left} but R fully faithful = {ff_right}"
        )
    return CheckOutcome(
        "2adj",
        not problems,
        {
            "ff_L": ff_left,
            "ff_R": ff_right,
            "ff_F": is_fully_faithful(lower.right),
        },
        problems,
    )


@dataclass
class SquareInversion:
    """
    Squares derived from ``g o f = k o h`` with ``f`` and ``k`` iso.

    Attributes:
        f_inverse: Inverse of f
        k_inverse: Inverse of k
        half: ``(k^-1 o g, h o f^-1)``, equal arrows
        full: ``(f^-1 o g^-1, h^-1 o k^-1)`` when g and h are iso
    """

    f_inverse: Label
    k_inverse: Label
    half: Tuple[Label, Label]
    full: Optional[Tuple[Label, Label]] = None


def invert_square(
    category: FinCat, f: Label, g: Label, h: Label, k: Label
) -> SquareInversion:
    """
    Invert the square ``f: a -> b, g: b -> d, h: a -> c, k: c -> d``.

    Raises:
        CategoryError: when the arrows do not form a square
        NotCommuting: when ``g o f != k o h``
        NotIso: when f or k is not invertible
    """
    cat = category
    if (
        cat.source(f) != cat.source(h)
        or cat.target(f) != cat.source(g)
        or cat.target(h) != cat.source(k)
        or cat.target(g) != cat.target(k)
    ):
        raise CategoryError("arrows do not form a square")
    if cat.compose(g, f) != cat.compose(k, h):
        raise NotCommuting(f"{g!r} o {f!r} != {k!r} o {h!r}")
    f_inv = cat.require_inverse(f)
    k_inv = cat.require_inverse(k)
    half = (cat.compose(k_inv, g), cat.compose(h, f_inv))
    if half[0] != half[1]:
        raise NotCommuting("half-inverted square does not commute")
    full = None
    g_inv, h_inv = cat.inverse(g), cat.inverse(h)
    if g_inv is not None and h_inv is not None:
        full = (cat.compose(f_inv, g_inv), cat.compose(h_inv, k_inv))
        if full[0] != full[1]:
            raise NotCommuting("fully inverted square does not commute")
    return SquareInversion(f_inv, k_inv, half, full)


@dataclass
class SituationData:
    """
    A reflective subcategory B and a coreflective subcategory D of C.

    ``S -| I`` has unit ``alpha: 1 => IS`` and counit ``beta: SI => 1``;
    ``J -| T`` has unit ``delta: 1 => TJ`` and counit ``epsilon: JT => 1``.
    """

    name: str
    C: FinCat
    B: FinCat
    D: FinCat
    I: FinFunctor  # noqa: E741
    J: FinFunctor
    S: FinFunctor
    T: FinFunctor
    alpha: NatTrans
    beta: NatTrans
    delta: NatTrans
    epsilon: NatTrans

    def IS(self, arrow: Label) -> Label:
        return self.I.on_arrow(self.S.on_arrow(arrow))

    def JT(self, arrow: Label) -> Label:
        return self.J.on_arrow(self.T.on_arrow(arrow))

    def IS_object(self, obj: Label) -> Label:
        return self.I.on_object(self.S.on_object(obj))

    def JT_object(self, obj: Label) -> Label:
        return self.J.on_object(self.T.on_object(obj))


def instance_failures(situation: SituationData) -> List[str]:
    """Every hypothesis of the situation, checked exhaustively."""
    s = situation
    failures: List[str] = []
    for label, cat in (("C", s.C), ("B", s.B), ("D", s.D)):
        failures.extend(f"{label}: {m}" for m in cat.axiom_failures())
    ends = {
        "I": (s.B, s.C),
        "J": (s.D, s.C),
        "S": (s.C, s.B),
        "T": (s.C, s.D),
    }
    for label, (src, tgt) in ends.items():
        functor = getattr(s, label)
        if functor.source != src or functor.target != tgt:
            failures.append(f"{label} has the wrong source or target")
            continue
        failures.extend(f"{label}: {m}" for m in functor.axiom_failures())
    if failures:
        return failures
    expected = {
        "alpha": (identity_functor(s.C), compose_functors(s.I, s.S)),
        "beta": (compose_functors(s.S, s.I), identity_functor(s.B)),
        "delta": (identity_functor(s.D), compose_functors(s.T, s.J)),
        "epsilon": (compose_functors(s.J, s.T), identity_functor(s.C)),
    }
    for label, (src, tgt) in expected.items():
        trans = getattr(s, label)
        if not (trans.source.same_maps(src) and trans.target.same_maps(tgt)):
            failures.append(f"{label} has the wrong source or target functor")
            continue
        failures.extend(f"{label}: {m}" for m in trans.axiom_failures())
    if failures:
        return failures
    reflection = Adjunction(s.S, s.I, s.alpha, s.beta, validate=False)
    coreflection = Adjunction(s.J, s.T, s.delta, s.epsilon, validate=False)
    failures.extend(f"S -| I: {m}" for m in reflection.triangle_failures())
    failures.extend(f"J -| T: {m}" for m in coreflection.triangle_failures())
    if not s.beta.is_iso():
        failures.append("beta is not an isomorphism")
    if not s.delta.is_iso():
        failures.append("delta is not an isomorphism")
    for obj in s.C.objects:
        if not s.C.is_iso(s.IS(s.epsilon[obj])):
            failures.append(f"IS epsilon is not iso at {obj!r}")
        if not s.C.is_iso(s.JT(s.alpha[obj])):
            failures.append(f"JT alpha is not iso at {obj!r}")
    return failures


def validate_instance(situation: SituationData) -> None:
    """Raise InstanceInvalid listing every failed hypothesis."""
    failures = instance_failures(situation)
    if failures:
        raise InstanceInvalid(f"situation {situation.name}", failures)


def mu(situation: SituationData, source: Label, arrow: Label) -> Label:
    """``f: JT c -> c'`` to ``IS f o (IS epsilon_c)^-1 o alpha_c``."""
    s = situation
    if s.C.source(arrow) != s.JT_object(source):
        raise CategoryError(f"{arrow!r} does not start at JT {source!r}")
    back = s.C.require_inverse(s.IS(s.epsilon[source]))
    return s.C.compose_all(s.IS(arrow), back, s.alpha[source])


def nu(situation: SituationData, target: Label, arrow: Label) -> Label:
    """``g: c -> IS c'`` to ``epsilon_c' o (JT alpha_c')^-1 o JT g``."""
    s = situation
    if s.C.target(arrow) != s.IS_object(target):
        raise CategoryError(f"{arrow!r} does not end at IS {target!r}")
    back = s.C.require_inverse(s.JT(s.alpha[target]))
    return s.C.compose_all(s.epsilon[target], back, s.JT(arrow))


def check_theorem(situation: SituationData) -> CheckOutcome:
    """mu and nu are mutually inverse on every hom-set pair."""
    failures = instance_failures(situation)
    if failures:
        return CheckOutcome("appendix_theorem", False, {}, failures)
    s = situation
    problems: List[str] = []
    checked = 0
    for c, c2 in cartesian(s.C.objects, repeat=2):
        left = s.C.hom(s.JT_object(c), c2)
        right = s.C.hom(c, s.IS_object(c2))
        if len(left) != len(right):
            problems.append(
                f"|Hom(JT {c!r}, {c2!r})| = {len(left)} but "
                f"|Hom({c!r}, IS {c2!r})| = {len(right)}"
            )
        for f in left:
            checked += 1
            if nu(s, c2, mu(s, c, f)) != f:
                problems.append(f"nu(mu({f!r})) != {f!r}")
        for g in right:
            checked += 1
            if mu(s, c, nu(s, c2, g)) != g:
                problems.append(f"mu(nu({g!r})) != {g!r}")
    return CheckOutcome(
        "appendix_theorem",
        not problems,
        {
            "instance": s.name,
            "objects": len(s.C.objects),
            "arrows": len(s.C.arrows),
            "arrows_checked": checked,
        },
        problems,
    )


def _bijection_problems(
    label: str,
    domain: List[Label],
    codomain: List[Label],
    mapping: Callable[[Label], Label],
) -> List[str]:
    images = [mapping(a) for a in domain]
    problems = []
    if any(image not in codomain for image in images):
        problems.append(f"{label}: image outside the target hom-set")
    if len(set(images)) != len(images) or len(images) != len(codomain):
        problems.append(
            f"{label}: {len(domain)} -> {len(codomain)} is not a bijection"
        )
    return problems


def check_corollaries(situation: SituationData) -> CheckOutcome:
    """
    Consequences of the situation theorem.

    JTI -| S and T -| ISJ as hom bijections, JTI and ISJ fully faithful,
    and TI -| SJ with unit and counit iso at every object.
    """
    failures = instance_failures(situation)
    if failures:
        return CheckOutcome("appendix_corollaries", False, {}, failures)
    s = situation
    problems: List[str] = []
    for b, c in cartesian(s.B.objects, s.C.objects):
        ib = s.I.on_object(b)
        problems.extend(
            _bijection_problems(
                f"JTI -| S at ({b!r}, {c!r})",
                s.C.hom(s.JT_object(ib), c),
                s.B.hom(b, s.S.on_object(c)),
                lambda f: s.I.arrow_preimage(mu(s, ib, f)),
            )
        )
    for c, d in cartesian(s.C.objects, s.D.objects):
        jd = s.J.on_object(d)
        problems.extend(
            _bijection_problems(
                f"T -| ISJ at ({c!r}, {d!r})",
                s.D.hom(s.T.on_object(c), d),
                s.C.hom(c, s.IS_object(jd)),
                lambda f: mu(s, c, s.J.on_arrow(f)),
            )
        )
    jti = compose_functors(s.J, compose_functors(s.T, s.I), "JTI")
    isj = compose_functors(s.I, compose_functors(s.S, s.J), "ISJ")
    ff_jti = is_fully_faithful(jti)
    ff_isj = is_fully_faithful(isj)
    if not ff_jti:
        problems.append("JTI is not fully faithful")
    if not ff_isj:
        problems.append("ISJ is not fully faithful")
    ti = compose_functors(s.T, s.I, "TI")
    sj = compose_functors(s.S, s.J, "SJ")
    unit: Dict[Label, Label] = {}
    for b in s.B.objects:
        ib = s.I.on_object(b)
        unit[b] = s.I.arrow_preimage(
            mu(s, ib, s.C.identity(s.JT_object(ib)))
        )
    counit: Dict[Label, Label] = {}
    for d in s.D.objects:
        jd = s.J.on_object(d)
        counit[d] = s.J.arrow_preimage(
            nu(s, jd, s.C.identity(s.IS_object(jd)))
        )
    unit_iso = all(s.B.is_iso(a) for a in unit.values())
    counit_iso = all(s.D.is_iso(a) for a in counit.values())
    if not unit_iso:
        problems.append("TI -| SJ unit is not iso at every object")
    if not counit_iso:
        problems.append("TI -| SJ counit is not iso at every object")
    try:
        Adjunction(
            ti,
            sj,
            NatTrans(
                "unit", identity_functor(s.B), compose_functors(sj, ti), unit
            ),
            NatTrans(
                "counit",
                compose_functors(ti, sj),
                identity_functor(s.D),
                counit,
            ),
        )
    except CategoryAxiomError as exc:
        problems.extend(f"TI -| SJ: {m}" for m in exc.failures)
    return CheckOutcome(
        "appendix_corollaries",
        not problems,
        {
            "instance": s.name,
            "ff_JTI": ff_jti,
            "ff_ISJ": ff_isj,
            "equivalence_unit_iso": unit_iso,
            "equivalence_counit_iso": counit_iso,
        },
        problems,
    )


def terminal_category() -> FinCat:
    return FinCat(
        "1",
        ["*"],
        [Arrow("id", "*", "*")],
        {"*": "id"},
        {("id", "id"): "id"},
    )


def poset_category(
    name: str,
    elements: Sequence[Label],
    relations: Iterable[Tuple[Label, Label]],
) -> FinCat:
    """
    The preorder generated by ``relations``.

    Reflexive and transitive closure is taken; arrow ``a<=b`` exists iff
    ``a <= b`` in the closure.
    """
    elems = list(elements)
    leq = {(a, a) for a in elems} | set(relations)
    changed = True
    while changed:
        changed = False
        for (a, b), (c, d) in cartesian(list(leq), repeat=2):
            if b == c and (a, d) not in leq:
                leq.add((a, d))
                changed = True
    arrows = [
        Arrow(f"{a}<={b}", a, b)
        for a in elems
        for b in elems
        if (a, b) in leq
    ]
    composition = {
        (f"{b}<={c}", f"{a}<={b}"): f"{a}<={c}"
        for a, b, c in cartesian(elems, repeat=3)
        if (a, b) in leq and (b, c) in leq
    }
    return FinCat(
        name, elems, arrows, {a: f"{a}<={a}" for a in elems}, composition
    )


def chain_category(length: int) -> FinCat:
    """The chain ``0 <= 1 <= ... <= length-1``."""
    elems = [str(i) for i in range(length)]
    return poset_category(
        f"chain{length}", elems, zip(elems[:-1], elems[1:])
    )


def cyclic_group_category(order: int) -> FinCat:
    """Z/order as a one-object category; ``g0`` is the identity."""
    names = [f"g{i}" for i in range(order)]
    return FinCat(
        f"Z{order}",
        ["*"],
        [Arrow(n, "*", "*") for n in names],
        {"*": "g0"},
        {
            (names[i], names[j]): names[(i + j) % order]
            for i, j in cartesian(range(order), repeat=2)
        },
    )


def indiscrete_category(objects: Sequence[Label]) -> FinCat:
    """Exactly one arrow ``a->b`` between any two objects."""
    objs = list(objects)
    return FinCat(
        "indiscrete",
        objs,
        [Arrow(f"{a}->{b}", a, b) for a in objs for b in objs],
        {a: f"{a}->{a}" for a in objs},
        {
            (f"{b}->{c}", f"{a}->{b}"): f"{a}->{c}"
            for a, b, c in cartesian(objs, repeat=3)
        },
    )


def parallel_pair_category() -> FinCat:
    """Two objects and two distinct arrows ``u, v: a -> b``."""
    arrows = [
        Arrow("id_a", "a", "a"),
        Arrow("id_b", "b", "b"),
        Arrow("u", "a", "b"),
        Arrow("v", "a", "b"),
    ]
    composition = {
        ("id_a", "id_a"): "id_a",
        ("id_b", "id_b"): "id_b",
        ("u", "id_a"): "u",
        ("v", "id_a"): "v",
        ("id_b", "u"): "u",
        ("id_b", "v"): "v",
    }
    return FinCat(
        "parallel",
        ["a", "b"],
        arrows,
        {"a": "id_a", "b": "id_b"},
        composition,
    )


def product_category(first: FinCat, second: FinCat) -> FinCat:
    """Objects and arrows are pairs; composition is componentwise."""
    objects = [(a, b) for a in first.objects for b in second.objects]
    arrows = [
        Arrow((f.name, g.name), (f.source, g.source), (f.target, g.target))
        for f in first.arrows.values()
        for g in second.arrows.values()
    ]
    composition = {
        ((f2, g2), (f1, g1)): (h1, h2)
        for (f2, f1), h1 in first.composition.items()
        for (g2, g1), h2 in second.composition.items()
    }
    return FinCat(
        f"{first.name}x{second.name}",
        objects,
        arrows,
        {
            (a, b): (first.identity(a), second.identity(b))
            for a, b in objects
        },
        composition,
    )


def full_subcategory(
    category: FinCat, objects: Sequence[Label], name: str
) -> Tuple[FinCat, FinFunctor]:
    """The full subcategory on ``objects`` with its inclusion functor."""
    keep = set(objects)
    unknown = keep - set(category.objects)
    if unknown:
        raise CategoryError(f"unknown objects {sorted(map(str, unknown))}")
    arrows = [
        a
        for a in category.arrows.values()
        if a.source in keep and a.target in keep
    ]
    names = {a.name for a in arrows}
    sub = FinCat(
        name,
        [o for o in category.objects if o in keep],
        arrows,
        {o: category.identity(o) for o in category.objects if o in keep},
        {
            pair: result
            for pair, result in category.composition.items()
            if pair[0] in names and pair[1] in names
        },
    )
    inclusion = FinFunctor(
        f"incl_{name}",
        sub,
        category,
        {o: o for o in sub.objects},
        {a: a for a in sub.arrows},
    )
    return sub, inclusion


def monotone_functor(
    name: str,
    source: FinCat,
    target: FinCat,
    mapping: Dict[Label, Label],
) -> FinFunctor:
    """Functor between posets built by ``poset_category`` from a map."""
    return FinFunctor(
        name,
        source,
        target,
        dict(mapping),
        {
            a.name: f"{mapping[a.source]}<={mapping[a.target]}"
            for a in source.arrows.values()
        },
    )
