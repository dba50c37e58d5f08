"""
Base classes and records for chulaws law checks.
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np

from .linalg import FieldSpec


@dataclass
class TrialSpec:
    """
    Parameters of one law campaign.

    Attributes:
        p: Field modulus
        max_dim: Largest carrier dimension sampled
        samples: Number of trials
        seed: Master seed; with (p, law, trial) it fixes every draw
    """

    p: int
    max_dim: int = 4
    samples: int = 200
    seed: int = 0

    @property
    def field(self) -> FieldSpec:
        """The prime field F_p."""
        return FieldSpec(self.p)


@dataclass
class TrialContext:
    """
    Context handed to a single law trial.

    Attributes:
        spec: The campaign parameters
        trial: Trial index within the campaign
        rng: Generator seeded for exactly this trial
    """

    spec: TrialSpec
    trial: int
    rng: np.random.Generator

    @property
    def field(self) -> FieldSpec:
        """Shortcut for ``spec.field``."""
        return self.spec.field


@dataclass
class Counterexample:
    """
    A failed trial, serialized so it can be replayed.

    Attributes:
        law_id: Catalog id (L1..L10)
        p: Field modulus
        seed: Master seed of the campaign
        trial: Trial index; replaying (law_id, p, seed, trial, max_dim,
            options) regenerates the same objects
        message: First failure reason
        objects: Sampled objects by role, in JSON form
        options: Law options in force
        max_dim: Largest carrier dimension of the campaign
    """

    law_id: str
    p: int
    seed: int
    trial: int
    message: str
    objects: Dict[str, Any] = field(default_factory=dict)
    options: Dict[str, Any] = field(default_factory=dict)
    max_dim: int = 4

    def to_json(self) -> Dict[str, Any]:
        """JSON-ready dictionary."""
        return {
            "law": self.law_id,
            "p": self.p,
            "seed": self.seed,
            "trial": self.trial,
            "message": self.message,
            "objects": self.objects,
            "options": self.options,
            "max_dim": self.max_dim,
        }

    @classmethod
    def from_json(cls, payload: Dict[str, Any]) -> "Counterexample":
        """Inverse of ``to_json``."""
        return cls(
            law_id=str(payload["law"]),
            p=int(payload["p"]),
            seed=int(payload["seed"]),
            trial=int(payload["trial"]),
            message=str(payload.get("message", "")),
            objects=dict(payload.get("objects", {})),
            options=dict(payload.get("options", {})),
            max_dim=int(payload.get("max_dim", 4)),
        )


@dataclass
class LawReport:
    """
    Result of running one law over one field.

    Attributes:
        law_id: Catalog id
        p: Field modulus
        seed: Master seed
        trials: Trials run
        failures: Counterexamples in trial order
        elapsed: Wall-clock seconds; kept out of the JSON form
    """

    law_id: str
    p: int
    seed: int
    trials: int
    failures: List[Counterexample] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        """True when no trial failed."""
        return not self.failures

    def to_json(self) -> Dict[str, Any]:
        """JSON-ready dictionary."""
        return {
            "law": self.law_id,
            "p": self.p,
            "seed": self.seed,
            "trials": self.trials,
            "failures": [f.to_json() for f in self.failures],
        }


@dataclass
class CheckOutcome:
    """
    Outcome of a single non-sampled check.

    Attributes:
        name: Check name
        passed: True when no problems were found
        details: JSON-ready facts gathered during the check
        problems: Human-readable failure reasons
        counterexample: JSON form of the first failing input, if any
    """

    name: str
    passed: bool
    details: Dict[str, Any] = field(default_factory=dict)
    problems: List[str] = field(default_factory=list)
    counterexample: Optional[Dict[str, Any]] = None


class LawCheck(ABC):
    """
    Base class for catalog laws.

    Subclasses set ``law_id`` and implement ``sample`` (draw the objects
    a trial needs) and ``verify`` (return failure reasons for them).
    """

    law_id: str = ""
    name: str = ""
    version: str = "1.0.0"
    roles: List[str] = []

    def __init__(self) -> None:
        """Initialise option layers."""
        self.default_options: Dict[str, Any] = {}
        self.law_config: Dict[str, Any] = {}
        self.statement_options: Dict[str, Any] = {}

    @abstractmethod
    def sample(self, context: TrialContext) -> Dict[str, Any]:
        """
        Draw the objects for one trial.

        Args:
            context: Trial context with a dedicated generator

        Returns:
            Objects keyed by role name
        """
        pass

    @abstractmethod
    def verify(self, objects: Dict[str, Any]) -> List[str]:
        """
        Check the law on the given objects.

        Args:
            objects: Objects keyed by role name

        Returns:
            Failure reasons (empty list when the law holds)
        """
        pass

    def run_trial(self, context: TrialContext) -> Optional[Counterexample]:
        """Sample and verify one trial; exceptions become failures."""
        objects: Dict[str, Any] = {}
        try:
            objects = self.sample(context)
            problems = self.verify(objects)
        except Exception as exc:
            problems = [f"{type(exc).__name__}: {exc}"]
        if not problems:
            return None
        return Counterexample(
            law_id=self.law_id,
            p=context.spec.p,
            seed=context.spec.seed,
            trial=context.trial,
            message=problems[0],
            objects={
                role: _to_json(value) for role, value in objects.items()
            },
            options=self.active_options(),
            max_dim=context.spec.max_dim,
        )

    def trial_max_dim(self, context: TrialContext) -> int:
        """Campaign ``max_dim``, lowered by a ``max_dim`` law option."""
        cap = self.get_option("max_dim")
        if cap is None:
            return context.spec.max_dim
        return min(int(cap), context.spec.max_dim)

    def set_options(
        self,
        default_options: Dict[str, Any] | None,
        law_config: Dict[str, Any] | None,
        statement_options: Dict[str, Any] | None = None,
    ) -> None:
        """
        Store option layers.

        Statement flags win over ``laws.<id>`` entries in config.yaml,
        which win over the catalog defaults.
        """
        self.default_options = default_options or {}
        self.law_config = law_config or {}
        self.statement_options = statement_options or {}

    def get_option(self, key: str, default: Any = None) -> Any:
        """Return the merged option value."""
        for layer in (
            self.statement_options,
            self.law_config,
            self.default_options,
        ):
            if key in layer and layer[key] is not None:
                return layer[key]
        return default

    def active_options(self) -> Dict[str, Any]:
        """All options in force, merged."""
        merged: Dict[str, Any] = {}
        for layer in (
            self.default_options,
            self.law_config,
            self.statement_options,
        ):
            for key, value in layer.items():
                if value is not None:
                    merged[key] = value
        return merged


def _to_json(value: Any) -> Any:
    to_json = getattr(value, "to_json", None)
    if callable(to_json):
        return to_json()
    return value
