"""
Registry of catalog laws and the scripts that check them.
"""

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional

from semver import VersionInfo


class RegistryError(ValueError):
    """Raised for unknown law ids or an unreadable catalog."""


@dataclass(frozen=True)
class LawEntry:
    """
    One catalog law.

    Attributes:
        law_id: Catalog id (L1..L10)
        name: Short name used by ``check`` statements
        law_index: Seed slot of the law in ``trial_rng``
        script: Module name under ``core/law_scripts``
        statement: One-line statement of the law
        options: Default options for the law check
    """

    law_id: str
    name: str
    law_index: int
    script: str
    statement: str = ""
    options: Dict[str, Any] = field(default_factory=dict)


@dataclass(frozen=True)
class LawScriptLocation:
    """Resolved law script location."""

    path: Path
    module: str


def resolve_script_location(
    package_dir: Path, script: str
) -> Optional[LawScriptLocation]:
    """Return the law script location inside the package, if present."""
    path = package_dir / "core" / "law_scripts" / f"{script}.py"
    if not path.exists():
        return None
    return LawScriptLocation(
        path=path, module=f"chulaws.core.law_scripts.{script}"
    )


def law_sort_key(law_id: str) -> int:
    """Numeric order: L2 before L10."""
    digits = law_id.lstrip("Ll")
    return int(digits) if digits.isdigit() else 0


class LawRegistry:
    """
    Loads the law catalog from registry.json.
    """

    def __init__(self, registry_path: Path):
        """
        Initialize the registry.

        Args:
            registry_path: Path to registry.json
        """
        self.registry_path = registry_path
        self._data: Dict = {}
        self.load()

    def load(self):
        """Load the catalog from disk."""
        if not self.registry_path.exists():
            raise RegistryError(f"law catalog not found: {self.registry_path}")
        try:
            with open(self.registry_path, "r", encoding="utf-8") as f:
                self._data = json.load(f)
        except (OSError, json.JSONDecodeError) as exc:
            raise RegistryError(
                f"cannot read law catalog {self.registry_path}: {exc}"
            ) from exc

    @property
    def version(self) -> VersionInfo:
        """Catalog version."""
        raw = self._data.get("metadata", {}).get("version", "1.0.0")
        return VersionInfo.parse(str(raw))

    def law_ids(self) -> List[str]:
        """All catalog ids in numeric order."""
        return sorted(self._data.get("laws", {}), key=law_sort_key)

    def get(self, law_id: str) -> LawEntry:
        """
        Look up a law by id (``L3``) or name (``tensor-hom-adjunction``).

        Raises:
            RegistryError: for an unknown law
        """
        laws = self._data.get("laws", {})
        key = law_id.upper() if law_id.upper() in laws else None
        if key is None:
            for candidate, raw in laws.items():
                names = {raw.get("name"), raw.get("script")}
                if law_id in names or law_id.replace("-", "_") in names:
                    key = candidate
                    break
        if key is None:
            raise RegistryError(f"unknown law '{law_id}'")
        raw = laws[key]
        return LawEntry(
            law_id=key,
            name=str(raw.get("name", key)),
            law_index=int(raw["law_index"]),
            script=str(raw["script"]),
            statement=str(raw.get("statement", "")),
            options=dict(raw.get("options", {})),
        )

    def entries(self) -> List[LawEntry]:
        """All catalog entries in numeric order."""
        return [self.get(law_id) for law_id in self.law_ids()]
