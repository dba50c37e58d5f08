"""
Main chulaws engine - loads the law catalog and runs seeded law campaigns.
"""

import importlib.util
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

import yaml

from .base import Counterexample, LawCheck, LawReport, TrialContext, TrialSpec
from .linalg import is_prime
from .registry import (
    LawEntry,
    LawRegistry,
    RegistryError,
    resolve_script_location,
)
from .sampling import trial_rng
from .topo import DEFAULT_CERTIFIED_LIMIT


class ConfigError(ValueError):
    """Raised when config.yaml cannot be read or holds invalid values."""


# Result statuses ranked for the fail threshold
STATUS_LEVELS = {"error": 2, "fail": 1, "pass": 0}

CATALOG_MAJOR = 1


class LawEngine:
    """
    Main engine for chulaws law campaigns.
    """

    DEFAULT_FIELDS = [2, 3, 5]

    def __init__(
        self,
        package_dir: Optional[Path] = None,
        config_path: Optional[Path] = None,
    ):
        """
        Initialize the engine.

        Args:
            package_dir: The ``chulaws`` package directory (default: the
                directory this module was installed in)
            config_path: Configuration file (default: config.yaml in the
                package directory)
        """
        if package_dir is None:
            package_dir = Path(__file__).resolve().parent.parent

        self.package_dir = Path(package_dir).resolve()
        self.root = self.package_dir.parent
        if config_path is None:
            self.config_path = self.package_dir / "config.yaml"
        else:
            self.config_path = Path(config_path)
        self.registry_path = self.package_dir / "registry.json"

        # Load configuration and apply overrides
        self.config = self._load_config()
        self._apply_config_paths()
        self._validate_config()

        try:
            self.registry = LawRegistry(self.registry_path)
            catalog = self.registry.version
        except (RegistryError, ValueError) as exc:
            raise ConfigError(str(exc)) from exc
        if catalog.major != CATALOG_MAJOR:
            raise ConfigError(
                f"law catalog {self.registry_path} has version {catalog}; "
                f"this engine reads {CATALOG_MAJOR}.x catalogs"
            )
        self._law_classes: Dict[str, type] = {}

        # Statistics
        self.passed_count = 0
        self.failed_count = 0

    def _load_config(self) -> Dict:
        """Load configuration from config.yaml."""
        if not self.config_path.exists():
            return {}
        try:
            with open(self.config_path, "r", encoding="utf-8") as f:
                loaded = yaml.safe_load(f) or {}
        except (OSError, yaml.YAMLError) as exc:
            raise ConfigError(
                f"cannot read configuration {self.config_path}: {exc}"
            ) from exc
        if not isinstance(loaded, dict):
            raise ConfigError(
                f"configuration {self.config_path} is not a mapping"
            )
        return loaded

    def _apply_config_paths(self) -> None:
        """Apply configurable path overrides after the config loads."""
        paths_cfg = self.config.get("paths", {}) or {}
        registry_file = paths_cfg.get("registry_file")
        if registry_file:
            self.registry_path = self.root / Path(registry_file)

    def _validate_config(self) -> None:
        """Reject values the engine cannot run with."""
        for p in self.fields:
            if not is_prime(p):
                raise ConfigError(f"trials.fields: {p} is not prime")
        if self.fail_threshold not in ("fail", "error"):
            raise ConfigError(
                "engine.fail_threshold must be 'fail' or 'error', got "
                f"{self.fail_threshold!r}"
            )
        if self.workers < 1:
            raise ConfigError("engine.workers must be at least 1")

    def _section(self, name: str) -> Dict[str, Any]:
        """A top-level config mapping, empty when absent."""
        section = self.config.get(name, {})
        return section if isinstance(section, dict) else {}

    @property
    def samples(self) -> int:
        """Default trial count for law campaigns."""
        return int(self._section("trials").get("samples", 200))

    @property
    def max_dim(self) -> int:
        """Default largest carrier dimension."""
        return int(self._section("trials").get("max_dim", 4))

    @property
    def fields(self) -> List[int]:
        """Fields swept by ``laws`` without a ``field`` context."""
        raw = self._section("trials").get("fields", self.DEFAULT_FIELDS)
        return [int(p) for p in raw]

    @property
    def workers(self) -> int:
        """Thread-pool size; 1 when parallel checks are disabled."""
        engine_cfg = self._section("engine")
        if not engine_cfg.get("parallel_checks", True):
            return 1
        return int(engine_cfg.get("workers", 4))

    @property
    def verbose(self) -> bool:
        """Progress lines on stderr."""
        return bool(self._section("engine").get("verbose", False))

    @property
    def fail_threshold(self) -> str:
        """Lowest result status that blocks (``fail`` or ``error``)."""
        return str(self._section("engine").get("fail_threshold", "fail"))

    @property
    def certified_limit(self) -> int:
        """Exhaustive minimal-J search limit."""
        return int(
            self._section("topology").get(
                "certified_factor_limit", DEFAULT_CERTIFIED_LIMIT
            )
        )

    @property
    def module_max_dim(self) -> int:
        """Default k-dimension bound for ring campaigns."""
        return int(self._section("modules").get("max_dim", 6))

    @property
    def module_samples(self) -> int:
        """Default sample count for ring campaigns."""
        return int(self._section("modules").get("samples", 100))

    def law_config(self, entry: LawEntry) -> Dict[str, Any]:
        """``laws.<id>`` (or ``laws.<name>``) options from config.yaml."""
        laws_cfg = self._section("laws")
        for key in (entry.law_id, entry.name, entry.script):
            if isinstance(laws_cfg.get(key), dict):
                return dict(laws_cfg[key])
        return {}

    def _load_law_script(self, entry: LawEntry) -> Optional[LawCheck]:
        """
        Dynamically load a law script.

        Args:
            entry: Catalog entry of the law

        Returns:
            LawCheck instance or None if not found
        """
        cached = self._law_classes.get(entry.script)
        if cached is not None:
            return cached()

        location = resolve_script_location(self.package_dir, entry.script)
        if location is None:
            return None

        # Load the module
        spec = importlib.util.spec_from_file_location(
            location.module, location.path
        )
        if spec and spec.loader:
            module = importlib.util.module_from_spec(spec)
            sys.modules[spec.name] = module
            spec.loader.exec_module(module)

            # Find the LawCheck subclass
            for attr_name in dir(module):
                attr = getattr(module, attr_name)
                if (
                    isinstance(attr, type)
                    and issubclass(attr, LawCheck)
                    and attr is not LawCheck
                    and attr.law_id == entry.law_id
                ):
                    self._law_classes[entry.script] = attr
                    return attr()

        return None

    def build_checker(
        self,
        law_id: str,
        statement_options: Optional[Dict[str, Any]] = None,
    ) -> LawCheck:
        """
        Load the check for a law with its option layers in place.

        Raises:
            RegistryError: for an unknown law or a missing script
        """
        entry = self.registry.get(law_id)
        checker = self._load_law_script(entry)
        if checker is None:
            raise RegistryError(
                f"no law script '{entry.script}' for {entry.law_id}"
            )
        checker.set_options(
            entry.options, self.law_config(entry), statement_options
        )
        return checker

    def run_law(
        self,
        law_id: str,
        spec: TrialSpec,
        statement_options: Optional[Dict[str, Any]] = None,
        workers: Optional[int] = None,
    ) -> LawReport:
        """
        Run ``spec.samples`` seeded trials of one law.

        Trials are independent; they run on a thread pool and come back
        in trial order whatever the scheduling.
        """
        checker = self.build_checker(law_id, statement_options)
        index = self.registry.get(law_id).law_index
        pool_size = self.workers if workers is None else max(1, workers)

        def one(trial: int) -> Optional[Counterexample]:
            rng = trial_rng(spec.seed, spec.p, index, trial)
            return checker.run_trial(TrialContext(spec, trial, rng))

        started = time.perf_counter()
        if pool_size > 1 and spec.samples > 1:
            with ThreadPoolExecutor(max_workers=pool_size) as pool:
                outcomes = list(pool.map(one, range(spec.samples)))
        else:
            outcomes = [one(trial) for trial in range(spec.samples)]
        report = LawReport(
            law_id=checker.law_id,
            p=spec.p,
            seed=spec.seed,
            trials=spec.samples,
            failures=[found for found in outcomes if found is not None],
            elapsed=time.perf_counter() - started,
        )
        if report.passed:
            self.passed_count += 1
        else:
            self.failed_count += 1
        if self.verbose:
            print(
                f"  {report.law_id} p={report.p}: {report.trials} trials, "
                f"{len(report.failures)} failures "
                f"({report.elapsed:.2f}s)",
                file=sys.stderr,
            )
        return report

    def run_laws(
        self,
        law_ids: Sequence[str],
        fields: Sequence[int],
        samples: int,
        max_dim: int,
        seed: int,
        statement_options: Optional[Dict[str, Any]] = None,
        workers: Optional[int] = None,
    ) -> List[LawReport]:
        """Every law over every field, ordered by (law, field)."""
        reports = []
        for law_id in law_ids:
            for p in fields:
                spec = TrialSpec(
                    p=p, max_dim=max_dim, samples=samples, seed=seed
                )
                reports.append(
                    self.run_law(law_id, spec, statement_options, workers)
                )
        return reports

    def verify_law(
        self,
        law_id: str,
        objects: Sequence[Any],
        statement_options: Optional[Dict[str, Any]] = None,
    ) -> List[str]:
        """
        Check a law on explicitly given objects.

        Raises:
            RegistryError: when the object count does not match the roles
        """
        checker = self.build_checker(law_id, statement_options)
        if len(objects) != len(checker.roles):
            raise RegistryError(
                f"{checker.law_id} takes {len(checker.roles)} objects "
                f"({', '.join(checker.roles)}), got {len(objects)}"
            )
        return checker.verify(dict(zip(checker.roles, objects)))

    def replay(
        self, counterexample: Counterexample
    ) -> Optional[Counterexample]:
        """
        Re-run the trial a counterexample came from.

        Returns:
            The regenerated failure, or None when the trial now passes
        """
        checker = self.build_checker(
            counterexample.law_id, counterexample.options
        )
        index = self.registry.get(counterexample.law_id).law_index
        spec = TrialSpec(
            p=counterexample.p,
            max_dim=counterexample.max_dim,
            samples=counterexample.trial + 1,
            seed=counterexample.seed,
        )
        rng = trial_rng(spec.seed, spec.p, index, counterexample.trial)
        return checker.run_trial(
            TrialContext(spec, counterexample.trial, rng)
        )

    def should_block(self, statuses: Sequence[str]) -> bool:
        """
        Determine if result statuses should give a failing exit code.

        Args:
            statuses: ``pass``, ``fail`` or ``error`` per result

        Returns:
            True if any status reaches the fail threshold
        """
        threshold = STATUS_LEVELS.get(self.fail_threshold, 1)
        return any(
            STATUS_LEVELS.get(status, 2) >= threshold for status in statuses
        )
