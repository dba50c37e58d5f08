"""
Executes parsed scripts against the chulaws checks.

Statements run in source order. Bindings that fail and checks that raise
become ``error`` results; nothing aborts the run.
"""

from typing import Any, Callable, Dict, List, Optional

from .base import CheckOutcome, Counterexample
from .campaigns import (
    appendix_campaign,
    baer_campaign,
    chuK_campaign,
    cogenerator_campaign,
    factorization_campaign,
    fr_identity_campaign,
    rf_sigma_campaign,
    self_dual_campaign,
    selfinjective_campaign,
    square_campaign,
    tensor_table_campaign,
    topo_closure_campaign,
    two_adjoint_campaign,
)
from .canned import load_situation
from .chu import (
    dual,
    extensionalize,
    internal_hom,
    make_object,
    sep_ext_flags,
    separate,
    tensor,
)
from .engine import LawEngine
from .linalg import FieldSpec
from .modules import (
    RingSpec,
    cogenerator_embed,
    cyclic,
    direct_sum,
    make_module,
)
from .parser import (
    Binding,
    CheckStmt,
    ContextDecl,
    LawsStmt,
    ReplayStmt,
    ReportStmt,
    Script,
    Statement,
)
from .report import Report, ResultEntry
from .theorem import (
    check_FR_identity,
    check_RF_equals_sigma,
    check_RFR,
    end_of_K_check,
)
from .topo import make_presented

TRIAL_FLAGS = ("samples", "dims", "seed")


def _error_text(exc: Exception) -> str:
    return f"{type(exc).__name__}: {exc}"


class BindingUnavailable(RuntimeError):
    """Raised when a statement uses a name whose binding failed."""


class Interpreter:
    """
    Runs one script with a fixed seed.
    """

    def __init__(
        self,
        engine: LawEngine,
        seed: int = 0,
        workers: Optional[int] = None,
        version: str = "0.0.0",
    ):
        """
        Initialize the interpreter.

        Args:
            engine: Law engine (catalog, configuration, trial pool)
            seed: Master seed for every sampled statement
            workers: Thread-pool size for law trials (None: config value)
            version: Tool version recorded in the report
        """
        self.engine = engine
        self.seed = seed
        self.workers = workers
        self.version = version
        self.values: Dict[str, Any] = {}
        self.broken: Dict[str, str] = {}
        self.field: Optional[FieldSpec] = None
        self.ring: Optional[RingSpec] = None

    def execute(self, script: Script) -> Report:
        """Run every statement and collect the report."""
        report = Report(version=self.version, seed=self.seed)
        if script.context is not None:
            self._enter(script.context)
            report.context = self._context_json()
        for statement in script.statements:
            report.results.extend(self._run(statement))
        return report

    def _enter(self, decl: ContextDecl) -> None:
        self.field = FieldSpec(decl.p)
        if decl.n is not None:
            self.ring = RingSpec(decl.p, decl.n)

    def _context_json(self) -> Dict[str, Any]:
        if self.ring is not None:
            return {"ring": {"p": self.ring.p, "n": self.ring.n}}
        if self.field is not None:
            return {"field": self.field.p}
        return {}

    def _run(self, statement: Statement) -> List[ResultEntry]:
        if isinstance(statement, (ContextDecl, ReportStmt)):
            return []
        if isinstance(statement, Binding):
            return self._bind(statement)
        try:
            if isinstance(statement, CheckStmt):
                return self._check(statement)
            if isinstance(statement, LawsStmt):
                return self.laws_entries(statement)
            if isinstance(statement, ReplayStmt):
                return [self._replay(statement)]
        except Exception as exc:
            name = getattr(statement, "check", None) or getattr(
                statement, "law", None
            )
            return [
                ResultEntry(
                    line=statement.line,
                    statement=statement.text,
                    name=str(name or type(statement).__name__),
                    status="error",
                    problems=[_error_text(exc)],
                )
            ]
        return []

    # Bindings

    def _lookup(self, name: str) -> Any:
        if name in self.broken:
            raise BindingUnavailable(
                f"'{name}' is unavailable: {self.broken[name]}"
            )
        return self.values[name]

    def _bind(self, stmt: Binding) -> List[ResultEntry]:
        try:
            value = self._evaluate(stmt)
        except Exception as exc:
            message = _error_text(exc)
            self.broken[stmt.name] = message
            self.values.pop(stmt.name, None)
            return [
                ResultEntry(
                    line=stmt.line,
                    statement=stmt.text,
                    name=f"bind {stmt.name}",
                    status="error",
                    problems=[message],
                )
            ]
        self.broken.pop(stmt.name, None)
        self.values[stmt.name] = value
        return []

    def _evaluate(self, stmt: Binding) -> Any:
        operands = [self._lookup(name) for name in stmt.operands]
        values = stmt.values
        if stmt.op == "chu":
            return make_object(
                self.field, values["dim_a"], values["dim_x"], values["rows"]
            )
        unary: Dict[str, Callable[[Any], Any]] = {
            "dual": dual,
            "S": separate,
            "E": extensionalize,
        }
        if stmt.op in unary:
            return unary[stmt.op](operands[0])
        if stmt.op == "tensor":
            return tensor(operands[0], operands[1])
        if stmt.op == "hom":
            return internal_hom(operands[0], operands[1])
        if stmt.op == "cyclic":
            return cyclic(self.ring, values["order"])
        if stmt.op == "sum":
            return direct_sum(self.ring, operands)
        if stmt.op == "module":
            return make_module(self.ring, values["rows"])
        if stmt.op == "presented":
            return make_presented(
                self.field, values["factors"], values["rows"]
            )
        raise ValueError(f"unknown operation '{stmt.op}'")

    # Checks

    def _entry(
        self, stmt: Statement, outcome: CheckOutcome
    ) -> ResultEntry:
        return ResultEntry(
            line=stmt.line,
            statement=stmt.text,
            name=outcome.name,
            status="pass" if outcome.passed else "fail",
            details=outcome.details,
            problems=list(outcome.problems),
            counterexample=outcome.counterexample,
        )

    def _check(self, stmt: CheckStmt) -> List[ResultEntry]:
        if stmt.law is not None:
            return [self._law_check(stmt)]
        args = [
            arg if stmt.check == "appendix" else self._lookup(arg)
            for arg in stmt.args
        ]
        if stmt.check == "appendix":
            outcomes = appendix_campaign(load_situation(args[0]))
        else:
            outcomes = [self._single_check(stmt, args)]
        return [self._entry(stmt, outcome) for outcome in outcomes]

    def _single_check(self, stmt: CheckStmt, args: List[Any]) -> CheckOutcome:
        flags = stmt.flags
        engine = self.engine
        name = stmt.check
        if name == "flags":
            obj = args[0]
            flags_found = sep_ext_flags(obj)
            return CheckOutcome(
                "flags",
                True,
                {
                    "dimA": obj.dim_a,
                    "dimX": obj.dim_x,
                    "rank": obj.pairing.rank,
                    "separated": flags_found.separated,
                    "extensional": flags_found.extensional,
                },
            )
        if name == "FR":
            return check_FR_identity(args[0], engine.certified_limit)
        if name == "RFR":
            return check_RFR(args[0])
        if name == "RF":
            return check_RF_equals_sigma(args[0])
        if name == "embed":
            return self._embed(args[0])
        if name == "2adj":
            return two_adjoint_campaign()
        if name == "square":
            return square_campaign()
        field_checks: Dict[str, Callable[[], CheckOutcome]] = {
            "endK": lambda: end_of_K_check(self.field),
            "fr_identity": lambda: fr_identity_campaign(
                self.field,
                flags.get("samples", 100),
                flags.get("dims", engine.max_dim),
                self.seed,
                engine.certified_limit,
            ),
            "rf_sigma": lambda: rf_sigma_campaign(
                self.field,
                flags.get("samples", 100),
                self.seed,
                flags.get("factors", 3),
                flags.get("dims", 3),
            ),
            "factorization": lambda: factorization_campaign(
                self.field,
                flags.get("samples", 100),
                self.seed,
                flags.get("factors"),
                engine.certified_limit,
            ),
            "topo_closure": lambda: topo_closure_campaign(
                self.field, self.seed, flags.get("dims", 4)
            ),
        }
        if name in field_checks:
            return field_checks[name]()
        samples = flags.get("samples", engine.module_samples)
        max_dim = flags.get("dim", engine.module_max_dim)
        ring_checks: Dict[str, Callable[[], CheckOutcome]] = {
            "selfinjective": lambda: selfinjective_campaign(
                self.ring, samples, max_dim, self.seed
            ),
            "cogenerator": lambda: cogenerator_campaign(
                self.ring, samples, max_dim, self.seed
            ),
            "baer": lambda: baer_campaign(
                self.ring, samples, max_dim, self.seed
            ),
            "selfdual": lambda: self_dual_campaign(self.ring),
            "tensor_table": lambda: tensor_table_campaign(self.ring),
            "chuK": lambda: chuK_campaign(self.ring),
        }
        if name in ring_checks:
            return ring_checks[name]()
        raise ValueError(f"unknown check '{name}'")

    def _embed(self, module: Any) -> CheckOutcome:
        embedding = cogenerator_embed(module)
        summands = module.dim - module.action.rank
        problems = []
        if not embedding.map.is_injective():
            problems.append("embedding is not injective")
        if embedding.count > summands:
            problems.append(
                f"r = {embedding.count} exceeds {summands} cyclic summands"
            )
        return CheckOutcome(
            "embed",
            not problems,
            {
                "dim": module.dim,
                "r": embedding.count,
                "orders": list(embedding.orders),
            },
            problems,
        )

    def _law_check(self, stmt: CheckStmt) -> ResultEntry:
        objects = [self._lookup(name) for name in stmt.args]
        problems = self.engine.verify_law(stmt.law, objects, stmt.flags)
        counterexample = None
        if problems:
            counterexample = {
                "law": stmt.law,
                "message": problems[0],
                "objects": {
                    name: obj.to_json()
                    for name, obj in zip(stmt.args, objects)
                },
            }
        return ResultEntry(
            line=stmt.line,
            statement=stmt.text,
            name=stmt.law,
            status="fail" if problems else "pass",
            details={"objects": list(stmt.args)},
            problems=problems,
            counterexample=counterexample,
        )

    # Law campaigns

    def _law_options(self, flags: Dict[str, Any]) -> Dict[str, Any]:
        return {k: v for k, v in flags.items() if k not in TRIAL_FLAGS}

    def laws_entries(self, stmt: LawsStmt) -> List[ResultEntry]:
        engine = self.engine
        law_ids = (
            engine.registry.law_ids()
            if stmt.target == "all"
            else [stmt.target]
        )
        fields = [self.field.p] if self.field is not None else engine.fields
        reports = engine.run_laws(
            law_ids,
            fields,
            samples=stmt.flags.get("samples", engine.samples),
            max_dim=stmt.flags.get("dims", engine.max_dim),
            seed=self.seed,
            statement_options=self._law_options(stmt.flags),
            workers=self.workers,
        )
        entries = []
        for law_report in reports:
            failures = law_report.failures
            entries.append(
                ResultEntry(
                    line=stmt.line,
                    statement=stmt.text,
                    name=law_report.law_id,
                    status="pass" if law_report.passed else "fail",
                    details=law_report.to_json(),
                    problems=[
                        f"trial {found.trial}: {found.message}"
                        for found in failures
                    ],
                    counterexample=(
                        failures[0].to_json() if failures else None
                    ),
                )
            )
        return entries

    def _replay(self, stmt: ReplayStmt) -> ResultEntry:
        flags = stmt.flags
        wanted = Counterexample(
            law_id=stmt.law,
            p=self.field.p,
            seed=flags.get("seed", self.seed),
            trial=stmt.trial,
            message="",
            options=self._law_options(flags),
            max_dim=flags.get("dims", self.engine.max_dim),
        )
        return replay_entry(self.engine, wanted, stmt.line, stmt.text)


def replay_entry(
    engine: LawEngine, wanted: Counterexample, line: int, statement: str
) -> ResultEntry:
    """
    Re-run the trial behind *wanted* and describe the outcome.

    The entry fails when the trial still fails; ``reproduced`` tells
    whether the regenerated message equals the stored one.
    """
    found = engine.replay(wanted)
    details = {
        "law": wanted.law_id,
        "p": wanted.p,
        "seed": wanted.seed,
        "trial": wanted.trial,
        "max_dim": wanted.max_dim,
        "reproduced": found is not None
        and found.message == (wanted.message or found.message),
    }
    return ResultEntry(
        line=line,
        statement=statement,
        name=f"replay {wanted.law_id}",
        status="pass" if found is None else "fail",
        details=details,
        problems=[] if found is None else [found.message],
        counterexample=None if found is None else found.to_json(),
    )


def execute(
    script: Script,
    seed: int = 0,
    engine: Optional[LawEngine] = None,
    workers: Optional[int] = None,
    version: Optional[str] = None,
) -> Report:
    """Run *script* and return its report."""
    if version is None:
        from chulaws import __version__ as version
    interpreter = Interpreter(
        engine or LawEngine(), seed=seed, workers=workers, version=version
    )
    return interpreter.execute(script)
