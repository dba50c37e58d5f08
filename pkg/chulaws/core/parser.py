"""
Parser for chulaws scripts.

A script is line oriented; ``#`` starts a comment. Statements:

    field P
    ring P N
    NAME := chu A X [[..], ..]
    NAME := dual|S|E NAME
    NAME := tensor|hom NAME NAME
    NAME := cyclic I
    NAME := sum NAME NAME
    NAME := module DIM [[..], ..]
    NAME := presented [D, ..] {[..], ..}
    check CHECKNAME ARGS* FLAGS*
    check law LK NAMES*
    laws all|LK FLAGS*
    replay LK TRIAL FLAGS*
    report text|json [PATH]

Flags are ``--name`` optionally followed by an integer.
"""

import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

from .linalg import MAX_MODULUS, is_prime
from .registry import LawRegistry, RegistryError

CHU = "chu"
MODULE = "module"
PRESENTED = "presented"
SITUATION = "situation"
# Checks that run without a field or ring
FREE = "free"

KIND_LABELS = {
    CHU: "a chu object",
    MODULE: "a module",
    PRESENTED: "a presented space",
}

CheckSpec = Tuple[Tuple[str, ...], Tuple[str, ...], Optional[str]]

# check name -> (argument kinds, allowed flags, required context)
CHECKS: Dict[str, CheckSpec] = {
    "flags": ((CHU,), (), None),
    "FR": ((CHU,), (), None),
    "RFR": ((CHU,), (), None),
    "RF": ((PRESENTED,), (), None),
    "endK": ((), (), "field"),
    "fr_identity": ((), ("samples", "dims"), "field"),
    "rf_sigma": ((), ("samples", "factors", "dims"), "field"),
    "factorization": ((), ("samples", "factors"), "field"),
    "topo_closure": ((), ("dims",), "field"),
    "selfinjective": ((), ("samples", "dim"), "ring"),
    "cogenerator": ((), ("samples", "dim"), "ring"),
    "selfdual": ((), (), "ring"),
    "tensor_table": ((), (), "ring"),
    "baer": ((), ("samples", "dim"), "ring"),
    "chuK": ((), (), "ring"),
    "embed": ((MODULE,), (), "ring"),
    "appendix": ((SITUATION,), (), FREE),
    "2adj": ((), (), FREE),
    "square": ((), (), FREE),
}

UNARY_OPS = ("dual", "S", "E")
BINARY_OPS = ("tensor", "hom")
REPORT_FORMATS = ("text", "json")
# Flags that must carry an integer value
INT_FLAGS = ("samples", "dims", "dim", "factors", "seed")

NAME_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")
LAW_RE = re.compile(r"^[Ll]\d+$")
TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
    |(?P<assign>:=)
    |(?P<flag>--[A-Za-z][A-Za-z0-9_-]*)
    |(?P<int>-?\d+(?![A-Za-z_]))
    |(?P<punct>[\[\]{},])
    |(?P<word>[^\s\[\]{},]+)
    """,
    re.VERBOSE,
)

Nested = Union[int, List["Nested"]]


class ParseError(ValueError):
    """A syntax or binding error with its 1-based line and column."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Token:
    """One lexeme with its 1-based column."""

    kind: str
    text: str
    column: int


@dataclass
class Statement:
    """
    Common statement fields.

    Attributes:
        line: 1-based source line
        column: Column of the first token
        text: Source line without comment and surrounding blanks
    """

    line: int
    column: int
    text: str


@dataclass
class ContextDecl(Statement):
    """``field P`` (n is None) or ``ring P N``."""

    p: int = 2
    n: Optional[int] = None


@dataclass
class Binding(Statement):
    """
    ``NAME := OP ARGS``.

    Attributes:
        name: Bound name
        op: chu, dual, S, E, tensor, hom, cyclic, sum, module, presented
        operands: Names the operation consumes
        values: Literal arguments (dimensions, matrices, factor lists)
        kind: Kind of the bound value (chu, module or presented)
    """

    name: str = ""
    op: str = ""
    operands: List[str] = field(default_factory=list)
    values: Dict[str, Any] = field(default_factory=dict)
    kind: str = CHU


@dataclass
class CheckStmt(Statement):
    """``check NAME ARGS FLAGS`` or ``check law LK NAMES``."""

    check: str = ""
    args: List[str] = field(default_factory=list)
    flags: Dict[str, Any] = field(default_factory=dict)
    law: Optional[str] = None


@dataclass
class LawsStmt(Statement):
    """``laws all|LK FLAGS``."""

    target: str = "all"
    flags: Dict[str, Any] = field(default_factory=dict)


@dataclass
class ReplayStmt(Statement):
    """``replay LK TRIAL FLAGS``."""

    law: str = ""
    trial: int = 0
    flags: Dict[str, Any] = field(default_factory=dict)


@dataclass
class ReportStmt(Statement):
    """``report text|json [PATH]``."""

    format: str = "json"
    path: Optional[str] = None


@dataclass
class Script:
    """
    A parsed script.

    Attributes:
        statements: Statements in source order
        context: The single field or ring declaration, if any
    """

    statements: List[Statement] = field(default_factory=list)
    context: Optional[ContextDecl] = None

    @property
    def p(self) -> Optional[int]:
        """Field modulus of the context."""
        return None if self.context is None else self.context.p

    @property
    def n(self) -> Optional[int]:
        """Nilpotency length of a ring context."""
        return None if self.context is None else self.context.n

    @property
    def reports(self) -> List[ReportStmt]:
        """Report directives in source order."""
        return [s for s in self.statements if isinstance(s, ReportStmt)]


def _catalog_names() -> Dict[str, str]:
    """Law name, script name and id of every catalog law, mapped to id."""
    registry_path = Path(__file__).resolve().parent.parent / "registry.json"
    try:
        registry = LawRegistry(registry_path)
    except RegistryError:
        return {}
    names: Dict[str, str] = {}
    for entry in registry.entries():
        for key in (entry.law_id, entry.name, entry.script):
            names[key] = entry.law_id
    return names


def tokenize(text: str, line: int) -> List[Token]:
    """Split one comment-free line into tokens."""
    tokens = []
    position = 0
    while position < len(text):
        match = TOKEN_RE.match(text, position)
        if match is None:
            raise ParseError(
                f"unexpected character {text[position]!r}",
                line,
                position + 1,
            )
        kind = match.lastgroup or "word"
        if kind != "ws":
            tokens.append(Token(kind, match.group(), position + 1))
        position = match.end()
    return tokens


class ScriptParser:
    """
    Parses script text into a Script.
    """

    def __init__(self, text: str):
        """
        Initialize the parser.

        Args:
            text: Script source
        """
        self.text = text
        self.law_names = _catalog_names()
        self._kinds: Dict[str, str] = {}
        self._context: Optional[ContextDecl] = None

    def parse(self) -> Script:
        """
        Parse every line.

        Raises:
            ParseError: at the first bad line
        """
        script = Script()
        for number, raw in enumerate(self.text.splitlines(), start=1):
            source = raw.split("#", 1)[0]
            tokens = tokenize(source, number)
            if not tokens:
                continue
            statement = self._statement(tokens, number, source.strip())
            script.statements.append(statement)
        script.context = self._context
        return script

    def _statement(
        self, tokens: List[Token], line: int, text: str
    ) -> Statement:
        head = tokens[0]
        if len(tokens) > 1 and tokens[1].kind == "assign":
            return self._binding(tokens, line, text)
        handlers = {
            "field": self._field,
            "ring": self._ring,
            "check": self._check,
            "laws": self._laws,
            "replay": self._replay,
            "report": self._report,
        }
        handler = handlers.get(head.text)
        if handler is None:
            raise ParseError(
                f"unknown statement '{head.text}'", line, head.column
            )
        return handler(tokens, line, text)

    # Context declarations

    def _declare(self, decl: ContextDecl, token: Token) -> ContextDecl:
        if self._context is not None:
            raise ParseError(
                "a script has a single field or ring declaration",
                decl.line,
                token.column,
            )
        self._context = decl
        return decl

    def _prime(self, token: Token, line: int) -> int:
        value = self._int(token, line)
        if not is_prime(value) or value > MAX_MODULUS:
            raise ParseError(
                f"{value} is not a prime modulus", line, token.column
            )
        return value

    def _field(self, tokens: List[Token], line: int, text: str) -> Statement:
        self._arity(tokens, 2, line)
        decl = ContextDecl(
            line, tokens[0].column, text, p=self._prime(tokens[1], line)
        )
        return self._declare(decl, tokens[0])

    def _ring(self, tokens: List[Token], line: int, text: str) -> Statement:
        self._arity(tokens, 3, line)
        n = self._int(tokens[2], line)
        if n < 1:
            raise ParseError(
                "ring length must be positive", line, tokens[2].column
            )
        decl = ContextDecl(
            line,
            tokens[0].column,
            text,
            p=self._prime(tokens[1], line),
            n=n,
        )
        return self._declare(decl, tokens[0])

    # Bindings

    def _binding(self, tokens: List[Token], line: int, text: str) -> Statement:
        name_tok = tokens[0]
        if not NAME_RE.match(name_tok.text):
            raise ParseError(
                f"'{name_tok.text}' is not a valid name", line, name_tok.column
            )
        if len(tokens) < 3:
            raise ParseError(
                "missing operation after ':='", line, tokens[1].column
            )
        op_tok = tokens[2]
        op = op_tok.text
        rest = tokens[3:]
        binding = Binding(
            line, name_tok.column, text, name=name_tok.text, op=op
        )
        if op == "chu":
            self._need_context(None, line, op_tok)
            self._chu_literal(binding, rest, line, op_tok)
        elif op in UNARY_OPS:
            self._operands(binding, rest, 1, CHU, line, op_tok)
        elif op in BINARY_OPS:
            self._operands(binding, rest, 2, CHU, line, op_tok)
        elif op == "cyclic":
            self._need_context("ring", line, op_tok)
            if len(rest) != 1:
                raise ParseError("cyclic takes one order", line, op_tok.column)
            order = self._int(rest[0], line)
            if not 1 <= order <= (self._context.n or 0):
                raise ParseError(
                    f"cyclic order {order} outside 1..{self._context.n}",
                    line,
                    rest[0].column,
                )
            binding.values["order"] = order
            binding.kind = MODULE
        elif op == "sum":
            self._need_context("ring", line, op_tok)
            self._operands(binding, rest, 2, MODULE, line, op_tok)
            binding.kind = MODULE
        elif op == "module":
            self._need_context("ring", line, op_tok)
            self._module_literal(binding, rest, line, op_tok)
            binding.kind = MODULE
        elif op == "presented":
            self._need_context(None, line, op_tok)
            self._presented_literal(binding, rest, line, op_tok)
            binding.kind = PRESENTED
        else:
            raise ParseError(f"unknown operation '{op}'", line, op_tok.column)
        self._kinds[binding.name] = binding.kind
        return binding

    def _operands(
        self,
        binding: Binding,
        rest: List[Token],
        count: int,
        kind: str,
        line: int,
        op_tok: Token,
    ) -> None:
        if len(rest) != count:
            raise ParseError(
                f"{op_tok.text} takes {count} name(s), got {len(rest)}",
                line,
                op_tok.column,
            )
        for token in rest:
            self._bound(token, kind, line)
            binding.operands.append(token.text)

    def _chu_literal(
        self, binding: Binding, rest: List[Token], line: int, op_tok: Token
    ) -> None:
        if len(rest) < 3:
            raise ParseError(
                "chu takes A X [[..]]", line, op_tok.column
            )
        dim_a = self._int(rest[0], line)
        dim_x = self._int(rest[1], line)
        rows, end = self._nested(rest, 2, line)
        self._trailing(rest, end, line)
        binding.values.update(
            dim_a=dim_a,
            dim_x=dim_x,
            rows=self._matrix(rows, dim_a, dim_x, line, rest[2]),
        )

    def _module_literal(
        self, binding: Binding, rest: List[Token], line: int, op_tok: Token
    ) -> None:
        if len(rest) < 2:
            raise ParseError("module takes DIM [[..]]", line, op_tok.column)
        dim = self._int(rest[0], line)
        rows, end = self._nested(rest, 1, line)
        self._trailing(rest, end, line)
        binding.values.update(
            dim=dim, rows=self._matrix(rows, dim, dim, line, rest[1])
        )

    def _presented_literal(
        self, binding: Binding, rest: List[Token], line: int, op_tok: Token
    ) -> None:
        if not rest:
            raise ParseError(
                "presented takes [D, ..] {[..], ..}", line, op_tok.column
            )
        factors, end = self._nested(rest, 0, line)
        if not isinstance(factors, list) or not all(
            isinstance(d, int) and d >= 1 for d in factors
        ):
            raise ParseError(
                "factor dimensions must be positive integers",
                line,
                rest[0].column,
            )
        total = sum(factors)
        generators: List[List[int]] = []
        if end < len(rest):
            generators, end = self._generators(rest, end, line, total)
        self._trailing(rest, end, line)
        binding.values.update(factors=factors, rows=generators)

    def _generators(
        self, rest: List[Token], start: int, line: int, total: int
    ) -> Tuple[List[List[int]], int]:
        open_tok = rest[start]
        if open_tok.text != "{":
            raise ParseError("expected '{'", line, open_tok.column)
        rows: List[List[int]] = []
        position = start + 1
        while position < len(rest) and rest[position].text != "}":
            if rest[position].text == ",":
                position += 1
                continue
            row, position = self._nested(rest, position, line)
            if not isinstance(row, list) or len(row) != total:
                raise ParseError(
                    f"generator rows need {total} entries",
                    line,
                    open_tok.column,
                )
            if not all(isinstance(v, int) for v in row):
                raise ParseError(
                    "generator entries must be integers",
                    line,
                    open_tok.column,
                )
            rows.append(row)
        if position >= len(rest):
            raise ParseError("unclosed '{'", line, open_tok.column)
        return rows, position + 1

    # Checks and directives

    def _check(self, tokens: List[Token], line: int, text: str) -> Statement:
        if len(tokens) < 2:
            raise ParseError(
                "check needs a check name", line, tokens[0].column
            )
        name_tok = tokens[1]
        args, flags = self._args_and_flags(tokens[2:], line)
        stmt = CheckStmt(line, tokens[0].column, text, check=name_tok.text)
        if name_tok.text == "law":
            if not args or not self._is_law(args[0].text):
                raise ParseError(
                    "check law needs a catalog law id", line, name_tok.column
                )
            stmt.law = self.law_names.get(args[0].text, args[0].text.upper())
            args = args[1:]
        elif name_tok.text in self.law_names:
            stmt.law = self.law_names[name_tok.text]
        if stmt.law is not None:
            if not args:
                raise ParseError(
                    f"{stmt.law} needs the names of chu objects",
                    line,
                    name_tok.column,
                )
            for token in args:
                self._bound(token, CHU, line)
            stmt.args = [token.text for token in args]
            stmt.flags = flags
            return stmt
        spec = CHECKS.get(name_tok.text)
        if spec is None:
            raise ParseError(
                f"unknown check '{name_tok.text}'", line, name_tok.column
            )
        kinds, allowed, context = spec
        if context != FREE:
            self._need_context(context, line, name_tok)
        if len(args) != len(kinds):
            raise ParseError(
                f"{name_tok.text} takes {len(kinds)} argument(s), "
                f"got {len(args)}",
                line,
                name_tok.column,
            )
        for token, kind in zip(args, kinds):
            if kind != SITUATION:
                self._bound(token, kind, line)
        for key in flags:
            if key not in allowed:
                raise ParseError(
                    f"{name_tok.text} does not take --{key}",
                    line,
                    name_tok.column,
                )
        stmt.args = [token.text for token in args]
        stmt.flags = flags
        return stmt

    def _laws(self, tokens: List[Token], line: int, text: str) -> Statement:
        if len(tokens) < 2:
            raise ParseError(
                "laws needs 'all' or a law id", line, tokens[0].column
            )
        target_tok = tokens[1]
        if target_tok.text == "all":
            target = "all"
        elif self._is_law(target_tok.text):
            target = self.law_names.get(
                target_tok.text, target_tok.text.upper()
            )
        else:
            raise ParseError(
                f"unknown law '{target_tok.text}'", line, target_tok.column
            )
        args, flags = self._args_and_flags(tokens[2:], line)
        if args:
            raise ParseError(
                f"unexpected argument '{args[0].text}'", line, args[0].column
            )
        return LawsStmt(
            line, tokens[0].column, text, target=target, flags=flags
        )

    def _replay(self, tokens: List[Token], line: int, text: str) -> Statement:
        if len(tokens) < 3:
            raise ParseError("replay takes LK TRIAL", line, tokens[0].column)
        law_tok, trial_tok = tokens[1], tokens[2]
        if not self._is_law(law_tok.text):
            raise ParseError(
                f"unknown law '{law_tok.text}'", line, law_tok.column
            )
        self._need_context(None, line, tokens[0])
        trial = self._int(trial_tok, line)
        if trial < 0:
            raise ParseError(
                "trial index must be >= 0", line, trial_tok.column
            )
        args, flags = self._args_and_flags(tokens[3:], line)
        if args:
            raise ParseError(
                f"unexpected argument '{args[0].text}'", line, args[0].column
            )
        return ReplayStmt(
            line,
            tokens[0].column,
            text,
            law=self.law_names.get(law_tok.text, law_tok.text.upper()),
            trial=trial,
            flags=flags,
        )

    def _report(self, tokens: List[Token], line: int, text: str) -> Statement:
        if len(tokens) not in (2, 3):
            raise ParseError(
                "report takes text|json [PATH]", line, tokens[0].column
            )
        fmt_tok = tokens[1]
        if fmt_tok.text not in REPORT_FORMATS:
            raise ParseError(
                f"unknown report format '{fmt_tok.text}'", line, fmt_tok.column
            )
        path = tokens[2].text if len(tokens) == 3 else None
        return ReportStmt(
            line, tokens[0].column, text, format=fmt_tok.text, path=path
        )

    # Helpers

    def _is_law(self, text: str) -> bool:
        if text in self.law_names:
            return True
        return bool(LAW_RE.match(text)) and text.upper() in self.law_names

    def _need_context(
        self, wanted: Optional[str], line: int, token: Token
    ) -> None:
        """None means any declared context; 'ring' needs ``ring P N``."""
        if self._context is None:
            raise ParseError(
                f"'{token.text}' needs a field or ring declaration first",
                line,
                token.column,
            )
        if wanted == "ring" and self._context.n is None:
            raise ParseError(
                f"'{token.text}' needs a ring declaration", line, token.column
            )

    def _bound(self, token: Token, kind: str, line: int) -> None:
        if token.text not in self._kinds:
            raise ParseError(
                f"unbound name '{token.text}'", line, token.column
            )
        actual = self._kinds[token.text]
        if actual != kind:
            raise ParseError(
                f"'{token.text}' is {KIND_LABELS[actual]}, expected "
                f"{KIND_LABELS[kind]}",
                line,
                token.column,
            )

    @staticmethod
    def _int(token: Token, line: int) -> int:
        if token.kind != "int":
            raise ParseError(
                f"expected an integer, got '{token.text}'", line, token.column
            )
        return int(token.text)

    @staticmethod
    def _arity(tokens: List[Token], count: int, line: int) -> None:
        if len(tokens) != count:
            raise ParseError(
                f"'{tokens[0].text}' takes {count - 1} argument(s)",
                line,
                tokens[0].column,
            )

    @staticmethod
    def _trailing(rest: List[Token], end: int, line: int) -> None:
        if end < len(rest):
            raise ParseError(
                f"unexpected '{rest[end].text}'", line, rest[end].column
            )

    def _nested(
        self, tokens: List[Token], start: int, line: int
    ) -> Tuple[Nested, int]:
        """Parse ``[..]`` (nested, comma separated) starting at *start*."""
        if start >= len(tokens):
            column = tokens[-1].column if tokens else 1
            raise ParseError("expected '['", line, column)
        token = tokens[start]
        if token.kind == "int":
            return int(token.text), start + 1
        if token.text != "[":
            raise ParseError(
                f"expected '[' or an integer, got '{token.text}'",
                line,
                token.column,
            )
        items: List[Nested] = []
        position = start + 1
        expect_item = True
        while position < len(tokens):
            current = tokens[position]
            if current.text == "]":
                return items, position + 1
            if current.text == ",":
                if expect_item:
                    raise ParseError("unexpected ','", line, current.column)
                expect_item = True
                position += 1
                continue
            if not expect_item:
                raise ParseError("expected ',' or ']'", line, current.column)
            item, position = self._nested(tokens, position, line)
            items.append(item)
            expect_item = False
        raise ParseError("unclosed '['", line, token.column)

    @staticmethod
    def _matrix(
        rows: Nested, height: int, width: int, line: int, token: Token
    ) -> List[List[int]]:
        """Check a nested literal is a height x width integer matrix."""
        if height < 0 or width < 0:
            raise ParseError("dimensions must be >= 0", line, token.column)
        if not isinstance(rows, list):
            raise ParseError("expected a matrix", line, token.column)
        if height == 0:
            if rows not in ([], [[]]):
                raise ParseError(
                    "expected [] for zero rows", line, token.column
                )
            return []
        if len(rows) != height or not all(
            isinstance(row, list)
            and len(row) == width
            and all(isinstance(v, int) for v in row)
            for row in rows
        ):
            raise ParseError(
                f"expected a {height}x{width} integer matrix",
                line,
                token.column,
            )
        return [list(row) for row in rows]

    def _args_and_flags(
        self, tokens: List[Token], line: int
    ) -> Tuple[List[Token], Dict[str, Any]]:
        """Positional tokens, then ``--flag [INT]`` pairs."""
        args: List[Token] = []
        flags: Dict[str, Any] = {}
        position = 0
        while position < len(tokens):
            token = tokens[position]
            if token.kind == "flag":
                key = token.text[2:].replace("-", "_")
                if key in flags:
                    raise ParseError(
                        f"repeated flag {token.text}", line, token.column
                    )
                following = (
                    tokens[position + 1]
                    if position + 1 < len(tokens)
                    else None
                )
                if following is not None and following.kind == "int":
                    value = int(following.text)
                    if value < 0:
                        raise ParseError(
                            f"{token.text} must be >= 0",
                            line,
                            following.column,
                        )
                    flags[key] = value
                    position += 2
                elif key in INT_FLAGS:
                    raise ParseError(
                        f"{token.text} needs an integer value",
                        line,
                        token.column,
                    )
                else:
                    flags[key] = True
                    position += 1
                continue
            if flags:
                raise ParseError(
                    f"argument '{token.text}' after flags", line, token.column
                )
            args.append(token)
            position += 1
        return args, flags


def parse_program(text: str) -> Script:
    """
    Parse script text.

    Raises:
        ParseError: with the line and column of the first problem
    """
    return ScriptParser(text).parse()
