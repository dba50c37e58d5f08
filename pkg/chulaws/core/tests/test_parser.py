"""
Tests for the script parser.
"""

import pytest

from chulaws.core.parser import (
    MODULE,
    PRESENTED,
    Binding,
    CheckStmt,
    LawsStmt,
    ParseError,
    ReplayStmt,
    ReportStmt,
    parse_program,
)


def _error(text: str) -> ParseError:
    """Parse *text* and return the error it raises."""
    with pytest.raises(ParseError) as excinfo:
        parse_program(text)
    return excinfo.value


def test_parse_field_script():
    """Bindings and checks keep their lines; comments vanish."""
    script = parse_program(
        "# header\n"
        "field 3\n"
        "\n"
        "T := chu 1 2 [[1, 2]]   # a row\n"
        "D := dual T\n"
        "check flags D\n"
    )
    assert script.p == 3
    assert script.n is None
    binding = script.statements[1]
    assert isinstance(binding, Binding)
    assert binding.line == 4
    assert binding.text == "T := chu 1 2 [[1, 2]]"
    assert binding.values == {"dim_a": 1, "dim_x": 2, "rows": [[1, 2]]}
    dual = script.statements[2]
    assert (dual.op, dual.operands) == ("dual", ["T"])
    check = script.statements[3]
    assert isinstance(check, CheckStmt)
    assert (check.check, check.args, check.line) == ("flags", ["D"], 6)


def test_parse_ring_script():
    """Module bindings carry their kind and literal values."""
    script = parse_program(
        "ring 2 3\n"
        "M := cyclic 2\n"
        "X := module 2 [[0, 0], [1, 0]]\n"
        "S := sum M X\n"
        "check embed S\n"
    )
    assert (script.p, script.n) == (2, 3)
    kinds = [s.kind for s in script.statements if isinstance(s, Binding)]
    assert kinds == [MODULE, MODULE, MODULE]
    assert script.statements[1].values == {"order": 2}
    assert script.statements[2].values["rows"] == [[0, 0], [1, 0]]


def test_parse_presented_space():
    """Factor dimensions and generators of a presented space."""
    script = parse_program(
        "field 3\nV := presented [1, 2] {[1, 0, 2], [0, 1, 1]}\n"
    )
    binding = script.statements[1]
    assert binding.kind == PRESENTED
    assert binding.values == {
        "factors": [1, 2],
        "rows": [[1, 0, 2], [0, 1, 1]],
    }


def test_presented_generator_length():
    """Generators must span the whole ambient space."""
    error = _error("field 2\nV := presented [1, 1] {[1]}\n")
    assert error.line == 2
    assert "2 entries" in error.message


def test_law_checks_by_id_and_name():
    """check law LK and check <law name> resolve to catalog ids."""
    script = parse_program(
        "field 2\n"
        "T := chu 1 1 [[1]]\n"
        "check law l5 T T\n"
        "check involution T\n"
        "check law symmetry T T\n"
    )
    laws = [s.law for s in script.statements if isinstance(s, CheckStmt)]
    assert laws == ["L5", "L1", "L5"]


def test_laws_and_replay_flags():
    """Integer flags take a value; other flags are switches."""
    script = parse_program(
        "field 2\n"
        "laws L6 --unrestricted --samples 5\n"
        "laws all --dims 2\n"
        "replay sep-ext-closure 3 --seed 4 --unrestricted\n"
        "report json out.json\n"
    )
    first, second, replay, report = script.statements[1:]
    assert isinstance(first, LawsStmt)
    assert (first.target, first.flags) == (
        "L6",
        {"unrestricted": True, "samples": 5},
    )
    assert (second.target, second.flags) == ("all", {"dims": 2})
    assert isinstance(replay, ReplayStmt)
    assert (replay.law, replay.trial) == ("L6", 3)
    assert replay.flags == {"seed": 4, "unrestricted": True}
    assert isinstance(report, ReportStmt)
    assert (report.format, report.path) == ("json", "out.json")
    assert script.reports == [report]


def test_free_checks_need_no_context():
    """Finite-category checks run without a field."""
    script = parse_program("check appendix chain\ncheck 2adj\ncheck square\n")
    assert script.context is None
    assert [s.check for s in script.statements] == [
        "appendix",
        "2adj",
        "square",
    ]
    assert script.statements[0].args == ["chain"]


@pytest.mark.parametrize(
    "text, line, column, fragment",
    [
        ("field 4\n", 1, 7, "not a prime"),
        ("field 2\nring 2 3\n", 2, 1, "single field or ring"),
        ("field 2\ncheck flags Q\n", 2, 13, "unbound name 'Q'"),
        ("ring 2 3\nM := cyclic 2\ncheck flags M\n", 3, 13, "a module"),
        ("ring 2 3\nM := cyclic 4\n", 2, 13, "outside 1..3"),
        ("T := chu 1 1 [[1]]\n", 1, 6, "needs a field or ring"),
        ("field 2\nM := cyclic 1\n", 2, 6, "needs a ring declaration"),
        ("field 2\nT := chu 2 1 [[1]]\n", 2, 14, "2x1 integer matrix"),
        ("frobnicate\n", 1, 1, "unknown statement"),
        (
            "field 2\nlaws all --samples 3 --samples 4\n",
            2,
            22,
            "repeated flag",
        ),
        ("field 2\nlaws L1 --samples 3 extra\n", 2, 21, "after flags"),
        ("field 2\nlaws all --samples\n", 2, 10, "integer value"),
        ("field 2\nlaws L99\n", 2, 6, "unknown law"),
        ("replay L1 0\n", 1, 1, "needs a field or ring"),
        ("field 2\nreplay L1 -1\n", 2, 11, "trial index"),
        ("field 2\nreport xml\n", 2, 8, "unknown report format"),
        ("field 2\ncheck endK --samples 3\n", 2, 7, "does not take"),
        ("field 2\ncheck flags\n", 2, 7, "takes 1 argument"),
        ("field 2\ncheck selfdual\n", 2, 7, "needs a ring declaration"),
        ("field 2\nT := chu 1 1 [[1]]\ncheck law L5\n", 3, 7, "names"),
        ("field 2\nT := chu 1 1 [[1]\n", 2, 14, "unclosed"),
    ],
)
def test_parse_errors(text, line, column, fragment):
    """Errors carry the 1-based line and column of the culprit."""
    error = _error(text)
    assert (error.line, error.column) == (line, column)
    assert fragment in error.message
    assert str(error).startswith(f"line {line}, column {column}: ")
