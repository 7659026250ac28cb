"""Test the PDDL frontend."""

import logging
from pathlib import Path

import pytest

from causalplan.pddl import (
    TypedTask,
    load_task,
    parse_domain,
    parse_problem,
    read_source,
    unparse_domain,
    unparse_problem,
)
from causalplan.utils import BindingError, PddlSyntaxError, SortError, UnsupportedFeature

TEST_CODES_DIR = Path("/tmp/tests/testcodes").resolve()

UNDECLARED_PREDICATE = """\
(define (domain broken)
  (:requirements :strips)
  (:predicates (p))
  (:action a
    :parameters ()
    :precondition (q)
    :effect (p)))
"""

BAD_SORT = """\
(define (domain broken)
  (:requirements :strips :typing)
  (:types cell)
  (:predicates (p ?c - room)))
"""

TINY_DOMAIN = """\
(define (domain tiny)
  (:requirements :strips :typing)
  (:types cell)
  (:predicates (at ?c - cell)))
"""

TINY_PROBLEM = """\
(define (problem {name})
  {domain}
  (:objects {objects})
  (:init (at a))
  {goal})
"""


def tiny_problem(**sections: str) -> str:
    """Fill the tiny problem template, with well-formed defaults."""
    defaults = {"name": "p", "domain": "(:domain tiny)", "objects": "a b - cell", "goal": "(:goal (at b))"}
    return TINY_PROBLEM.format(**(defaults | sections))


def test_visitall_domain(visitall3_typed: TypedTask) -> None | AssertionError:
    """Parse the visit-all domain and problem."""
    logging.info("Checking predicates and schemas of visit-all")
    assert set(visitall3_typed.predicates) == {"at", "visited", "connected"}
    assert [schema.name for schema in visitall3_typed.schemas] == ["move"]
    assert len(visitall3_typed.objects) == 9
    assert ("at", ("c5",)) in visitall3_typed.init
    assert len(visitall3_typed.goal) == 9


def test_tau(visitall3_typed: TypedTask) -> None | AssertionError:
    """Every parameter of move ranges over the cells."""
    move = visitall3_typed.schemas[0]
    cells = visitall3_typed.sort_members["cell"]
    logging.info(f"move parameters: {move.params}")
    assert visitall3_typed.tau(move) == (cells, cells)


def test_subsorts_and_constants(blocks_typed: TypedTask) -> None | AssertionError:
    """Blocks are places, and the table constant is a place but not a block."""
    assert set(blocks_typed.sort_members["block"]) == {"a", "b", "c"}
    assert set(blocks_typed.sort_members["place"]) == {"a", "b", "c", "table"}
    assert blocks_typed.objects[0] == "table"
    move = next(schema for schema in blocks_typed.schemas if schema.name == "move")
    logging.info(f"move equalities: {move.equalities}")
    assert ("?x", "?z", False) in move.equalities


def test_unbalanced() -> None | AssertionError:
    """A missing parenthesis is a located syntax error."""
    path = TEST_CODES_DIR / "malformed" / "unbalanced.pddl"
    with pytest.raises(PddlSyntaxError) as error:
        load_task(path, path)
    logging.info(str(error.value))
    assert error.value.line >= 1
    assert str(error.value).startswith(f"{path}:")
    assert "syntax error" in str(error.value)


def test_forall() -> None | AssertionError:
    """Quantified preconditions are outside the fragment."""
    text = (TEST_CODES_DIR / "malformed" / "forall.pddl").read_text()
    with pytest.raises(UnsupportedFeature) as error:
        parse_domain(text)
    logging.info(str(error.value))
    assert error.value.feature == "forall"
    assert error.value.line == 5
    assert str(error.value).startswith("<input>:6:")


def test_fluents() -> None | AssertionError:
    """The fluents requirement is rejected."""
    text = (TEST_CODES_DIR / "malformed" / "fluents.pddl").read_text()
    with pytest.raises(UnsupportedFeature) as error:
        parse_domain(text)
    logging.info(str(error.value))
    assert "fluents" in error.value.feature
    assert "unsupported fragment" in str(error.value)


def test_undeclared_predicate() -> None | AssertionError:
    """Preconditions may only use declared predicates."""
    with pytest.raises(BindingError) as error:
        parse_domain(UNDECLARED_PREDICATE)
    logging.info(str(error.value))
    assert error.value.kind == "predicate"
    assert error.value.name == "q"
    assert "undeclared predicate 'q'" in str(error.value)


def test_undeclared_sort() -> None | AssertionError:
    """Predicate parameters may only use declared sorts."""
    with pytest.raises(SortError) as error:
        parse_domain(BAD_SORT)
    logging.info(str(error.value))
    assert "room" in str(error.value)


def test_unparse() -> None | AssertionError:
    """Printed ASTs parse back to the same ASTs."""
    domain = parse_domain((TEST_CODES_DIR / "blocksworld-table" / "domain.pddl").read_text())
    problem = parse_problem((TEST_CODES_DIR / "blocksworld-table" / "p3.pddl").read_text(), domain)
    reparsed = parse_domain(unparse_domain(domain))
    assert reparsed == domain
    assert parse_problem(unparse_problem(problem), reparsed) == problem


def test_tiny_problem() -> None | AssertionError:
    """The well-formed tiny problem parses."""
    problem = parse_problem(tiny_problem(), parse_domain(TINY_DOMAIN))
    assert problem.objects == (("a", "cell"), ("b", "cell"))


@pytest.mark.parametrize(
    ("sections", "line", "expected"),
    [
        ({"domain": "(:domain)"}, 2, "expected (:domain <name>)"),
        ({"goal": "(:goal)"}, 5, "expected (:goal <formula>)"),
        ({"name": ""}, 1, "expected (problem <name>)"),
    ],
)
def test_empty_sections(sections: dict[str, str], line: int, expected: str) -> None | AssertionError:
    """Sections and headers missing their argument are located syntax errors."""
    with pytest.raises(PddlSyntaxError) as error:
        parse_problem(tiny_problem(**sections), parse_domain(TINY_DOMAIN))
    logging.info(str(error.value))
    assert error.value.line == line
    assert expected in str(error.value)


def test_domain_mismatch() -> None | AssertionError:
    """A problem must name the domain it is parsed against."""
    with pytest.raises(BindingError) as error:
        parse_problem(tiny_problem(domain="(:domain other)"), parse_domain(TINY_DOMAIN))
    logging.info(str(error.value))
    assert error.value.kind == "domain"
    assert error.value.name == "other"
    assert error.value.line == 2
    assert "'tiny'" in str(error.value)


def test_duplicate_object() -> None | AssertionError:
    """An object declared twice is refused where it is redeclared."""
    with pytest.raises(PddlSyntaxError) as error:
        parse_problem(tiny_problem(objects="a b - cell a - cell"), parse_domain(TINY_DOMAIN))
    logging.info(str(error.value))
    assert error.value.line == 3
    assert "object 'a' is declared twice" in str(error.value)


def test_not_utf8(tmp_path: Path) -> None | AssertionError:
    """Bytes that are not UTF-8 are a located error, not a decoding crash."""
    path = tmp_path / "domain.pddl"
    path.write_bytes(b"(define \xff")
    with pytest.raises(PddlSyntaxError) as error:
        read_source(path)
    logging.info(str(error.value))
    assert (error.value.line, error.value.column) == (1, 9)
    assert str(error.value).startswith(f"{path}:1:9:")

    path.write_bytes(TINY_DOMAIN.encode() + b"; caf\xe9\n")
    with pytest.raises(PddlSyntaxError) as error:
        load_task(path, path)
    assert error.value.line == 5
