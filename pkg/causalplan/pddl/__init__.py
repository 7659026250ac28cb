"""PDDL frontend: parsing, printing and type-checking of the supported fragment."""

from __future__ import annotations

from typing import TYPE_CHECKING

from causalplan.pddl.ast import DomainAst, Literal, PredicateDecl, ProblemAst, SchemaAst
from causalplan.pddl.parser import parse_domain, parse_problem, read_source
from causalplan.pddl.printer import unparse_domain, unparse_problem
from causalplan.pddl.typecheck import TypedSchema, TypedTask, typecheck
from causalplan.utils import PddlError

if TYPE_CHECKING:
    from pathlib import Path

__all__ = [
    "DomainAst",
    "Literal",
    "PredicateDecl",
    "ProblemAst",
    "SchemaAst",
    "TypedSchema",
    "TypedTask",
    "load_task",
    "parse_domain",
    "parse_problem",
    "read_source",
    "typecheck",
    "unparse_domain",
    "unparse_problem",
]


def load_task(domain_path: Path, problem_path: Path) -> TypedTask:
    """Read, parse and type-check a domain/problem file pair.

    Errors are re-raised with the path of the file they occur in, so that they
    print as `file:line:col: message`.

    """
    try:
        domain = parse_domain(read_source(domain_path))
    except PddlError as e:
        raise e.located(domain_path) from None
    try:
        problem = parse_problem(read_source(problem_path), domain)
    except PddlError as e:
        raise e.located(problem_path) from None
    return typecheck(domain, problem)
