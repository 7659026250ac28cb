"""Parse PDDL domain and problem texts into ASTs.

The text is first read as generic s-expressions with pyparsing (every token
and list keeps its line and column), then the tree is walked to build the
AST. Anything outside the supported fragment (conjunctions of literals, typed
objects, constants, `=` atoms) raises `UnsupportedFeature` at the position of
the offending construct.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import TYPE_CHECKING

from pyparsing import (
    Forward,
    ParseException,
    Regex,
    StringEnd,
    Suppress,
    Word,
    ZeroOrMore,
    col,
    lineno,
    printables,
)

from causalplan.pddl.ast import (
    ROOT_SORT,
    DomainAst,
    Literal,
    PredicateDecl,
    ProblemAst,
    SchemaAst,
    is_variable,
)
from causalplan.utils import BindingError, PddlSyntaxError, SortError, UnsupportedFeature

if TYPE_CHECKING:
    from pathlib import Path

    from pyparsing import ParseResults

SUPPORTED_REQUIREMENTS = {"strips", "typing", "negative-preconditions", "equality"}

UNSUPPORTED_CONNECTIVES = {
    "or",
    "imply",
    "exists",
    "forall",
    "when",
    "increase",
    "decrease",
    "assign",
    "scale-up",
    "scale-down",
    "preference",
    "either",
}

UNSUPPORTED_SECTIONS = {
    ":functions",
    ":derived",
    ":durative-action",
    ":process",
    ":event",
    ":constraints",
    ":metric",
    ":timed-initial-literals",
}


@dataclass(frozen=True)
class Token:
    """A located identifier."""

    text: str
    line: int
    column: int


@dataclass(frozen=True)
class SList:
    """A located parenthesised list."""

    items: tuple[Token | SList, ...]
    line: int
    column: int


def _token_action(s: str, loc: int, toks: ParseResults) -> Token:
    return Token(toks[0].lower(), lineno(loc, s), col(loc, s))


def _list_action(s: str, loc: int, toks: ParseResults) -> SList:
    return SList(tuple(toks), lineno(loc, s), col(loc, s))


def _sexpr_grammar() -> Forward:
    atom = Word(printables, exclude_chars="();").set_parse_action(_token_action)
    sexpr = Forward()
    sexpr <<= (Suppress("(") + ZeroOrMore(atom | sexpr) + Suppress(")")).set_parse_action(
        _list_action
    )
    return sexpr


SEXPR = _sexpr_grammar()
DOCUMENT = SEXPR + StringEnd()
DOCUMENT.ignore(Suppress(Regex(r";[^\n]*")))


def read_sexpr(text: str) -> SList:
    """Read a single top-level s-expression.

    Args:
        text: The PDDL text.

    Returns:
        The located list tree.

    Raises:
        PddlSyntaxError: If parentheses are unbalanced or the text is empty.

    """
    try:
        result = DOCUMENT.parse_string(text, parse_all=True)
    except ParseException as e:
        raise PddlSyntaxError(e.lineno, e.col, e.msg) from None
    return result[0]


def read_source(path: Path) -> str:
    """Read a PDDL or plan file as UTF-8 text.

    Raises:
        PddlSyntaxError: Located at the first byte that is not UTF-8.

    """
    data = path.read_bytes()
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as e:
        line = data.count(b"\n", 0, e.start) + 1
        column = e.start - data.rfind(b"\n", 0, e.start)
        raise PddlSyntaxError(line, column, "the file is not UTF-8 text").located(path) from None


def _expect_list(node: Token | SList, what: str) -> SList:
    if not isinstance(node, SList):
        raise PddlSyntaxError(node.line, node.column, f"expected {what}, found '{node.text}'")
    return node


def _expect_token(node: Token | SList, what: str) -> Token:
    if not isinstance(node, Token):
        raise PddlSyntaxError(node.line, node.column, f"expected {what}, found a list")
    return node


def _head(node: SList) -> str:
    if node.items and isinstance(node.items[0], Token):
        return node.items[0].text
    return ""


def _typed_list(items: tuple[Token | SList, ...], variables: bool) -> list[tuple[str, str, Token]]:
    """Parse `a b - t c` into `(name, sort, token)` triples; untyped names get the root sort."""
    result: list[tuple[str, str, Token]] = []
    pending: list[Token] = []
    index = 0
    while index < len(items):
        token = _expect_token(items[index], "a name")
        if token.text == "-":
            if index + 1 >= len(items):
                raise PddlSyntaxError(token.line, token.column, "expected a sort after '-'")
            sort = items[index + 1]
            if isinstance(sort, SList):
                feature = _head(sort) or "compound sort"
                raise UnsupportedFeature(feature, sort.line, sort.column)
            if not pending:
                raise PddlSyntaxError(token.line, token.column, "'-' without names")
            result.extend((name.text, sort.text, name) for name in pending)
            pending = []
            index += 2
            continue
        if variables != is_variable(token.text):
            kind = "a variable" if variables else "a name"
            raise PddlSyntaxError(token.line, token.column, f"expected {kind}, found '{token.text}'")
        pending.append(token)
        index += 1
    result.extend((name.text, ROOT_SORT, name) for name in pending)
    return result


def _literal(node: Token | SList) -> Literal:
    node = _expect_list(node, "an atom")
    head = _head(node)
    if not head:
        raise PddlSyntaxError(node.line, node.column, "expected a predicate name")
    if head == "not":
        if len(node.items) != 2:
            raise PddlSyntaxError(node.line, node.column, "'not' takes exactly one atom")
        inner = _expect_list(node.items[1], "an atom")
        inner_head = _head(inner)
        if inner_head in UNSUPPORTED_CONNECTIVES or inner_head in {"and", "not"}:
            raise UnsupportedFeature(f"negated '{inner_head}'", inner.line, inner.column)
        return _literal(inner).negated()
    if head in UNSUPPORTED_CONNECTIVES:
        raise UnsupportedFeature(head, node.line, node.column)
    args = tuple(_expect_token(arg, "a term").text for arg in node.items[1:])
    return Literal(head, args)


def _conjunction(node: Token | SList) -> tuple[Literal, ...]:
    """Flatten a formula made of `and`, `not` and atoms."""
    node = _expect_list(node, "a formula")
    if not node.items:
        return ()
    if _head(node) == "and":
        literals: list[Literal] = []
        for child in node.items[1:]:
            literals.extend(_conjunction(child))
        return tuple(literals)
    return (_literal(node),)


def _check_literal(literal: Literal, node: SList, domain: DomainAst, params: set[str] | None) -> None:
    if literal.is_equality:
        if len(literal.args) != 2:
            raise PddlSyntaxError(node.line, node.column, "'=' takes two terms")
    else:
        predicate = domain.predicate(literal.predicate)
        if predicate is None:
            raise BindingError("predicate", literal.predicate).at(node)
        if predicate.arity != len(literal.args):
            raise BindingError(
                "predicate",
                literal.predicate,
                f"arity {predicate.arity}, used with {len(literal.args)} arguments",
            ).at(node)
    for term in literal.args:
        if is_variable(term) and (params is None or term not in params):
            raise BindingError("variable", term).at(node)


def _sections(root: SList, kind: str) -> tuple[str, list[SList]]:
    if _head(root) != "define" or len(root.items) < 2:
        raise PddlSyntaxError(root.line, root.column, "expected '(define ...'")
    header = _expect_list(root.items[1], f"({kind} <name>)")
    if _head(header) != kind or len(header.items) != 2:
        raise PddlSyntaxError(header.line, header.column, f"expected ({kind} <name>)")
    name = _expect_token(header.items[1], f"{kind} name").text
    sections = [_expect_list(item, "a section") for item in root.items[2:]]
    for section in sections:
        if _head(section) in UNSUPPORTED_SECTIONS:
            raise UnsupportedFeature(_head(section), section.line, section.column)
    return name, sections


def _requirements(section: SList) -> tuple[str, ...]:
    flags = []
    for item in section.items[1:]:
        token = _expect_token(item, "a requirement flag")
        flag = token.text.removeprefix(":")
        if flag not in SUPPORTED_REQUIREMENTS:
            raise UnsupportedFeature(token.text, token.line, token.column)
        flags.append(flag)
    return tuple(flags)


def _schema(section: SList, domain: DomainAst) -> SchemaAst:
    items = section.items
    if len(items) < 2:
        raise PddlSyntaxError(section.line, section.column, "expected an action name")
    name = _expect_token(items[1], "an action name").text
    params: list[tuple[str, str]] = []
    precondition: tuple[Literal, ...] = ()
    effect: tuple[Literal, ...] = ()
    index = 2
    while index < len(items):
        key = _expect_token(items[index], "an action keyword")
        if index + 1 >= len(items):
            raise PddlSyntaxError(key.line, key.column, f"missing value for {key.text}")
        value = items[index + 1]
        if key.text == ":parameters":
            typed = _typed_list(_expect_list(value, "a parameter list").items, variables=True)
            for var, sort, token in typed:
                if sort not in domain.sort_names:
                    raise SortError(f"undeclared sort '{sort}'").at(token)
            params = [(var, sort) for var, sort, _ in typed]
        elif key.text in (":precondition", ":effect"):
            literals = _conjunction(value)
            names = {var for var, _ in params}
            for literal in literals:
                _check_literal(literal, _expect_list(value, "a formula"), domain, names)
            if key.text == ":precondition":
                precondition = literals
            else:
                if any(literal.is_equality for literal in literals):
                    raise UnsupportedFeature("'=' in effects", value.line, value.column)
                effect = literals
        else:
            raise UnsupportedFeature(key.text, key.line, key.column)
        index += 2
    return SchemaAst(name, tuple(params), precondition, effect)


def parse_domain(text: str) -> DomainAst:
    """Parse a PDDL domain.

    Args:
        text: The domain text.

    Returns:
        The domain AST.

    Raises:
        PddlSyntaxError: On malformed input, with line and column.
        UnsupportedFeature: On constructs outside the supported fragment.
        BindingError: On references to undeclared sorts, predicates or variables.

    """
    root = read_sexpr(text)
    name, sections = _sections(root, "domain")
    domain = DomainAst(name)
    for section in sections:
        head = _head(section)
        match head:
            case ":requirements":
                domain = _replace(domain, requirements=_requirements(section))
            case ":types":
                sorts: list[tuple[str, str]] = []
                seen: set[str] = {ROOT_SORT}
                for sort, parent, token in _typed_list(section.items[1:], variables=False):
                    if sort == ROOT_SORT:
                        continue
                    if sort in seen:
                        raise PddlSyntaxError(token.line, token.column, f"duplicate sort '{sort}'")
                    seen.add(sort)
                    sorts.append((sort, parent))
                for sort, parent in sorts:
                    if parent not in seen:
                        raise SortError(f"undeclared sort '{parent}'").at(section)
                domain = _replace(domain, sorts=tuple(sorts))
            case ":constants":
                constants = []
                for obj, sort, token in _typed_list(section.items[1:], variables=False):
                    if sort not in domain.sort_names:
                        raise SortError(f"undeclared sort '{sort}'").at(token)
                    constants.append((obj, sort))
                domain = _replace(domain, constants=tuple(constants))
            case ":predicates":
                predicates = []
                for item in section.items[1:]:
                    decl = _expect_list(item, "a predicate declaration")
                    pred_name = _expect_token(decl.items[0], "a predicate name").text if decl.items else ""
                    if not pred_name:
                        raise PddlSyntaxError(decl.line, decl.column, "expected a predicate name")
                    typed = _typed_list(decl.items[1:], variables=True)
                    for _, sort, token in typed:
                        if sort not in domain.sort_names:
                            raise SortError(f"undeclared sort '{sort}'").at(token)
                    predicates.append(PredicateDecl(pred_name, tuple((v, s) for v, s, _ in typed)))
                domain = _replace(domain, predicates=tuple(predicates))
            case ":action":
                schema = _schema(section, domain)
                domain = _replace(domain, schemas=(*domain.schemas, schema))
            case _:
                raise UnsupportedFeature(head or "anonymous section", section.line, section.column)
    return domain


def parse_problem(text: str, domain: DomainAst) -> ProblemAst:
    """Parse a PDDL problem against its domain.

    Args:
        text: The problem text.
        domain: The parsed domain the problem refers to.

    Returns:
        The problem AST with objects, init and goal bound to declarations.

    Raises:
        PddlSyntaxError: On malformed input.
        UnsupportedFeature: On quantified or disjunctive goals and other constructs.
        BindingError: On undeclared predicates, objects or sorts and arity mismatches.

    """
    root = read_sexpr(text)
    name, sections = _sections(root, "problem")
    domain_name = domain.name
    objects: list[tuple[str, str]] = []
    init: list[Literal] = []
    goal: tuple[Literal, ...] = ()
    known = {obj for obj, _ in domain.constants}
    for section in sections:
        head = _head(section)
        match head:
            case ":domain":
                if len(section.items) != 2:
                    raise PddlSyntaxError(section.line, section.column, "expected (:domain <name>)")
                domain_name = _expect_token(section.items[1], "a domain name").text
                if domain_name != domain.name:
                    raise BindingError("domain", domain_name, f"the domain file defines '{domain.name}'").at(section)
            case ":requirements":
                _requirements(section)
            case ":objects":
                for obj, sort, token in _typed_list(section.items[1:], variables=False):
                    if sort not in domain.sort_names:
                        raise SortError(f"undeclared sort '{sort}'").at(token)
                    if obj in known:
                        raise PddlSyntaxError(token.line, token.column, f"object '{obj}' is declared twice")
                    objects.append((obj, sort))
                    known.add(obj)
            case ":init":
                for item in section.items[1:]:
                    node = _expect_list(item, "an atom")
                    literal = _literal(node)
                    if not literal.positive or literal.is_equality:
                        raise UnsupportedFeature("negative or '=' initial atom", node.line, node.column)
                    _check_literal(literal, node, domain, None)
                    _check_objects(literal, node, known)
                    if literal not in init:
                        init.append(literal)
            case ":goal":
                if len(section.items) != 2:
                    raise PddlSyntaxError(section.line, section.column, "expected (:goal <formula>)")
                node = _expect_list(section.items[1], "a goal formula")
                goal = _conjunction(node)
                for literal in goal:
                    if literal.is_equality:
                        raise UnsupportedFeature("'=' in goals", node.line, node.column)
                    _check_literal(literal, node, domain, None)
                    _check_objects(literal, node, known)
            case _:
                raise UnsupportedFeature(head or "anonymous section", section.line, section.column)
    return ProblemAst(name, domain_name, tuple(objects), tuple(init), goal)


def _check_objects(literal: Literal, node: SList, known: set[str]) -> None:
    for term in literal.args:
        if term not in known:
            raise BindingError("object", term).at(node)


def _replace(domain: DomainAst, **changes: object) -> DomainAst:
    return replace(domain, **changes)
