"""Abstract syntax of the supported PDDL fragment.

Only conjunctions of (possibly negated) atoms are representable: the parser
rejects every other construct before an AST is built. Identifiers are
stored lower-cased; variables keep their leading `?`.
"""

from dataclasses import dataclass, field

ROOT_SORT = "object"
EQUALITY = "="


def is_variable(term: str) -> bool:
    """Return True if the term is a schema variable (`?x`)."""
    return term.startswith("?")


@dataclass(frozen=True)
class Literal:
    """A possibly negated atom `(p t1 ... tn)`.

    Attributes:
        predicate: The predicate name, or `=` for an equality atom.
        args: The argument terms (variables or object names).
        positive: False for `(not ...)`.

    """

    predicate: str
    args: tuple[str, ...]
    positive: bool = True

    @property
    def is_equality(self) -> bool:
        """Whether this literal is a PDDL `=` atom."""
        return self.predicate == EQUALITY

    def negated(self) -> "Literal":
        """Return the literal with opposite polarity."""
        return Literal(self.predicate, self.args, not self.positive)

    def __str__(self) -> str:
        """Return the PDDL text of the literal."""
        atom = f"({' '.join((self.predicate, *self.args))})"
        return atom if self.positive else f"(not {atom})"


@dataclass(frozen=True)
class PredicateDecl:
    """A predicate declaration with typed parameters.

    Attributes:
        name: The predicate name.
        params: The `(variable, sort)` pairs of the declaration.

    """

    name: str
    params: tuple[tuple[str, str], ...]

    @property
    def arity(self) -> int:
        """Number of arguments d_P."""
        return len(self.params)

    @property
    def param_sorts(self) -> tuple[str, ...]:
        """Declared sort of each argument position."""
        return tuple(sort for _, sort in self.params)


@dataclass(frozen=True)
class SchemaAst:
    """An action schema as written in the domain.

    Attributes:
        name: The schema name.
        params: The `(variable, sort)` parameter list.
        precondition: Conjunction of literals, equality atoms included.
        effect: Conjunction of literals; negative literals are deletes.

    """

    name: str
    params: tuple[tuple[str, str], ...]
    precondition: tuple[Literal, ...] = ()
    effect: tuple[Literal, ...] = ()


@dataclass(frozen=True)
class DomainAst:
    """A parsed PDDL domain.

    Attributes:
        name: The domain name.
        requirements: The declared requirement flags, without the colon.
        sorts: `(sort, parent)` pairs in declaration order.
        constants: `(object, sort)` pairs of the domain constants.
        predicates: Predicate declarations.
        schemas: Action schemas.

    """

    name: str
    requirements: tuple[str, ...] = ()
    sorts: tuple[tuple[str, str], ...] = ()
    constants: tuple[tuple[str, str], ...] = ()
    predicates: tuple[PredicateDecl, ...] = ()
    schemas: tuple[SchemaAst, ...] = ()

    def predicate(self, name: str) -> PredicateDecl | None:
        """Return the declaration of a predicate, if any."""
        for predicate in self.predicates:
            if predicate.name == name:
                return predicate
        return None

    @property
    def sort_names(self) -> set[str]:
        """All declared sort names, the root sort included."""
        return {ROOT_SORT} | {sort for sort, _ in self.sorts}


@dataclass(frozen=True)
class ProblemAst:
    """A parsed PDDL problem bound against its domain.

    Attributes:
        name: The problem name.
        domain_name: The domain the problem refers to.
        objects: `(object, sort)` pairs in declaration order.
        init: Ground positive atoms of the initial state.
        goal: Ground literals that must hold at the end of a plan.

    """

    name: str
    domain_name: str
    objects: tuple[tuple[str, str], ...] = ()
    init: tuple[Literal, ...] = ()
    goal: tuple[Literal, ...] = field(default=())
