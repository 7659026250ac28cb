"""Print ASTs back to PDDL text."""

from causalplan.pddl.ast import DomainAst, Literal, ProblemAst


def _typed(pairs: tuple[tuple[str, str], ...]) -> str:
    return " ".join(f"{name} - {sort}" for name, sort in pairs)


def _conjunction(literals: tuple[Literal, ...]) -> str:
    return f"(and {' '.join(str(literal) for literal in literals)})" if literals else "()"


def unparse_domain(domain: DomainAst) -> str:
    """Render a domain AST as PDDL.

    Args:
        domain: The AST to print.

    Returns:
        PDDL text that parses back to an equal AST.

    """
    lines = [f"(define (domain {domain.name})"]
    if domain.requirements:
        lines.append(f"  (:requirements {' '.join(':' + flag for flag in domain.requirements)})")
    if domain.sorts:
        lines.append(f"  (:types {_typed(domain.sorts)})")
    if domain.constants:
        lines.append(f"  (:constants {_typed(domain.constants)})")
    if domain.predicates:
        lines.append("  (:predicates")
        for predicate in domain.predicates:
            params = f" {_typed(predicate.params)}" if predicate.params else ""
            lines.append(f"    ({predicate.name}{params})")
        lines.append("  )")
    for schema in domain.schemas:
        lines.append(f"  (:action {schema.name}")
        lines.append(f"    :parameters ({_typed(schema.params)})")
        lines.append(f"    :precondition {_conjunction(schema.precondition)}")
        lines.append(f"    :effect {_conjunction(schema.effect)})")
    lines.append(")")
    return "\n".join(lines) + "\n"


def unparse_problem(problem: ProblemAst) -> str:
    """Render a problem AST as PDDL.

    Args:
        problem: The AST to print.

    Returns:
        PDDL text that parses back to an equal AST against the same domain.

    """
    lines = [
        f"(define (problem {problem.name})",
        f"  (:domain {problem.domain_name})",
        f"  (:objects {_typed(problem.objects)})",
        "  (:init",
        *(f"    {literal}" for literal in problem.init),
        "  )",
        f"  (:goal {_conjunction(problem.goal)})",
        ")",
    ]
    return "\n".join(lines) + "\n"
