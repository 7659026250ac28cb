"""Regression of formulas through lifted action schemas."""

from __future__ import annotations

import itertools
from dataclasses import replace
from typing import TYPE_CHECKING

from causalplan.pddl.ast import Literal
from causalplan.reachability.formula import Clause, Formula, canonicalize

if TYPE_CHECKING:
    from causalplan.pddl.typecheck import TypedSchema, TypedTask

Pair = tuple[Literal, Literal]


def match_pairs(schema: TypedSchema, literals: frozenset[Literal]) -> tuple[list[Pair], list[Pair]]:
    """Pair effect literals with formula literals over the same predicate.

    Args:
        schema: The schema whose effects are matched.
        literals: The literal part of the formula.

    Returns:
        `(supporters, interferers)`: pairs `(effect, literal)` with equal
        polarity, which may support the literal, and with opposite polarity,
        which would falsify it if their arguments coincide.

    """
    supporters: list[Pair] = []
    interferers: list[Pair] = []
    for effect in schema.eff:
        for literal in sorted(literals, key=str):
            if effect.predicate != literal.predicate:
                continue
            if effect.positive == literal.positive:
                supporters.append((effect, literal))
            else:
                interferers.append((effect, literal))
    return supporters, interferers


def _fresh(schema: TypedSchema) -> TypedSchema:
    """Rename schema parameters apart from canonical formula variables."""
    names = {var: f"?r{i}" for i, (var, _) in enumerate(schema.params)}

    def literal(lit: Literal) -> Literal:
        return Literal(lit.predicate, tuple(names.get(t, t) for t in lit.args), lit.positive)

    return replace(
        schema,
        params=tuple((names[var], sort) for var, sort in schema.params),
        pre=tuple(literal(lit) for lit in schema.pre),
        eff=tuple(literal(lit) for lit in schema.eff),
        equalities=tuple((names.get(a, a), names.get(b, b), eq) for a, b, eq in schema.equalities),
    )


def regress(psi: Formula, schema: TypedSchema, task: TypedTask) -> set[Formula]:
    """Regress a canonical formula through a schema.

    One formula is produced per subset of the supporter pairs: the supported
    literals are replaced by the schema precondition, their arguments are
    equated with the supporting effect, and every interfering effect must
    differ from its literal on at least one argument.

    Args:
        psi: The canonical formula.
        schema: The schema regressed through.
        task: The typed task giving the parameter ranges.

    Returns:
        The satisfiable regressed formulas in canonical form.

    """
    fresh = _fresh(schema)
    supporters, interferers = match_pairs(fresh, psi.literals)

    domains = dict(psi.domains)
    for var, sort in fresh.params:
        domains[var] = frozenset(task.sort_members[sort])
    base_equalities = [(a, b) for a, b, eq in fresh.equalities if eq]
    clauses: set[Clause] = set(psi.diseqs)
    clauses |= {frozenset({(a, b)}) for a, b, eq in fresh.equalities if not eq}
    clauses |= {frozenset(zip(effect.args, literal.args, strict=True)) for effect, literal in interferers}
    ranges = frozenset(domains.items())

    regressed: set[Formula] = set()
    for size in range(len(supporters) + 1):
        for chosen in itertools.combinations(supporters, size):
            supported = {literal for _, literal in chosen}
            literals = frozenset(fresh.pre) | (psi.literals - supported)
            equalities = list(base_equalities)
            for effect, literal in chosen:
                equalities.extend(zip(effect.args, literal.args, strict=True))
            result = canonicalize(Formula(literals, frozenset(clauses), ranges), equalities)
            if result is not None:
                regressed.add(result)
    return regressed
