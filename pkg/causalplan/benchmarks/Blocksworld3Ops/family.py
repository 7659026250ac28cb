"""Blocks world with the three move actions.

Initial and goal configurations are random sets of towers drawn from the
`seed` parameter.
"""

from __future__ import annotations

from typing import TYPE_CHECKING

from causalplan.benchmarks.core.family import InstanceFamily, Params, atoms, objects

if TYPE_CHECKING:
    import numpy as np

DOMAIN = """\
(define (domain blocksworld-3ops)
  (:requirements :strips :typing :equality :negative-preconditions)
  (:types block)
  (:predicates
    (on ?x ?y - block)
    (ontable ?x - block)
    (clear ?x - block))
  (:action move
    :parameters (?x ?y ?z - block)
    :precondition (and (on ?x ?y) (clear ?x) (clear ?z) (not (= ?x ?z)) (not (= ?y ?z)))
    :effect (and (on ?x ?z) (clear ?y) (not (on ?x ?y)) (not (clear ?z))))
  (:action move-to-table
    :parameters (?x ?y - block)
    :precondition (and (on ?x ?y) (clear ?x))
    :effect (and (ontable ?x) (clear ?y) (not (on ?x ?y))))
  (:action move-from-table
    :parameters (?x ?y - block)
    :precondition (and (ontable ?x) (clear ?x) (clear ?y) (not (= ?x ?y)))
    :effect (and (on ?x ?y) (not (ontable ?x)) (not (clear ?y)))))
"""


def towers(blocks: list[str], rng: np.random.Generator) -> list[list[str]]:
    """Split a random permutation of the blocks into towers, bottom first."""
    order = [blocks[i] for i in rng.permutation(len(blocks))]
    result = [[order[0]]] if order else []
    for block in order[1:]:
        if rng.random() < 0.5:
            result.append([block])
        else:
            result[-1].append(block)
    return result


def tower_facts(stacks: list[list[str]]) -> list[tuple[str, ...]]:
    """`ontable`, `on` and `clear` atoms of a configuration."""
    facts: list[tuple[str, ...]] = []
    for stack in stacks:
        facts.append(("ontable", stack[0]))
        facts.extend(("on", upper, lower) for lower, upper in zip(stack, stack[1:], strict=False))
        facts.append(("clear", stack[-1]))
    return facts


def tower_goal(stacks: list[list[str]]) -> list[tuple[str, ...]]:
    """The `on` atoms of a configuration, or its `ontable` atoms when it is flat."""
    goal = [fact for fact in tower_facts(stacks) if fact[0] == "on"]
    return goal or [fact for fact in tower_facts(stacks) if fact[0] == "ontable"]


def block_problem(domain: str, params: Params, init: list[tuple[str, ...]], goal: list[tuple[str, ...]]) -> str:
    """Render a blocks world problem."""
    blocks = [f"b{i}" for i in range(1, params["blocks"] + 1)]
    return f"""\
(define (problem {domain}-{params["blocks"]}-{params["seed"]})
  (:domain {domain})
  (:objects {objects(blocks, "block")})
  (:init
{atoms(init)})
  (:goal (and
{atoms(goal)})))
"""


class Blocksworld3Ops(InstanceFamily):
    """Blocks world with `move`, `move-to-table` and `move-from-table`."""

    name = "Blocksworld3Ops"
    description = "Blocks world with move, move-to-table and move-from-table"
    defaults = {"blocks": 3, "seed": 0}

    def domain_text(self) -> str:
        """Return the three-operator domain."""
        return DOMAIN

    def problem_text(self, params: Params) -> str:
        """Return a problem with random initial and goal towers.

        Raises:
            ValueError: If there are fewer than two blocks.

        """
        if params["blocks"] < 2:
            raise ValueError("blocks world needs at least two blocks")
        rng = self.rng(params)
        blocks = [f"b{i}" for i in range(1, params["blocks"] + 1)]
        init = tower_facts(towers(blocks, rng))
        goal = tower_goal(towers(blocks, rng))
        return block_problem("blocksworld-3ops", params, init, goal)

    def suite(self) -> list[Params]:
        """Two to four blocks, three seeds each."""
        return [{"blocks": n, "seed": seed} for n in (2, 3, 4) for seed in range(3)]
