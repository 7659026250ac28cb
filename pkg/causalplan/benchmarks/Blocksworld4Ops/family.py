"""Blocks world with a gripper hand."""

from causalplan.benchmarks.Blocksworld3Ops.family import block_problem, tower_facts, tower_goal, towers
from causalplan.benchmarks.core.family import InstanceFamily, Params

DOMAIN = """\
(define (domain blocksworld-4ops)
  (:requirements :strips :typing)
  (:types block)
  (:predicates
    (on ?x ?y - block)
    (ontable ?x - block)
    (clear ?x - block)
    (handempty)
    (holding ?x - block))
  (:action pick-up
    :parameters (?x - block)
    :precondition (and (clear ?x) (ontable ?x) (handempty))
    :effect (and (holding ?x) (not (ontable ?x)) (not (clear ?x)) (not (handempty))))
  (:action put-down
    :parameters (?x - block)
    :precondition (holding ?x)
    :effect (and (ontable ?x) (clear ?x) (handempty) (not (holding ?x))))
  (:action stack
    :parameters (?x ?y - block)
    :precondition (and (holding ?x) (clear ?y))
    :effect (and (on ?x ?y) (clear ?x) (handempty) (not (holding ?x)) (not (clear ?y))))
  (:action unstack
    :parameters (?x ?y - block)
    :precondition (and (on ?x ?y) (clear ?x) (handempty))
    :effect (and (holding ?x) (clear ?y) (not (on ?x ?y)) (not (clear ?x)) (not (handempty)))))
"""


class Blocksworld4Ops(InstanceFamily):
    """Blocks world with `pick-up`, `put-down`, `stack` and `unstack`."""

    name = "Blocksworld4Ops"
    description = "Blocks world with a hand: pick-up, put-down, stack and unstack"
    defaults = {"blocks": 3, "seed": 0}

    def domain_text(self) -> str:
        """Return the four-operator domain."""
        return DOMAIN

    def problem_text(self, params: Params) -> str:
        """Return a problem with random towers and an empty hand.

        Raises:
            ValueError: If there are fewer than two blocks.

        """
        if params["blocks"] < 2:
            raise ValueError("blocks world needs at least two blocks")
        rng = self.rng(params)
        blocks = [f"b{i}" for i in range(1, params["blocks"] + 1)]
        init = [*tower_facts(towers(blocks, rng)), ("handempty",)]
        goal = tower_goal(towers(blocks, rng))
        return block_problem("blocksworld-4ops", params, init, goal)

    def suite(self) -> list[Params]:
        """Two to four blocks, three seeds each."""
        return [{"blocks": n, "seed": seed} for n in (2, 3, 4) for seed in range(3)]
