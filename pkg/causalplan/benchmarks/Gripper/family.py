"""A two-handed robot carries balls from one room to the other."""

from causalplan.benchmarks.core.family import InstanceFamily, Params, atoms, objects

DOMAIN = """\
(define (domain gripper)
  (:requirements :strips :typing :equality :negative-preconditions)
  (:types room ball gripper)
  (:predicates
    (at-robby ?r - room)
    (at ?b - ball ?r - room)
    (free ?g - gripper)
    (carry ?b - ball ?g - gripper))
  (:action move
    :parameters (?from ?to - room)
    :precondition (and (at-robby ?from) (not (= ?from ?to)))
    :effect (and (at-robby ?to) (not (at-robby ?from))))
  (:action pick
    :parameters (?b - ball ?r - room ?g - gripper)
    :precondition (and (at ?b ?r) (at-robby ?r) (free ?g))
    :effect (and (carry ?b ?g) (not (at ?b ?r)) (not (free ?g))))
  (:action drop
    :parameters (?b - ball ?r - room ?g - gripper)
    :precondition (and (carry ?b ?g) (at-robby ?r))
    :effect (and (at ?b ?r) (free ?g) (not (carry ?b ?g)))))
"""


class Gripper(InstanceFamily):
    """Gripper with `balls` balls starting in `rooma`."""

    name = "Gripper"
    description = "Robot with two grippers moving balls between two rooms"
    defaults = {"balls": 1}

    def domain_text(self) -> str:
        """Return the gripper domain."""
        return DOMAIN

    def problem_text(self, params: Params) -> str:
        """Return a problem moving every ball from `rooma` to `roomb`.

        Raises:
            ValueError: If there is no ball.

        """
        if params["balls"] < 1:
            raise ValueError("gripper needs at least one ball")
        balls = [f"ball{i}" for i in range(1, params["balls"] + 1)]
        init = [("at-robby", "rooma"), ("free", "left"), ("free", "right")]
        init.extend(("at", ball, "rooma") for ball in balls)
        goal = [("at", ball, "roomb") for ball in balls]
        return f"""\
(define (problem gripper-{params["balls"]})
  (:domain gripper)
  (:objects
    {objects(["rooma", "roomb"], "room")}
    {objects(balls, "ball")}
    {objects(["left", "right"], "gripper")})
  (:init
{atoms(init)})
  (:goal (and
{atoms(goal)})))
"""

    def suite(self) -> list[Params]:
        """One to three balls."""
        return [{"balls": n} for n in (1, 2, 3)]
