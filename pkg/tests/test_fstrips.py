"""Test the FSTRIPS representation and its ground semantics."""

import logging

import pytest

from causalplan.fstrips.semantics import (
    applicable,
    applicable_actions,
    apply,
    failure_cause,
    goal_count,
    goal_reached,
)
from causalplan.fstrips.task import (
    FALSE,
    TRUE,
    ActionSchema,
    EqualityAtom,
    FstripsTask,
    FunctionSymbol,
    GroundAction,
    PointIndex,
    Sort,
    State,
    dump,
)
from causalplan.pddl import TypedTask
from causalplan.reachability.functional import translate
from causalplan.utils import EffectConflict


def test_fn_visitall(visitall3_fn: FstripsTask) -> None | AssertionError:
    """The agent position becomes a nullary function into the cells."""
    at = visitall3_fn.functions["at"]
    logging.info(f"at: {at}")
    assert at.arity == 0
    assert at.codomain_sort == "cell"
    assert visitall3_fn.functions["visited"].arity == 1
    assert "connected" in visitall3_fn.statics
    assert len(visitall3_fn.points) == 10
    assert visitall3_fn.init[("at", ())] == "c5"


def test_simple_visitall(visitall3_simple: FstripsTask) -> None | AssertionError:
    """The simple transform keeps one Boolean point per fluent atom."""
    assert len(visitall3_simple.points) == 18
    assert visitall3_simple.init[("at", ("c5",))] == TRUE
    assert visitall3_simple.init[("at", ("c1",))] == FALSE


def test_overwritten_delete(visitall3_fn: FstripsTask) -> None | AssertionError:
    """The delete overwritten by an add turns into a disequality."""
    move = visitall3_fn.schema("move")
    logging.info(f"move constraints: {move.constraints}")
    assert ("?to", "?from", False) in move.constraints
    assert EqualityAtom("at", (), "?to") in move.eff
    assert len(move.eff) == 2


def test_apply(visitall3_fn: FstripsTask) -> None | AssertionError:
    """Moving from the center visits the target cell."""
    state = visitall3_fn.init
    assert goal_count(state, visitall3_fn.goal) == 8
    action = GroundAction("move", ("c5", "c2"))
    assert applicable(visitall3_fn, state, action)
    successor = apply(visitall3_fn, state, action)
    assert successor[("at", ())] == "c2"
    assert successor[("visited", ("c2",))] == TRUE
    assert goal_count(successor, visitall3_fn.goal) == 7
    assert state[("at", ())] == "c5"


def test_failure_causes(visitall3_fn: FstripsTask) -> None | AssertionError:
    """Inapplicable actions report the first failing check."""
    state = visitall3_fn.init
    assert failure_cause(visitall3_fn, state, GroundAction("move", ("c5", "c1"))) == "static"
    assert failure_cause(visitall3_fn, state, GroundAction("move", ("c2", "c1"))) == "precondition"
    assert failure_cause(visitall3_fn, state, GroundAction("move", ("c5", "c5"))) == "binding"
    assert failure_cause(visitall3_fn, state, GroundAction("move", ("c5",))) == "binding"


def test_applicable_actions(visitall3_fn: FstripsTask) -> None | AssertionError:
    """The center cell has four neighbours."""
    actions = sorted(str(action) for action in applicable_actions(visitall3_fn, visitall3_fn.init))
    logging.info(f"applicable: {actions}")
    assert actions == ["(move c5 c2)", "(move c5 c4)", "(move c5 c6)", "(move c5 c8)"]
    assert not goal_reached(visitall3_fn, visitall3_fn.init)


def test_blocks_fn(blocks_typed: TypedTask) -> None | AssertionError:
    """The position of a block becomes a function into the places."""
    task = translate(blocks_typed, "fn")
    on = task.functions["on"]
    logging.info(dump(task))
    assert on.domain_sorts == ("block",)
    assert on.codomain_sort == "place"
    assert task.functions["clear"].codomain_sort != "place"
    assert task.init[("on", ("b",))] == "a"
    move = task.schema("move")
    assert EqualityAtom("on", ("?x",), "?z") in move.eff
    assert ("?z", "?y", False) in move.constraints


def test_effect_conflict() -> None | AssertionError:
    """Two effects writing different values to one point are rejected."""
    cells = Sort("cell", ("c1", "c2"))
    functions = {"mark": FunctionSymbol("mark", ("cell",), "cell")}
    index = PointIndex(functions, {"cell": cells})
    schema = ActionSchema(
        "paint",
        (("?a", "cell"), ("?b", "cell")),
        eff=(EqualityAtom("mark", ("?a",), "c1"), EqualityAtom("mark", ("?b",), "c2")),
    )
    task = FstripsTask(
        name="conflict",
        objects=("c1", "c2"),
        sorts={"cell": cells},
        functions=functions,
        statics={},
        schemas=(schema,),
        init=State(index, ("c1", "c1")),
        goal=(EqualityAtom("mark", ("c2",), "c2"),),
    )
    assert failure_cause(task, task.init, GroundAction("paint", ("c2", "c2"))) == "effect"
    assert applicable(task, task.init, GroundAction("paint", ("c1", "c2")))
    assert [str(a) for a in applicable_actions(task, task.init)] == ["(paint c1 c2)", "(paint c2 c1)"]
    with pytest.raises(EffectConflict):
        apply(task, task.init, GroundAction("paint", ("c2", "c2")))


def test_duplicate_effect_point() -> None | AssertionError:
    """Schemas may not list two effects on the same lifted point."""
    with pytest.raises(ValueError, match="same point"):
        ActionSchema(
            "twice",
            (("?a", "cell"),),
            eff=(EqualityAtom("on", ("?a",), "x"), EqualityAtom("on", ("?a",), "y")),
        )


def test_mapping_kinds(corridor_typed: TypedTask) -> None | AssertionError:
    """Static predicates never become functions."""
    task = translate(corridor_typed, "simple")
    assert set(task.functions) == {"at"}
    assert set(task.statics) == {"adjacent"}
    assert task.transform == "simple"
