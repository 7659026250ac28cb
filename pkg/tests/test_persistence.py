"""Test the lazy persistence propagator."""

import logging

import pytest

from causalplan.config import PlannerConfig
from causalplan.encoding.builder import build
from causalplan.encoding.persistence import PersistencePropagator, interferes
from causalplan.fstrips.task import FstripsTask
from causalplan.search.driver import solve_optimal
from causalplan.search.outcome import OptimalPlan
from causalplan.solver import IntVar
from causalplan.utils import InternalError


def test_interferes() -> None | AssertionError:
    """Only an active pin writing another value to the same point interferes."""
    assert interferes((1, 3, 5), (1, 3, 6))
    assert not interferes((1, 3, 5), (1, 3, 5))
    assert not interferes((1, 4, 5), (1, 3, 6))
    assert not interferes((0, 0, 0), (1, 3, 6))


def test_propagator_registered(corridor_fn: FstripsTask) -> None | AssertionError:
    """Propagator mode attaches one propagator watching every support."""
    causal = build(corridor_fn, 3)
    assert isinstance(causal.propagator, PersistencePropagator)
    assert len(causal.propagator.consumers) == len(causal.supports)
    eager = build(corridor_fn, 3, PlannerConfig(persistence="eager"))
    assert eager.propagator is None


def test_watch_index(corridor_fn: FstripsTask) -> None | AssertionError:
    """A wake-up revisits only the consumers that hold the assigned atom."""
    causal = build(corridor_fn, 3)
    propagator = causal.propagator
    assert propagator.pending() == []

    support = causal.supports[(2, 1)]
    position = next(i for i, consumer in enumerate(propagator.consumers) if consumer.support is support)
    atom = support.slot.atoms[0]
    assert propagator.watch.consumers[atom] == [position]
    propagator.notify(atom)
    assert propagator.pending() == [position]

    out_atom = next(term for term in causal.outputs(2)[0].terms if isinstance(term, IntVar)).atoms[0]
    assert propagator.watch.producers[out_atom] == 2
    propagator.notify(out_atom)
    expected = {position, *propagator.watch.consumers.get(out_atom, ())}
    expected |= {i for i, consumer in enumerate(propagator.consumers) if consumer.j > 2}
    logging.info(f"{len(expected)} of {len(propagator.consumers)} consumers pending")
    assert propagator.pending() == sorted(expected)
    assert all(consumer.j > 1 for consumer in map(propagator.consumers.__getitem__, expected))


def test_explain(visitall2_fn: FstripsTask) -> None | AssertionError:
    """The clause blocking an interference at the previous slot has seven literals."""
    causal = build(visitall2_fn, 2)
    codes = causal.codes
    at = codes.function_code["at"]
    out = causal.outputs(1)[0]
    inp = causal.inputs(2)[0]
    support = causal.supports[(2, 1)]
    out_values = (at, 0, codes.object_code["c2"])
    in_values = (at, 0, codes.object_code["c1"])
    clause = causal.propagator.explain(out, out_values, inp, in_values, support, 1)
    logging.info(f"explanation: {clause}")
    assert visitall2_fn.max_arity == 1
    assert len(clause) == 7
    assert clause[-1] == support.slot.eq(2)
    assert out.fsym.ne(at) in clause
    assert inp.value.ne(codes.object_code["c1"]) in clause

    with pytest.raises(InternalError):
        causal.propagator.explain(out, in_values, inp, in_values, support, 1)


def test_modes_agree(corridor_fn: FstripsTask) -> None | AssertionError:
    """Eager and lazy persistence find the same optimum."""
    costs = {}
    for mode in ("eager", "propagator"):
        result = solve_optimal(corridor_fn, PlannerConfig(persistence=mode))
        assert isinstance(result.outcome, OptimalPlan)
        costs[mode] = result.outcome.cost
        logging.info(f"{mode}: cost {result.outcome.cost}, {result.stats.conflicts} conflicts")
    assert costs == {"eager": 3, "propagator": 3}


def test_propagator_stats(visitall2_fn: FstripsTask) -> None | AssertionError:
    """The lazy mode reports its wakeups."""
    result = solve_optimal(visitall2_fn, PlannerConfig(persistence="propagator"))
    assert isinstance(result.outcome, OptimalPlan)
    assert result.outcome.cost == 3
    assert result.stats.persistence_wakeups > 0
