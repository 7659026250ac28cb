"""Lazy persistence of supported atoms.

An input pin supported by output pin `(i, l)` needs its atom to survive every
slot strictly between `i` and its own slot: no decided output pin there may
write the same point with another value. The propagator checks this only
once both pins are fully decided, and explains each violation with the clause

    not(out pin = its values) or not(in pin = its values) or slot >= j' + 1

where `slot` is the decoded support slot, whose null code lies above every
real slot. The bound part is split into one `slot != v` inference per
remaining value `v <= j'`.
"""

from __future__ import annotations

import logging
from bisect import bisect_right
from dataclasses import dataclass, field
from typing import TYPE_CHECKING

from causalplan.solver.engine import Propagator
from causalplan.solver.variables import IntVar
from causalplan.utils import InternalError

if TYPE_CHECKING:
    from collections.abc import Iterable

    from causalplan.encoding.model import CausalModel, Pin, SupportVars
    from causalplan.solver.engine import Engine, Reason
    from causalplan.solver.variables import Term

logger = logging.getLogger(__name__)


def interferes(out: tuple[int, ...], inp: tuple[int, ...]) -> bool:
    """Whether a decided output pin rewrites the point of an input pin."""
    return out[0] != 0 and out[:-1] == inp[:-1] and out[-1] != inp[-1]


@dataclass
class PersistenceStats:
    """Counters reported with the search statistics."""

    wakeups: int = 0
    conflicts: int = 0
    clauses: int = 0


@dataclass(frozen=True)
class _Consumer:
    j: int
    pin: Pin
    support: SupportVars


@dataclass
class WatchIndex:
    """Reverse map from atoms to the pins that hold them.

    Attributes:
        consumers: Atom of an input pin or of its support slot, to the
            positions of the consumers it belongs to.
        producers: Atom of an output pin, to the lowest slot holding it.

    """

    consumers: dict[int, list[int]] = field(default_factory=dict)
    producers: dict[int, int] = field(default_factory=dict)

    def add_consumer(self, position: int, terms: Iterable[Term]) -> None:
        """Watch the variable terms of one consumer."""
        for term in terms:
            if isinstance(term, IntVar):
                for atom in term.atoms:
                    positions = self.consumers.setdefault(atom, [])
                    if position not in positions:
                        positions.append(position)

    def add_producer(self, j: int, pin: Pin) -> None:
        """Watch the variable terms of an output pin of slot `j`."""
        for term in pin.terms:
            if isinstance(term, IntVar):
                for atom in term.atoms:
                    self.producers[atom] = min(j, self.producers.get(atom, j))

    def atoms(self) -> set[int]:
        """Every watched atom."""
        return set(self.consumers) | set(self.producers)


class PersistencePropagator(Propagator):
    """Interference checks between decided input and output pins."""

    name = "persistence"

    def __init__(self, causal: CausalModel) -> None:
        """Index the pins and supports of a causal model."""
        self.causal = causal
        self.consumers = [
            _Consumer(j, pin, causal.supports[(j, k)])
            for j in range(1, causal.goal_slot + 1)
            for k, pin in enumerate(causal.inputs(j), start=1)
        ]
        self.outputs = {j: causal.outputs(j) for j in range(1, causal.horizon + 1)}
        self.watch = WatchIndex()
        for position, consumer in enumerate(self.consumers):
            self.watch.add_consumer(position, (*consumer.pin.terms, consumer.support.slot))
        for j, pins in self.outputs.items():
            for pin in pins:
                self.watch.add_producer(j, pin)
        self._slots = [consumer.j for consumer in self.consumers]
        # consumers touched since the last run, and the lowest slot with a touched output pin
        self._dirty: set[int] = set()
        self._lowest = 0
        self.stats = PersistenceStats()

    def atoms(self) -> Iterable[int]:
        """Atoms of every pin variable and decoded support slot."""
        return self.watch.atoms()

    def notify(self, atom: int) -> None:
        """Mark the consumers an assigned atom may affect."""
        self._dirty.update(self.watch.consumers.get(atom, ()))
        j_out = self.watch.producers.get(atom)
        if j_out is not None and j_out < self._lowest:
            self._lowest = j_out

    def pending(self) -> list[int]:
        """Positions of the consumers to check on the next run, in slot order."""
        above = range(bisect_right(self._slots, self._lowest), len(self.consumers))
        return sorted(self._dirty.union(above))

    def explain(
        self, out: Pin, out_values: tuple[int, ...], inp: Pin, in_values: tuple[int, ...], support: SupportVars, j_out: int
    ) -> list[int]:
        """Blocking clause of an output pin at slot `j_out` interfering with a support.

        Raises:
            InternalError: If the pins do not interfere.

        """
        if not interferes(out_values, in_values):
            raise InternalError(f"no interference to explain at slot {j_out}")
        clause: list[int] = []
        for lit in (*out.binding(out_values), *inp.binding(in_values)):
            if -lit not in clause:
                clause.append(-lit)
        clause.extend(support.slot.ge(j_out + 1))
        return clause

    def _violation(self, engine: Engine, consumer: _Consumer, lower: int) -> tuple[list[int], int] | None:
        """Nearest interfering slot above `lower` with its clause."""
        in_values = consumer.pin.decided(engine)
        if in_values is None or in_values[0] == 0:
            return None
        for j_out in range(consumer.j - 1, lower, -1):
            for out in self.outputs[j_out]:
                out_values = out.decided(engine)
                if out_values is not None and interferes(out_values, in_values):
                    clause = self.explain(out, out_values, consumer.pin, in_values, consumer.support, j_out)
                    return clause, j_out
        return None

    def propagate(self, engine: Engine) -> Reason | None:
        """Lift the support slot above every interfering decided pin."""
        self.stats.wakeups += 1
        pending = self.pending()
        self._dirty.clear()
        self._lowest = self.causal.goal_slot
        for done, position in enumerate(pending):
            consumer = self.consumers[position]
            slot = consumer.support.slot
            found = self._violation(engine, consumer, engine.lower_bound(slot))
            if found is None:
                continue
            clause, j_out = found
            self.stats.clauses += 1
            bound = set(slot.ge(j_out + 1))
            binding = [lit for lit in clause if lit not in bound]
            for v in engine.domain(slot):
                if v > j_out:
                    break
                lit = slot.ne(v)
                conflict = engine.imply(lit, [lit, *binding], self.name)
                if conflict is not None:
                    self.stats.conflicts += 1
                    self._dirty.update(pending[done:])
                    return conflict
        return None

    def final_check(self, engine: Engine) -> Reason | None:
        """Sweep every support of a total assignment."""
        for consumer in self.consumers:
            slot = engine.fixed_value(consumer.support.slot)
            if slot is None:
                raise InternalError(f"support slot of pin {consumer.pin} unfixed at a leaf")
            found = self._violation(engine, consumer, slot)
            if found is not None:
                self.stats.conflicts += 1
                logger.debug("persistence violation found by the final sweep at slot %d", found[1])
                return found[0]
        return None
