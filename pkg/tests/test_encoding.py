"""Test the causal constraint model."""

import logging
from pathlib import Path

import pytest

from causalplan.config import PlannerConfig
from causalplan.encoding.audit import audit
from causalplan.encoding.builder import EAGER, PROPAGATOR, build, pin_plan
from causalplan.encoding.model import NULL, NULL_NAME, Vocabulary
from causalplan.encoding.shape import ShapeReport, measure_shape
from causalplan.fstrips.task import FstripsTask, GroundAction, Plan
from causalplan.validator.planfile import read_plan

TEST_CODES_DIR = Path("/tmp/tests/testcodes").resolve()


def test_vocabulary(corridor_fn: FstripsTask) -> None | AssertionError:
    """Codes start with the null object and end with the switched-off schema."""
    codes = Vocabulary(corridor_fn)
    assert codes.objects[NULL] == NULL_NAME
    assert codes.objects[1:5] == ["p0", "p1", "p2", "p3"]
    assert codes.schema_code["walk"] == 1
    assert codes.disabled == 2
    assert codes.schema(1).name == "walk"


def test_boundary(visitall3_fn: FstripsTask) -> None | AssertionError:
    """One fixed output pin per point and one fixed input pin per goal atom."""
    causal = build(visitall3_fn, 2)
    logging.info(f"{len(causal.model.int_vars)} integer variables")
    assert len(causal.init_pins) == 10
    assert len(causal.goal_pins) == 9
    assert len(causal.slots) == 2
    assert causal.goal_slot == 3
    assert causal.rows[0].active < 0
    assert len(causal.rows) == 1 + 10 + 2 * visitall3_fn.max_eff


def test_support_domains(corridor_fn: FstripsTask) -> None | AssertionError:
    """A support row ranges over the inactive row, slot 0 and earlier slots."""
    causal = build(corridor_fn, 3)
    for (j, k), support in causal.supports.items():
        assert support.k == k
        assert support.row.values == tuple(range(1 + 1 + (j - 1) * corridor_fn.max_eff))
        assert support.slot.values == tuple(range(j + 1))
        assert support.null_slot == j


def test_known_plan(visitall3_fn: FstripsTask) -> None | AssertionError:
    """The tour from the center satisfies the model and its persistence audit."""
    tour = read_plan((TEST_CODES_DIR / "visitall" / "p3x3.plan").read_text())
    causal = build(visitall3_fn, len(tour))
    pin_plan(causal, tour)
    result = causal.model.solve()
    assert result.sat
    assert audit(causal, result.solution) == []
    enabled = [result.solution[slot.enabled] for slot in causal.slots]
    assert enabled == [1] * 8


def test_known_plan_eager(corridor_fn: FstripsTask) -> None | AssertionError:
    """Eager persistence accepts the corridor walk."""
    walk = Plan(tuple(GroundAction("walk", (f"p{i}", f"p{i + 1}")) for i in range(3)))
    causal = build(corridor_fn, 4, PlannerConfig(persistence=EAGER))
    pin_plan(causal, walk)
    result = causal.model.solve()
    assert result.sat
    assert causal.aux_count > 0
    assert audit(causal, result.solution) == []


def test_short_horizon(corridor_fn: FstripsTask) -> None | AssertionError:
    """Two slots cannot reach the far end of the corridor."""
    for mode in (EAGER, PROPAGATOR):
        causal = build(corridor_fn, 2, PlannerConfig(persistence=mode))
        result = causal.model.solve()
        logging.info(f"{mode}: {result.status}")
        assert not result.sat


def test_zero_slots(corridor_fn: FstripsTask) -> None | AssertionError:
    """Without slots the model only holds if the goal holds initially."""
    assert not build(corridor_fn, 0).model.solve().sat


def test_dump(corridor_fn: FstripsTask) -> None | AssertionError:
    """The listing starts with a header naming the task."""
    listing = build(corridor_fn, 1).dump()
    assert listing.startswith("; task corridor-4 (fn), horizon 1, persistence propagator")
    assert "act[1]" in listing


def test_shape(corridor_fn: FstripsTask) -> None | AssertionError:
    """Eager guard clauses grow with the cube of the horizon, support rows and flags with the square."""
    report = measure_shape(corridor_fn, [4, 8, 12, 16, 20])
    coefficient, error = report.quadratic_fit()
    logging.info(
        f"eager exponent {report.eager_exponent:.2f}, propagator exponent {report.propagator_exponent:.2f}, "
        f"fit coefficient {coefficient:.3f}, error {error:.4f}"
    )
    logging.info(f"flags {report.aux_flags}, guard clauses {report.persist_clauses}")
    assert report.eager_degree == 3
    assert report.propagator_degree == 2
    assert ShapeReport.degree(report.horizons, report.persist_clauses) == 3
    assert ShapeReport.degree(report.horizons, report.aux_flags) == 2
    assert ShapeReport.degree(report.horizons, report.support_atoms) == 2
    assert coefficient > 0
    assert error < 0.05
    assert report.eager_exponent > report.propagator_exponent
    assert all(e > p for e, p in zip(report.eager_size, report.propagator_size, strict=True))


def test_degree() -> None | AssertionError:
    """Finite differences recover the degree and refuse unusable series."""
    horizons = [4, 8, 12, 16, 20]
    assert ShapeReport.degree(horizons, [n**3 + n for n in horizons]) == 3
    assert ShapeReport.degree(horizons, [3 * n**2 + 1 for n in horizons]) == 2
    assert ShapeReport.degree(horizons, [7] * 5) == 0
    with pytest.raises(ValueError):
        ShapeReport.degree([4, 8, 16], [16, 64, 256])
    with pytest.raises(ValueError):
        ShapeReport.degree([4, 8, 12], [64, 512, 1728])
