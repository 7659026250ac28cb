"""Test the embedded clause-learning constraint solver."""

import io
import itertools
import logging

import numpy as np
import pytest

from causalplan.solver import (
    INFEASIBLE,
    OPTIMAL,
    SAT,
    TRUE_LIT,
    UNSAT,
    Budget,
    CpModel,
    check,
    luby,
    restart_limits,
)
from causalplan.utils import CapacityError


def test_luby() -> None | AssertionError:
    """The first terms of the Luby sequence."""
    terms = [luby(i) for i in range(1, 16)]
    logging.info(f"Luby terms: {terms}")
    assert terms == [1, 1, 2, 1, 1, 2, 4, 1, 1, 2, 1, 1, 2, 4, 8]
    assert restart_limits(64, 4) == [64, 64, 128, 64]
    with pytest.raises(ValueError):
        luby(0)


def test_budget() -> None | AssertionError:
    """The deadline is fixed once and shares keep the remaining conflicts."""
    budget = Budget(time_limit=10.0, max_conflicts=10).start()
    deadline = budget.deadline
    assert budget.start().deadline == deadline
    rest = budget.share(4)
    assert rest.max_conflicts == 6
    assert rest.deadline == deadline
    assert Budget(max_conflicts=0).empty


def test_int_var_literals() -> None | AssertionError:
    """Value literals of an integer variable."""
    model = CpModel()
    x = model.new_int_var(0, 4, "x", holes=[2])
    assert x.values == (0, 1, 3, 4)
    assert x.eq(2) < 0
    assert x.ne(3) == -x.eq(3)
    assert x.ge(3) == (x.eq(3), x.eq(4))
    assert x.le(1) == (x.eq(0), x.eq(1))
    with pytest.raises(ValueError):
        model.new_int_var(3, 2)


def test_clauses_sat() -> None | AssertionError:
    """A unit clause fixes a variable."""
    model = CpModel()
    x = model.new_int_var(0, 3, "x")
    b = model.new_bool("b")
    model.clause([x.eq(2)])
    model.clause([-b.lit, x.eq(1)])
    result = model.solve()
    assert result.status == SAT
    assert result.solution is not None
    assert result.solution[x] == 2
    assert result.solution[b] == 0
    assert check(model, result.solution) == []


def test_clauses_unsat() -> None | AssertionError:
    """A variable cannot take two values."""
    model = CpModel()
    x = model.new_int_var(0, 3, "x")
    model.clause([x.eq(1)])
    model.clause([x.eq(2)])
    result = model.solve()
    assert result.status == UNSAT
    assert not result.sat


def test_element() -> None | AssertionError:
    """The target of an element constraint selects the index."""
    model = CpModel()
    index = model.new_int_var(0, 2, "i")
    target = model.new_int_var(0, 10, "t")
    y = model.new_int_var(0, 10, "y")
    model.element(index, target, [5, y, 9])
    model.clause([target.eq(7)])
    result = model.solve()
    assert result.sat
    solution = result.solution
    assert solution[index] == 1
    assert solution[y] == 7


def test_table() -> None | AssertionError:
    """Rows with wildcards."""
    model = CpModel()
    x = model.new_int_var(1, 3, "x")
    y = model.new_int_var(1, 3, "y")
    model.table([x, y], [(1, 2), (2, None)])
    model.clause([x.ne(2)])
    result = model.solve()
    assert result.sat
    assert (result.solution[x], result.solution[y]) == (1, 2)


def test_reified_equality() -> None | AssertionError:
    """An active guard forces equality or disequality."""
    model = CpModel()
    x = model.new_int_var(0, 2, "x")
    y = model.new_int_var(0, 2, "y")
    z = model.new_int_var(1, 2, "z")
    same = model.new_bool("same")
    other = model.new_bool("other")
    model.reif_eq(same.lit, x, y)
    model.reif_neq(other.lit, z, 1)
    model.clause([same.lit])
    model.clause([other.lit])
    model.clause([x.eq(2)])
    result = model.solve()
    assert result.sat
    assert result.solution[y] == 2
    assert result.solution[z] == 2


def test_bool_sum() -> None | AssertionError:
    """At most one literal may be true."""
    model = CpModel()
    a, b, c = (model.new_bool(name) for name in "abc")
    model.bool_sum_le([a.lit, b.lit, c.lit], 1)
    model.clause([a.lit, b.lit])
    model.clause([b.lit, c.lit])
    result = model.solve()
    assert result.sat
    assert [result.solution[v] for v in (a, b, c)] == [0, 1, 0]


def test_minimize() -> None | AssertionError:
    """Linear scan reaches the optimum of a covering problem."""
    model = CpModel()
    a, b, c, d = (model.new_bool(name) for name in "abcd")
    model.clause([a.lit, b.lit])
    model.clause([b.lit, c.lit])
    model.clause([c.lit, d.lit])
    result = model.minimize([a.lit, b.lit, c.lit, d.lit])
    logging.info(f"minimize: {result.status} {result.value}")
    assert result.status == OPTIMAL
    assert result.value == 2


def test_minimize_infeasible() -> None | AssertionError:
    """An unsatisfiable model has no objective value."""
    model = CpModel()
    a = model.new_bool("a")
    model.clause([a.lit])
    model.clause([-a.lit])
    result = model.minimize([a.lit])
    assert result.status == INFEASIBLE
    assert result.value is None


def test_capacity() -> None | AssertionError:
    """The variable limit is enforced at creation."""
    model = CpModel(max_variables=2)
    model.new_bool()
    model.new_int_var(0, 1)
    with pytest.raises(CapacityError) as error:
        model.new_bool()
    logging.info(str(error.value))
    assert error.value.limit == 2


def test_dump() -> None | AssertionError:
    """The listing names variables and constraints in creation order."""
    model = CpModel()
    x = model.new_int_var(0, 1, "x")
    model.clause([x.eq(1)])
    listing = model.dump()
    assert listing.splitlines()[0].startswith("int x {0, 1}")
    assert "clause" in listing


@pytest.mark.slow
def test_random_models() -> None | AssertionError:
    """Answers and learned clauses on random small models agree with enumeration."""
    rng = np.random.default_rng(7)
    for trial in range(10_000):
        sizes = [int(size) for size in rng.integers(2, 6, size=int(rng.integers(2, 11)))]
        while np.prod(sizes) > 20_000:
            sizes[int(np.argmax(sizes))] -= 1
        trace = io.StringIO()
        model = CpModel(seed=trial, trace=trace)
        xs = [model.new_int_var(0, size - 1, f"x{i}") for i, size in enumerate(sizes)]
        grid = np.array(list(itertools.product(*(range(size) for size in sizes))))
        allowed = np.ones(len(grid), dtype=bool)

        for _ in range(int(rng.integers(2, 2 * len(xs) + 2))):
            picks = rng.choice(len(xs), size=min(len(xs), int(rng.integers(1, 4))), replace=False)
            clause = [(int(i), int(rng.integers(0, sizes[i])), bool(rng.integers(0, 2))) for i in picks]
            model.clause([xs[i].eq(v) if positive else xs[i].ne(v) for i, v, positive in clause])
            allowed &= np.any([(grid[:, i] == v) == positive for i, v, positive in clause], axis=0)

        picks = [int(i) for i in rng.choice(len(xs), size=min(len(xs), 3), replace=False)]
        rows = [
            tuple(None if rng.random() < 0.2 else int(rng.integers(0, sizes[i])) for i in picks)
            for _ in range(int(rng.integers(2, 7)))
        ]
        model.table([xs[i] for i in picks], rows)
        matched = np.zeros(len(grid), dtype=bool)
        for row in rows:
            hit = np.ones(len(grid), dtype=bool)
            for i, v in zip(picks, row, strict=True):
                if v is not None:
                    hit &= grid[:, i] == v
            matched |= hit
        allowed &= matched

        if len(xs) >= 3 and rng.random() < 0.7:
            index, target = (int(i) for i in rng.choice(len(xs), size=2, replace=False))
            others = [i for i in range(len(xs)) if i not in (index, target)]
            cells: list[int | None] = [
                int(rng.choice(others)) if rng.random() < 0.5 else None for _ in range(sizes[index])
            ]
            constants = [int(rng.integers(0, sizes[target] + 1)) for _ in cells]
            model.element(
                xs[index],
                xs[target],
                [constant if cell is None else xs[cell] for cell, constant in zip(cells, constants, strict=True)],
            )
            picked = np.stack(
                [
                    np.full(len(grid), constant) if cell is None else grid[:, cell]
                    for cell, constant in zip(cells, constants, strict=True)
                ],
                axis=1,
            )
            allowed &= np.take_along_axis(picked, grid[:, [index]], axis=1)[:, 0] == grid[:, target]

        result = model.solve()
        assert result.sat == bool(allowed.any()), f"trial {trial}"
        if result.sat:
            assert check(model, result.solution) == []
            assert allowed[np.all(grid == [result.solution[x] for x in xs], axis=1)].all()

        owner = {atom: (i, v) for i, x in enumerate(xs) for v, atom in zip(x.values, x.atoms, strict=True)}
        solutions = grid[allowed]
        for line in trace.getvalue().splitlines():
            lits = [int(token) for token in line.split()[:-1]]
            if any(abs(lit) == TRUE_LIT and lit > 0 for lit in lits):
                continue
            holds = np.zeros(len(solutions), dtype=bool)
            for lit in lits:
                if abs(lit) == TRUE_LIT:
                    continue
                i, v = owner[abs(lit)]
                holds |= (solutions[:, i] == v) == (lit > 0)
            assert holds.all(), f"trial {trial}: learned clause {line} cuts a solution"
        if trial % 2_000 == 0:
            logging.info(f"trial {trial}: {len(xs)} variables, {model.stats.learned} learned clauses")
