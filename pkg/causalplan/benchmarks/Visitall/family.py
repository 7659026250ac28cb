"""An agent on a grid must visit every cell.

Cells are named `c1 ... c(rows*cols)` in row-major order and are connected to
their horizontal and vertical neighbours.
"""

from causalplan.benchmarks.core.family import InstanceFamily, Params, atoms, objects

DOMAIN = """\
(define (domain visitall)
  (:requirements :strips :typing)
  (:types cell)
  (:predicates
    (at ?c - cell)
    (visited ?c - cell)
    (connected ?x ?y - cell))
  (:action move
    :parameters (?from ?to - cell)
    :precondition (and (at ?from) (connected ?from ?to))
    :effect (and (at ?to) (visited ?to) (not (at ?from)))))
"""


def cell(row: int, col: int, cols: int) -> str:
    """Name of the cell at a 0-based position."""
    return f"c{row * cols + col + 1}"


class Visitall(InstanceFamily):
    """Visit-all grids of `rows` by `cols` cells from the `start` cell (1-based)."""

    name = "Visitall"
    description = "Grid tour: visit every cell starting from a given cell"
    defaults = {"rows": 3, "cols": 3, "start": 5}

    def domain_text(self) -> str:
        """Return the visitall domain."""
        return DOMAIN

    def problem_text(self, params: Params) -> str:
        """Return a grid problem.

        Raises:
            ValueError: If the grid is empty or the start cell is outside it.

        """
        rows, cols, start = params["rows"], params["cols"], params["start"]
        if rows < 1 or cols < 1 or not 1 <= start <= rows * cols:
            raise ValueError(f"no cell {start} in a {rows}x{cols} grid")
        cells = [cell(r, c, cols) for r in range(rows) for c in range(cols)]
        edges = []
        for r in range(rows):
            for c in range(cols):
                for dr, dc in ((0, 1), (1, 0), (0, -1), (-1, 0)):
                    if 0 <= r + dr < rows and 0 <= c + dc < cols:
                        edges.append(("connected", cell(r, c, cols), cell(r + dr, c + dc, cols)))
        first = f"c{start}"
        init = [("at", first), ("visited", first), *edges]
        goal = [("visited", name) for name in cells]
        return f"""\
(define (problem visitall-{rows}x{cols}-{start})
  (:domain visitall)
  (:objects {objects(cells, "cell")})
  (:init
{atoms(init)})
  (:goal (and
{atoms(goal)})))
"""

    def suite(self) -> list[Params]:
        """Grids from 1x2 to 3x3."""
        return [
            {"rows": 1, "cols": 2, "start": 1},
            {"rows": 1, "cols": 3, "start": 1},
            {"rows": 1, "cols": 3, "start": 2},
            {"rows": 2, "cols": 2, "start": 1},
            {"rows": 2, "cols": 3, "start": 1},
            {"rows": 2, "cols": 3, "start": 2},
            {"rows": 3, "cols": 3, "start": 5},
            {"rows": 3, "cols": 3, "start": 1},
        ]
