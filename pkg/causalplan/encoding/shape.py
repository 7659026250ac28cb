"""Growth of the model size with the number of slots.

Support rows grow with the square of the horizon in both persistence modes.
The eager mode adds auxiliary flags once per pair of output and input pin,
which also grows with the square, and one guard clause per excluded support
slot of every pair, which grows with the cube. The propagator mode adds
nothing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import TYPE_CHECKING

import numpy as np

from causalplan.config import PlannerConfig
from causalplan.encoding.builder import EAGER, PROPAGATOR, build

if TYPE_CHECKING:
    from collections.abc import Sequence

    from causalplan.fstrips.task import FstripsTask


@dataclass
class ShapeReport:
    """Model sizes measured over a series of horizons.

    Attributes:
        horizons: The measured horizons, increasing.
        k_max: Largest pin count of a slot.
        support_atoms: Value literals of the support rows.
        aux_flags: Auxiliary flags of the eager persistence constraints.
        persist_clauses: Guard clauses of the eager persistence constraints.
        eager_size: Support atoms, flags and guard clauses in eager mode.
        propagator_size: Support atoms in propagator mode.

    """

    horizons: list[int]
    k_max: int
    support_atoms: list[int] = field(default_factory=list)
    aux_flags: list[int] = field(default_factory=list)
    persist_clauses: list[int] = field(default_factory=list)
    eager_size: list[int] = field(default_factory=list)
    propagator_size: list[int] = field(default_factory=list)

    def quadratic_fit(self) -> tuple[float, float]:
        """Least-squares fit of the support atoms by `c * N^2 * K_max + a * N + b`.

        Returns:
            The coefficient `c` and the largest relative error of the fit.

        """
        n = np.asarray(self.horizons, dtype=float)
        y = np.asarray(self.support_atoms, dtype=float)
        basis = np.column_stack([n**2 * self.k_max, n, np.ones_like(n)])
        coefficients, *_ = np.linalg.lstsq(basis, y, rcond=None)
        error = np.max(np.abs(basis @ coefficients - y) / y)
        return float(coefficients[0]), float(error)

    @staticmethod
    def exponent(horizons: Sequence[int], sizes: Sequence[int]) -> float:
        """Log-log slope between the two largest horizons."""
        (n1, s1), (n2, s2) = sorted(zip(horizons, sizes, strict=True))[-2:]
        return math.log(s2 / s1) / math.log(n2 / n1)

    @staticmethod
    def degree(horizons: Sequence[int], sizes: Sequence[int]) -> int:
        """Degree of the polynomial in the horizon that the sizes follow.

        Read off the finite differences: the differences of order `d + 1`
        of a degree `d` polynomial vanish on equally spaced horizons.

        Raises:
            ValueError: If the horizons are not equally spaced, or too few
                to tell the degree apart from the next one.

        """
        if len(set(np.diff(horizons).tolist())) != 1:
            raise ValueError(f"horizons {list(horizons)} are not equally spaced")
        values = np.asarray(sizes, dtype=np.int64)
        for d in range(len(values) - 1):
            values = np.diff(values)
            if not values.any():
                return d
        raise ValueError(f"{len(sizes)} horizons cannot bound the degree of {list(sizes)}")

    @property
    def eager_exponent(self) -> float:
        """Log-log slope of the eager persistence size."""
        return self.exponent(self.horizons, self.eager_size)

    @property
    def propagator_exponent(self) -> float:
        """Log-log slope of the propagator-mode size."""
        return self.exponent(self.horizons, self.propagator_size)

    @property
    def eager_degree(self) -> int:
        """Polynomial degree of the eager persistence size."""
        return self.degree(self.horizons, self.eager_size)

    @property
    def propagator_degree(self) -> int:
        """Polynomial degree of the propagator-mode size."""
        return self.degree(self.horizons, self.propagator_size)


def measure_shape(task: FstripsTask, horizons: Sequence[int], config: PlannerConfig | None = None) -> ShapeReport:
    """Build the model of a task for each horizon in both persistence modes.

    Sizes count support value literals, plus, in eager mode, the auxiliary
    flags and guard clauses of the persistence constraints.
    """
    config = config or PlannerConfig()
    k_max = max(task.max_pre, task.max_eff, 1)
    report = ShapeReport(list(horizons), k_max)
    for horizon in horizons:
        eager = build(task, horizon, config.merged(persistence=EAGER))
        lazy = build(task, horizon, config.merged(persistence=PROPAGATOR))
        report.support_atoms.append(lazy.support_atoms)
        report.aux_flags.append(eager.aux_count)
        report.persist_clauses.append(eager.persist_clauses)
        report.eager_size.append(eager.support_atoms + eager.aux_count + eager.persist_clauses)
        report.propagator_size.append(lazy.support_atoms)
    return report
