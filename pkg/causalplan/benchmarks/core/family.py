"""Defines the abstract base class for benchmark instance families.

A family is a PDDL domain together with a generator of problems indexed by a
small set of integer parameters. Each family also names a desk-scale suite:
instances small enough for the breadth-first oracle to certify the optimal
plan length.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from causalplan.pddl.parser import parse_domain, parse_problem
from causalplan.pddl.typecheck import typecheck

if TYPE_CHECKING:
    from pathlib import Path

    from causalplan.pddl.typecheck import TypedTask

Params = dict[str, int]


@dataclass(frozen=True)
class Instance:
    """A generated problem of a family.

    Attributes:
        family: Name of the family.
        name: Instance name, unique within the family.
        params: The generator parameters.
        domain: The domain text.
        problem: The problem text.

    """

    family: str
    name: str
    params: Params
    domain: str
    problem: str

    def task(self) -> TypedTask:
        """Parse and type-check the instance."""
        domain = parse_domain(self.domain)
        return typecheck(domain, parse_problem(self.problem, domain))

    def write(self, directory: Path) -> tuple[Path, Path]:
        """Write `domain.pddl` and `<name>.pddl` into a directory.

        Returns:
            The domain path and the problem path.

        """
        directory.mkdir(parents=True, exist_ok=True)
        domain_path = directory / "domain.pddl"
        problem_path = directory / f"{self.name}.pddl"
        domain_path.write_text(self.domain, encoding="utf-8")
        problem_path.write_text(self.problem, encoding="utf-8")
        return domain_path, problem_path


class InstanceFamily(ABC):
    """Abstract base class for all benchmark families.

    Attributes:
        name (str): The name of the family.
        description (str): One line shown by `cplan families`.
        defaults (dict[str, int]): Parameters used when the caller omits some.

    """

    name: str
    description: str
    defaults: Params

    def params(self, **overrides: int) -> Params:
        """Complete caller parameters with the family defaults.

        Raises:
            KeyError: If a parameter is unknown to the family.

        """
        unknown = set(overrides) - set(self.defaults)
        if unknown:
            raise KeyError(f"{self.name} has no parameter {', '.join(sorted(unknown))}")
        return {**self.defaults, **overrides}

    def instance_name(self, params: Params) -> str:
        """Build a file-friendly name from the parameters."""
        return "p-" + "-".join(f"{key}{value}" for key, value in params.items())

    @staticmethod
    def rng(params: Params) -> np.random.Generator:
        """Random generator seeded from the `seed` parameter, 0 by default."""
        return np.random.default_rng(params.get("seed", 0))

    @abstractmethod
    def domain_text(self) -> str:
        """Return the PDDL domain of the family."""
        pass

    @abstractmethod
    def problem_text(self, params: Params) -> str:
        """Return the PDDL problem generated from complete parameters."""
        pass

    @abstractmethod
    def suite(self) -> list[Params]:
        """Return the parameters of the desk-scale suite."""
        pass

    def instance(self, **overrides: int) -> Instance:
        """Generate one instance."""
        params = self.params(**overrides)
        return Instance(
            family=self.name,
            name=self.instance_name(params),
            params=params,
            domain=self.domain_text(),
            problem=self.problem_text(params),
        )

    def instances(self) -> list[Instance]:
        """Generate every instance of the desk-scale suite."""
        return [self.instance(**params) for params in self.suite()]


def atoms(facts: list[tuple[str, ...]], indent: int = 4) -> str:
    """Format ground atoms one per line."""
    pad = " " * indent
    return "\n".join(f"{pad}({' '.join(fact)})" for fact in facts)


def objects(names: list[str], sort: str) -> str:
    """Format a typed object list."""
    return f"{' '.join(names)} - {sort}"
