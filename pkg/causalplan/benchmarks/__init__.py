"""Planning benchmark families, one package per family.

Each family package (`Visitall`, `Gripper`, `Logistics` and the two
blocksworld encodings) generates a domain text and a suite of small problems
whose optima the breadth-first oracle can still certify. `FAMILIES_ALL` maps
family names to loaders that import the generator module on first use.
"""

import importlib
from typing import Any

from causalplan.benchmarks.core.family import InstanceFamily
from causalplan.utils import BENCHMARKS_DIR


class LazyFamilyLoader:
    """Stands in for a family class until a generator is needed."""

    def __init__(self, name: str) -> None:
        """Remember the family package name; nothing is imported yet."""
        self.name = name
        self.loaded = False

    def _load(self) -> None:
        """Import `<name>/family.py` and pick its class named after the package."""
        if not self.loaded:
            self.family_module = importlib.import_module(f"causalplan.benchmarks.{self.name}.family")
            self.family: type[InstanceFamily] = getattr(self.family_module, self.name)

            self.loaded = True

    def __call__(self, *args: Any, **kwargs: Any) -> InstanceFamily:
        """Build the family generator."""
        self._load()
        return self.family(*args, **kwargs)

    def __getattr__(self, name: str) -> Any:  # noqa: ANN401
        """Read class attributes such as the family description."""
        self._load()
        return getattr(self.family, name)


FAMILIES_ALL = {
    package.parent.name: LazyFamilyLoader(package.parent.name)
    for package in sorted(BENCHMARKS_DIR.glob("*/family.py"))
    if package.parent.name != "core"
}
