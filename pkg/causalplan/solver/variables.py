"""Decision variables of the solver.

Literals are signed integers over atoms numbered from 1; atom 1 is the
constant true, so `TRUE_LIT` and `FALSE_LIT` can appear in clauses. An integer
variable owns one atom per domain value meaning `x = v`; exactly one of them
is true in every solution.
"""

from dataclasses import dataclass

TRUE_LIT = 1
FALSE_LIT = -1


class IntVar:
    """An integer variable over a finite set of values.

    Attributes:
        index: Position of the variable in its model.
        name: Printable name.
        values: The initial domain, sorted.
        atoms: The `x = v` atom of every value, aligned with `values`.

    """

    __slots__ = ("_position", "atoms", "index", "name", "values")

    def __init__(self, index: int, name: str, values: tuple[int, ...], atoms: tuple[int, ...]) -> None:
        """Create the variable; the model allocates its atoms."""
        self.index = index
        self.name = name
        self.values = values
        self.atoms = atoms
        self._position = {value: i for i, value in enumerate(values)}

    @property
    def lo(self) -> int:
        """Smallest initial value."""
        return self.values[0]

    @property
    def hi(self) -> int:
        """Largest initial value."""
        return self.values[-1]

    def eq(self, value: int) -> int:
        """Literal `x = value`, false if the value is outside the domain."""
        position = self._position.get(value)
        return FALSE_LIT if position is None else self.atoms[position]

    def ne(self, value: int) -> int:
        """Literal `x != value`."""
        return -self.eq(value)

    def ge(self, value: int) -> tuple[int, ...]:
        """Clause literals meaning `x >= value`."""
        return tuple(atom for v, atom in zip(self.values, self.atoms, strict=True) if v >= value)

    def le(self, value: int) -> tuple[int, ...]:
        """Clause literals meaning `x <= value`."""
        return tuple(atom for v, atom in zip(self.values, self.atoms, strict=True) if v <= value)

    def __contains__(self, value: int) -> bool:
        """Whether the value is in the initial domain."""
        return value in self._position

    def __repr__(self) -> str:
        """Return the variable name."""
        return self.name


@dataclass(frozen=True)
class BoolVar:
    """A Boolean variable backed by a single atom."""

    index: int
    name: str
    atom: int

    @property
    def lit(self) -> int:
        """The positive literal."""
        return self.atom

    @property
    def neg(self) -> int:
        """The negative literal."""
        return -self.atom

    def __repr__(self) -> str:
        """Return the variable name."""
        return self.name


Term = IntVar | int


def term_values(term: Term) -> tuple[int, ...]:
    """Initial values of a variable, or the constant itself."""
    return term.values if isinstance(term, IntVar) else (term,)


def term_eq(term: Term, value: int) -> int:
    """Literal `term = value`; constants give `TRUE_LIT` or `FALSE_LIT`."""
    if isinstance(term, IntVar):
        return term.eq(value)
    return TRUE_LIT if term == value else FALSE_LIT
