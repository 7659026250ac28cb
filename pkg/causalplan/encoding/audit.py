"""Post-hoc persistence audit of a solution."""

from __future__ import annotations

from typing import TYPE_CHECKING

from causalplan.encoding.persistence import interferes

if TYPE_CHECKING:
    from causalplan.encoding.model import CausalModel
    from causalplan.solver.model import Solution


def audit(causal: CausalModel, solution: Solution) -> list[str]:
    """Check that no supported atom is rewritten before its consumer.

    For every active input pin `(j, k)` supported by output pin `(i, l)`,
    every output pin of a slot strictly between `i` and `j` must leave the
    point of the supported atom alone or write the same value. The support
    itself must reproduce the input pin.

    Returns:
        One line per violation; empty when the assignment is sound.

    """
    violations = []
    for (j, k), support in sorted(causal.supports.items()):
        pin = causal.inputs(j)[k - 1]
        values = pin.read(solution)
        row = solution[support.row]
        if values[0] == 0:
            if row != 0:
                violations.append(f"inactive pin in{k} at slot {j} has support row {row}")
            continue
        i, l = causal.row_origin[row]
        if i < 0 or causal.rows[row].read(solution) != values:
            violations.append(f"pin in{k} at slot {j} is not reproduced by its support row {row}")
            continue
        if solution[support.slot] != i or solution[support.pin] != l:
            violations.append(f"support of in{k} at slot {j} decodes to the wrong slot or pin")
        for j_out in range(i + 1, j):
            for l_out, out in enumerate(causal.outputs(j_out), start=1):
                if interferes(out.read(solution), values):
                    violations.append(f"out{l_out} at slot {j_out} rewrites the support of in{k} at slot {j}")
    return violations
