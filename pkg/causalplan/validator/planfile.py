"""Read and write plan files.

A plan file holds one `(<schema> <object> ...)` step per line; lines starting
with `;` are comments. Written plans end with a `; cost = N (unit cost)`
trailer, which keeps them readable by external validators.
"""

from pyparsing import ParseException, Regex, StringEnd, Suppress, ZeroOrMore

from causalplan.fstrips.task import GroundAction, Plan
from causalplan.pddl.parser import SEXPR, SList, Token
from causalplan.utils import PddlSyntaxError

PLAN_FILE = ZeroOrMore(SEXPR) + StringEnd()
PLAN_FILE.ignore(Suppress(Regex(r";[^\n]*")))


def read_plan(text: str) -> Plan:
    """Parse the text of a plan file.

    Args:
        text: The plan file content.

    Returns:
        The plan, names lower-cased.

    Raises:
        PddlSyntaxError: If a step is not a flat list of names.

    """
    try:
        steps = PLAN_FILE.parse_string(text, parse_all=True)
    except ParseException as e:
        raise PddlSyntaxError(e.lineno, e.col, e.msg) from None
    actions = []
    for step in steps:
        if not isinstance(step, SList) or not step.items:
            raise PddlSyntaxError(step.line, step.column, "expected a plan step '(<schema> <object> ...)'")
        names = []
        for item in step.items:
            if not isinstance(item, Token):
                raise PddlSyntaxError(item.line, item.column, "nested list in plan step")
            names.append(item.text)
        actions.append(GroundAction(names[0], tuple(names[1:])))
    return Plan(tuple(actions))


def write_plan(plan: Plan) -> str:
    """Render a plan in plan-file format with its cost trailer."""
    lines = [str(step) for step in plan.steps]
    lines.append(f"; cost = {plan.cost} (unit cost)")
    return "\n".join(lines) + "\n"
