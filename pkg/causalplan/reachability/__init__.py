"""Lifted h^m reachability and the functional transformation it certifies."""

from causalplan.reachability.formula import Formula, canonicalize, make_formula
from causalplan.reachability.functional import (
    MappingDecision,
    TransformReport,
    choose_mappings,
    eligibility,
    functional_transform,
    right_unique,
    translate,
    uniqueness_formula,
)
from causalplan.reachability.hm import DEFAULT_FUEL, HmEvaluator, HmResult, entailed_by_init, hm
from causalplan.reachability.regression import match_pairs, regress

__all__ = [
    "DEFAULT_FUEL",
    "Formula",
    "HmEvaluator",
    "HmResult",
    "MappingDecision",
    "TransformReport",
    "canonicalize",
    "choose_mappings",
    "eligibility",
    "entailed_by_init",
    "functional_transform",
    "hm",
    "make_formula",
    "match_pairs",
    "regress",
    "right_unique",
    "translate",
    "uniqueness_formula",
]
