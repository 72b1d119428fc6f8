"""Explicit machine constructions, the equivalence compiler, and the derandomization pipeline."""

from .compiler import (
    EquivalencePartition,
    advice_symbol,
    build_equivalence,
    compile_advised_dfa,
    condition_b_holds,
    extract_equivalence,
    refines,
)
from .machines import (
    IntersectionPfa,
    cequal_intersect,
    dup_advice,
    dup_cequal_family,
    dup_cequal_uniform,
    dup_first_half,
    dup_middle,
    dup_middle_scale,
    dup_rn,
    equal6_cequal,
    fix_advice,
    lij_cequal,
    lij_closed_form,
    palhash_rn,
    universal_cequal_rlin,
)
from .pipeline import common_denominator, derandomize, dnormalize, uniform_degree

__all__ = [
    "EquivalencePartition", "advice_symbol", "build_equivalence", "compile_advised_dfa",
    "condition_b_holds", "extract_equivalence", "refines", "IntersectionPfa", "cequal_intersect",
    "dup_advice", "dup_cequal_family", "dup_cequal_uniform", "dup_first_half", "dup_middle",
    "dup_middle_scale", "dup_rn", "equal6_cequal", "fix_advice", "lij_cequal", "lij_closed_form",
    "palhash_rn", "universal_cequal_rlin", "common_denominator", "derandomize", "dnormalize",
    "uniform_degree",
]
