"""Exact involutive Upsilon invariants for staircase knot Floer complexes.

The package models finitely generated bifiltered chain complexes over F2,
builds staircase complexes for L-space knots and their mirrors, folds the
bifiltration, forms the involutive mapping cone, reduces it (generically or
in closed form), and computes the classic, folded, upper and lower Upsilon
functions together with the V0 invariants -- all in exact rational
arithmetic.
"""

from .complexes import (BifilteredComplex, Chain, FiltrationMode, Generator,
                        ValidationReport, boundary, direct_sum, dumps_complex,
                        homology_basis, homology_rank, loads_complex, shift,
                        validate)
from .involutive import ChainMap, fold, fold_map, mapping_cone, staircase_involution
from .plfunction import PLFunction
from .reduction import (ClosedFormOutput, ReductionResult,
                        closed_form_cone_reduction, essential_signature,
                        materialize_closed_form, reduce_bifiltered, strip_acyclic)
from .staircase import (Pointing, Sign, StaircaseClass, StaircaseSpec, classify,
                        mirror, staircase_from_steps, steps_from_torus_knot,
                        unknot_complex)
from .upsilon import (CosetSizeError, UpsilonVariant, chain_deg_t, deg_t,
                      involutive_cone, nu_function, slope_bound_check,
                      tower_witness, upsilon, upsilon_pair_from_cone,
                      v0_invariants)
from .verify import run_verify

__version__ = "0.1.0"

__all__ = [
    "BifilteredComplex", "Chain", "ChainMap", "ClosedFormOutput",
    "CosetSizeError", "FiltrationMode", "Generator", "PLFunction", "Pointing",
    "ReductionResult", "Sign", "StaircaseClass", "StaircaseSpec",
    "UpsilonVariant", "ValidationReport", "boundary", "chain_deg_t",
    "classify", "closed_form_cone_reduction", "deg_t", "direct_sum",
    "dumps_complex", "essential_signature", "fold", "fold_map",
    "homology_basis", "homology_rank", "involutive_cone", "loads_complex",
    "mapping_cone", "materialize_closed_form", "mirror", "nu_function",
    "reduce_bifiltered", "run_verify", "shift", "slope_bound_check",
    "staircase_from_steps", "staircase_involution", "steps_from_torus_knot",
    "strip_acyclic", "tower_witness", "unknot_complex", "upsilon",
    "upsilon_pair_from_cone", "v0_invariants", "validate",
]
