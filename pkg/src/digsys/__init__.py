"""digsys: exact digit systems on quotient rings E[x]/(P).

Supports the integers, the Gaussian integers and polynomial rings over
prime fields as coefficient rings, non-monic base polynomials, digit
sets that need not contain zero, witness-set decisions for the finite
and periodic expansion properties, shift-radix classification over
exact rationals, product constructions and finite-field criteria.
"""

from .digits import (
    DEFAULT_STEP_CAP,
    DigitSequence,
    DigitSystem,
    Expansion,
    PeriodicSetReport,
    ZeroCycle,
    validate_system,
)
from .errors import ParseError, ValidationError
from .ffds import (
    canonical_ff_digits,
    convert_expansion,
    ff_criterion,
    phi_chain,
    phi_window_map,
    prove_fep_via_zero_cycle,
)
from .polyquot import Poly, QuotElem, QuotRing, StandardRep, format_poly, parse_poly
from .product import multi_product_digit_set, product_digit_set, product_expand
from .rings import Fp, FpPoly, GaussianInt, Ring, Z, ZI, ring_from_name
from .srs import (
    SrsParams,
    SrsVerdict,
    cns_to_srs,
    dominant_condition,
    srs_classify,
    srs_to_cns,
    tau_step,
)
from .witness import (
    DEFAULT_CLOSURE_CAP,
    OrbitGraph,
    Verdict,
    WitnessClosure,
    decide_fep,
    decide_pep,
    euclidean_necessary_check,
    expanding_check,
    orbit_graph,
    seed_witnesses,
    verify_witness_set,
    witness_closure,
)

__all__ = [
    "DEFAULT_CLOSURE_CAP",
    "DEFAULT_STEP_CAP",
    "DigitSequence",
    "DigitSystem",
    "Expansion",
    "Fp",
    "FpPoly",
    "GaussianInt",
    "OrbitGraph",
    "ParseError",
    "PeriodicSetReport",
    "Poly",
    "QuotElem",
    "QuotRing",
    "Ring",
    "SrsParams",
    "SrsVerdict",
    "StandardRep",
    "ValidationError",
    "Verdict",
    "WitnessClosure",
    "Z",
    "ZI",
    "ZeroCycle",
    "canonical_ff_digits",
    "cns_to_srs",
    "convert_expansion",
    "decide_fep",
    "decide_pep",
    "dominant_condition",
    "euclidean_necessary_check",
    "expanding_check",
    "ff_criterion",
    "format_poly",
    "multi_product_digit_set",
    "orbit_graph",
    "parse_poly",
    "phi_chain",
    "phi_window_map",
    "product_digit_set",
    "product_expand",
    "prove_fep_via_zero_cycle",
    "ring_from_name",
    "seed_witnesses",
    "srs_classify",
    "srs_to_cns",
    "tau_step",
    "validate_system",
    "verify_witness_set",
    "witness_closure",
]

__version__ = "0.1.0"
