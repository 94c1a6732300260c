"""Zero-divisor graphs of finite commutative rings: exact domination and total domination."""

__version__ = "0.1.0"

from .domination import (  # noqa: E402
    DominationResult,
    domination_number,
    enumerate_minimum_total_dominating_sets,
    is_dominating_set,
    is_total_dominating_set,
    total_domination_number,
    twin_reduce,
)
from .dsl import Product, Quotient, Zn, compile_spec, format_spec, parse  # noqa: E402
from .graph import LoopGraph, build_zdg, diameter, girth, is_connected, universal_vertex  # noqa: E402
from .ring import (  # noqa: E402
    ElementSet,
    FiniteRing,
    annihilator,
    annihilator_ideal_witness,
    idempotents,
    is_domain,
    is_z2_times_domain,
    make_presented,
    make_product,
    make_zn,
    validate,
    zero_divisor_set,
)

__all__ = [
    "DominationResult",
    "ElementSet",
    "FiniteRing",
    "LoopGraph",
    "Product",
    "Quotient",
    "Zn",
    "annihilator",
    "annihilator_ideal_witness",
    "build_zdg",
    "compile_spec",
    "diameter",
    "domination_number",
    "enumerate_minimum_total_dominating_sets",
    "format_spec",
    "girth",
    "idempotents",
    "is_connected",
    "is_domain",
    "is_dominating_set",
    "is_total_dominating_set",
    "is_z2_times_domain",
    "make_presented",
    "make_product",
    "make_zn",
    "parse",
    "total_domination_number",
    "twin_reduce",
    "universal_vertex",
    "validate",
    "zero_divisor_set",
]
