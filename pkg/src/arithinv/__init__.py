"""Rings of invariants of finite matrix groups over exact domains, and
whether they are polynomial rings over ZZ_(p) and ZZ."""

from .criteria import (
    INCONCLUSIVE,
    NOT_POLYNOMIAL,
    POLYNOMIAL,
    Verdict,
    check_deg_product_bound,
    check_kemper,
    decide_dvr,
    decide_over_integers,
    verify_verdict,
)
from .dedekind import (
    QuadIdeal,
    QuadraticRing,
    blowup_grading_check,
    ideal_from_generators,
    ideal_mul,
    ideal_pow,
    is_principal,
    local_principal_generator,
)
from .groebner import (
    algebraically_independent,
    buchberger,
    normal_form,
    subalgebra_membership,
)
from .invariants import (
    invariant_lattice,
    invariant_space,
    minimal_generators,
    molien_dimensions,
    reynolds,
)
from .matgroup import MatrixGroup, close_group, load_representation, reduce_group
from .poly import GREVLEX, LEX, Polynomial, format_poly, parse_poly
from .rings import QQ, ZZ, Domain, reduce_mod_p, valuation

__version__ = "0.1.0"
