"""Certified computations on singular moduli.

Exact class-group data for imaginary quadratic discriminants, certified
arbitrary-precision values of singular moduli with exact class polynomials,
and a verification harness that re-checks a catalog of enumeration and
refutation claims about linear relations between singular moduli.
"""

from .config import Config
from .discriminants import (
    ClassProfile,
    Discriminant,
    ReducedForm,
    class_number_list,
    class_profile,
    factor_discriminant,
    reduced_forms,
    scan,
    verify_star_discriminant,
)
from .errors import (
    DepthExhausted,
    Indeterminate,
    InvalidDiscriminant,
    NoSmallerConductor,
    PrecisionExhausted,
    UnknownInequality,
    UnsupportedTarget,
    WrongClassNumber,
)
from .jfun import (
    CertifiedValue,
    IntegerPolynomial,
    SingularModulusValue,
    all_singular_moduli,
    class_polynomial,
    dominant_singular_modulus,
    evaluate_singular_modulus,
    quadratic_field_kernel,
    real_nondominant_singular_moduli,
)
from .jcoefficients import j_coefficients
from .analytic import (
    bdfund_upper,
    bdsing_interval,
    inequality_holds,
    threshold_max,
    verify_small_lemma,
)
from .reports import CheckReport, Verdict
from .verifier import refute_linear_relation, run_all

__version__ = "0.1.0"

__all__ = [
    "CertifiedValue",
    "CheckReport",
    "ClassProfile",
    "Config",
    "DepthExhausted",
    "Discriminant",
    "Indeterminate",
    "IntegerPolynomial",
    "InvalidDiscriminant",
    "NoSmallerConductor",
    "PrecisionExhausted",
    "ReducedForm",
    "SingularModulusValue",
    "UnknownInequality",
    "UnsupportedTarget",
    "Verdict",
    "WrongClassNumber",
    "all_singular_moduli",
    "bdfund_upper",
    "bdsing_interval",
    "class_number_list",
    "class_polynomial",
    "class_profile",
    "dominant_singular_modulus",
    "evaluate_singular_modulus",
    "factor_discriminant",
    "inequality_holds",
    "j_coefficients",
    "quadratic_field_kernel",
    "real_nondominant_singular_moduli",
    "reduced_forms",
    "refute_linear_relation",
    "run_all",
    "scan",
    "threshold_max",
    "verify_small_lemma",
    "verify_star_discriminant",
]
