"""Ideal notions on finite BE-algebras and N-structures, decided exactly."""

from .algebra import (
    AxiomReport,
    BEAlgebra,
    InputError,
    NotABEAlgebra,
    PreconditionError,
    Verdict,
    is_self_distributive,
    is_transitive,
    leq,
    mul,
    validate_be_algebra,
)
from .ek import (
    EkParameters,
    EkVerdict,
    TheoremCheck,
    check_n_ideal_promotion,
    check_pro2,
    check_q_theorem,
    check_th5,
    is_ek_ideal_definition,
    is_ek_ideal_levels,
    is_ek_ideal_th4,
    is_ek_ideal_th6,
)
from .ideals import enumerate_ideals, is_ideal_def, is_ideal_lemma
from .nstructures import (
    NFunction,
    PointAssertion,
    ThresholdGrid,
    critical_thresholds,
    cut,
    e_or_ck,
    employed,
    is_n_ideal,
    k_employed,
    level_set,
    q_set,
)
from .search import EnumerationConfig, canonical_form, enumerate_algebras, enumerate_n_functions

__version__ = "0.1.0"
