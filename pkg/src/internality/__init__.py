"""Decide internality to constants for rational first-order ODE systems.

Exact arithmetic throughout: polynomials and rational functions over QQ or a
field of rational parameters, a differential-field engine for identity
checking, residue analysis (Hermite reduction, Rothstein-Trager), and the
decision procedures built on them.  Every Yes comes with a certificate that
:func:`verify_witness` re-derives exactly.
"""

from .algebra import Poly, RatFunc, RatNum
from .decision import (
    Answer,
    CondIIWitness,
    ConditionIWitness,
    GeneralWitness,
    LogSystemWitness,
    Obstruction,
    RiccatiCoeffs,
    RiccatiWitness,
    SystemSpec,
    Verdict,
    check_condition_i,
    check_condition_ii,
    check_general_system,
    check_log_system,
    check_single_equation,
    leading_degree_lemma,
    verify_witness,
)
from .diffengine import (
    DiffContext,
    DiffExpr,
    derive,
    second_order_relation,
    verify_cross_ratio,
    verify_footnote_factor,
    verify_identity,
    verify_log_system_witness,
    wronskian,
)
from .errors import (
    ContextError,
    DivisionByZeroError,
    DomainError,
    HypothesisViolation,
    InternalityError,
    ParseError,
    PreconditionError,
    UndeclaredIdentifierError,
    UnsupportedInputError,
    VerificationError,
)
from .numeric import Trajectory, cross_ratio_drift, rk4_integrate
from .parsing import parse_ratfunc
from .residues import (
    LogDerivWitness,
    hermite_reduce,
    integer_residue_logderivative,
    is_exact_derivative,
    residue_profile,
    rothstein_trager_resultant,
    scaled_logderivative,
)

__version__ = "0.1.0"
