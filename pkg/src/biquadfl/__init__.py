"""biquadfl: exact invariant-polynomial calculus for pairs of quadratic
embeddings into central simple algebras over local fields, with orbital
integrals and certified intersection-number integration at rank one.

Everything is exact: p-adic scalars are rationals, Laurent scalars are
rational functions over tabulated finite fields, magnitudes live in
Z[sqrt(q)].  Precision enters only through explicit truncation.
"""

from .localfield import FieldDesc, Scalar, QSqrt, abs_q_half, parse_literal
from .errors import (
    BiquadError, ConfigError, DomainError, ComputeError,
    PrecisionExhausted, DivisionByZero, InseparablePolynomial, NotQuadratic,
    RamifiedCharacterUnsupported, NotARoot, NotFree, NotASquare,
    NoConjugatorFound, SingularGradingPart, DimensionMismatch,
    DepthCapReached, NotRegularSemisimple, UnsupportedRank,
    NoSplitRealization, VanishingFailed, UnsupportedExtension,
    StructurallyOpaque,
)
from .etale import QuadEtale, BiquadDiagram
from .csa import CSA, TensorCSA
from .invariant import (
    PairContext, InvariantReport, invariant_polynomial,
    is_regular_semisimple, resultant_abs, conjugacy_test,
    alt_invariant_via_grading,
)
from .integrate import (
    HeckeFunction, LaurentQS, EtaChar, laurent_eval_deriv,
    orbital_12, orbital_03, functional_equation_data,
    check_functional_equation, integrate_resultant, intersection_number,
    IntersectionResult, StratumReport, c_constant, disc_valuation,
)
from .fl import (
    MatchedQuadruple, build_matching_pair, dual_split_diagram,
    integral_matrix_pair, verify_bfl, verify_abfl, central_value_scan,
    sample_rss_context, conjugate_context, check_pair_identities,
    verify_identity_suite, verify_fe_suite, FIELD_BATTERY,
)
from .config import RunConfig
from .cli import run_command
from .rng import SplitMix64

__version__ = "0.1.0"
