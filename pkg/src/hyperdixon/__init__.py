"""Generalized hypergeometric series, generalized Dixon sums and quadratic
transformations, with a brute-force oracle and a grid verifier."""

from .dixon import (
    GAP_PAIRS,
    SUPPORTED_PAIRS,
    SYMMETRY_PAIRS,
    DixonCase,
    DixonCoefficients,
    coeff_A,
    coeff_B,
    dixon_general,
    dixon_oracle,
    dixon_sum,
    symmetry_extend,
)
from .errors import (
    CoefficientPoleError,
    ConfigError,
    DivisionByZeroError,
    DomainError,
    HyperError,
    IndeterminateError,
    NotTerminatingError,
    PoleError,
    UnsupportedPairError,
)
from .scalar import (
    DEFAULT_GUARD,
    CompensatedSum,
    PoleGuard,
    SignedLogGamma,
    compensated_sum,
    gamma_ratio,
    log_gamma_signed,
    pochhammer,
)
from .series import (
    DEFAULT_CONTROL,
    PFQParams,
    SeriesControl,
    SeriesResult,
    SeriesStatus,
    eval_pfq,
    eval_pfq_terminating,
    pfq,
)
from .transform import (
    GeneralTransformSpec,
    IdentityPair,
    TransformPoint,
    exton_general_lhs,
    exton_general_rhs,
    exton_lhs_theorem,
    exton_prefactor,
    exton_rhs_theorem,
    limiting_case,
    quadratic_argument,
    reduction_2_2_rhs,
    special_case,
    srivastava_identity_check,
)
from .verify import (
    Classification,
    GridSpec,
    PointOutcome,
    VerificationReport,
    run_grid,
    run_suite,
    validate_tables,
)

__version__ = "0.1.0"
