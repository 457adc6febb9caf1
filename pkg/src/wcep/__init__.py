"""Dense computation and verification of the W-weighted core-EP inverse."""

__version__ = "0.1.0"

from .dense import (  # noqa: E402
    DEFAULT_TOL,
    PivotedQrFactors,
    SvdFactors,
    Tolerance,
    as_matrix,
    conj_transpose,
    matmul,
    numerical_rank,
    pinv,
    pivoted_qr,
    power,
    spectral_norm,
    svd,
)
from .errors import (  # noqa: E402
    ConvergenceError,
    DimensionError,
    NumericalError,
    SingularMatrixError,
    ValidationError,
    WcepError,
)
from .genin import (  # noqa: E402
    WeightedPair,
    core_ep,
    drazin,
    index,
    wcep_def,
    wcep_eq13,
    wcep_eq28,
    wcep_eq29,
    weighted_drazin,
)
from .reps import (  # noqa: E402
    FullRankFactors,
    GasFactors,
    RangeNullSpec,
    full_rank_decompose,
    outer_inverse_ts,
    wcep_full_rank,
    wcep_gas,
    wcep_generator,
    wcep_qr,
    wcep_svd_canonical,
)
from .verify import ResidualReport, check_wcep_axioms, residuals  # noqa: E402
