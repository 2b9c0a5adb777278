"""graphonlab: eigenvalue fluctuations of dense graphon random graphs.

A simulation laboratory for the dichotomy in the fluctuations of the
leading eigenvalues of kernel and adjacency matrices sampled from a
graphon: Gaussian at the sqrt(n) scale when the target eigenfunction's
square has positive variance, weighted chi-square at the O(1) scale after
centering when it is constant.
"""

__version__ = "0.1.0"

from .errors import (
    AssumptionViolation,
    ConfigError,
    DomainError,
    ExperimentQualityError,
    GraphonLabError,
    NumericError,
    ParameterError,
    PreconditionError,
    UnsupportedModelError,
    WrongRegimeError,
)
from .models import (
    BlockModel,
    BrownianSqrt,
    GraphonModel,
    GridKernel,
    PowerKernel,
    ValidationReport,
)
from .spectrum import (
    DEGENERATE,
    NONDEGENERATE,
    RegimeConstants,
    SpectralData,
    analytic_spectrum,
    l2_residual,
    nystrom_spectrum,
    regime_constants,
)
from .sampling import (
    SampleDraw,
    adjacency_matrix,
    draw,
    draw_latents,
    kernel_matrix,
    stream,
)
from .eigensolve import (
    EigenDecomposition,
    MatchedEigenvalue,
    estimate_op_norm,
    match_target,
    symmetric_eigen,
)
from .diagnostics import (
    CrossProjections,
    ExpansionRemainder,
    HoeffdingParts,
    KatoTempleInterval,
    cross_projections,
    degenerate_pair_sum,
    expansion_remainder,
    hoeffding_decompose,
    kato_temple_interval,
    normalization_expansion,
    rayleigh_quotient,
    resolvent_correction,
)
from .limit_laws import (
    GaussianLaw,
    WeightedChiSquareLaw,
    chi_square_law,
    gaussian_law,
    law_cdf,
    law_quantiles,
    law_variance,
    sample_law,
)
from .experiment import (
    ComparisonReport,
    ExperimentConfig,
    ExperimentReport,
    FluctuationRecord,
    KsResult,
    adjacency_comparison,
    ks_one_sample,
    ks_two_sample,
    run_experiment,
    run_replication,
    write_records_csv,
)
