"""Verification library for harmonic spaces with radial eigenfunctions cosh r + c.

Exact rational derivation of the spectral constants, the volume density and
its series oracle, the radial eigenfunction ODE, hyperboloid-model point
configurations, and rank/signature analysis of the indefinite distance-kernel
bilinear form.  See the CLI (``harmonic-embed``) for the runnable checks.
"""

from .backends import BACKEND, jacobi_eigh, warmup
from .constants import (
    ConsistencyReport,
    DensityClass,
    DensityExponents,
    DensityTag,
    HarmonicParams,
    NA_CATALOG,
    NACatalogEntry,
    SpectralConstants,
    bishop_gromov_check,
    classify_density,
    consistency_report,
    density_exponents,
    derive_spectral_constants,
    na_b_integrality,
    na_params,
    printed_constants,
)
from .density import (
    BlowupError,
    DensityEval,
    FrobeniusSeries,
    IntegrationConfig,
    RadialODE,
    RadialSolution,
    default_residual_grid,
    density_table_csv,
    eigen_residual,
    eval_density,
    frobenius_start,
    integrate_radial,
    ledger_series,
    ledger_series_oracle,
)
from .gram import (
    DistanceConfig,
    EmbedCheckReport,
    GramAnalysis,
    LineTripleSystem,
    cone_gradient_inequality,
    gram_f,
    gram_phi,
    line_triple_system,
    nondegeneracy_probe,
    rank_saturation,
    run_embed_checks,
    third_derivative_check,
    velocity_gram_fd,
)
from .model_spaces import (
    Geodesic,
    LineConfig,
    SeededSampler,
    distance,
    foot_distance_profile,
    geodesic_point,
    minkowski_form,
    points_to_csv,
    random_points,
)

__version__ = "0.1.0"
