"""Numerical toolkit for continuous K-g-frames on finite-dimensional spaces.

Operator families indexed by a finitely atomized measure space are analyzed
through their frame machinery: analysis/synthesis/frame operators, optimal
frame constants against a reference operator K, range characterizations,
dual families (Douglas factors, pseudo-inverse duals, canonical duals,
pullbacks), and perturbation bounds with sampled condition checks.
"""

from ._version import __version__
from .errors import (
    DegenerateDual,
    DimensionMismatch,
    InadmissibleParams,
    InvalidConfig,
    InvalidDelta,
    InvalidPair,
    NotAFrame,
    NotHermitian,
    NotPsd,
    ParseError,
    ToolkitError,
)
from .linalg import (
    DEFAULT_TOL,
    HermitianEigen,
    TolerancePolicy,
    adjoint,
    as_matrix,
    hermitian_eigen,
    is_psd,
    loewner_gap,
    operator_norm,
    pseudo_inverse,
    range_inclusion,
)
from .measure import Atom, BlockVector, DiscreteMeasureSpace, l2_inner, l2_norm, refine_space
from .frames import (
    FrameBounds,
    FrameReport,
    OperatorFamily,
    analysis,
    check_synthesis_range,
    frame_operator,
    optimal_bounds,
    refine_family,
    scale_family,
    synthesis,
    synthesis_matrix,
    verify_frame,
)
from .duality import (
    DualPair,
    bessel_constant,
    canonical_dual,
    douglas_gamma,
    k_power_family,
    lower_bound_from_dual,
    pullback_by,
    theta_dual,
)
from .perturbation import (
    PerturbationParams,
    PerturbationReport,
    predicted_bounds,
    project_out_range,
    sample_condition,
    scalar_perturbation_params,
    verify_perturbation,
)
from .scenarios import (
    build_continuous_fourier,
    build_paper_example,
    build_random_frame,
    run_config,
)

__all__ = [
    "__version__",
    # errors
    "ToolkitError",
    "DimensionMismatch",
    "NotHermitian",
    "NotPsd",
    "NotAFrame",
    "InvalidPair",
    "DegenerateDual",
    "InadmissibleParams",
    "InvalidDelta",
    "InvalidConfig",
    "ParseError",
    # numeric kernel
    "TolerancePolicy",
    "DEFAULT_TOL",
    "HermitianEigen",
    "as_matrix",
    "adjoint",
    "pseudo_inverse",
    "hermitian_eigen",
    "operator_norm",
    "is_psd",
    "loewner_gap",
    "range_inclusion",
    # measure space
    "Atom",
    "DiscreteMeasureSpace",
    "BlockVector",
    "l2_inner",
    "l2_norm",
    "refine_space",
    # frame core
    "OperatorFamily",
    "FrameBounds",
    "FrameReport",
    "analysis",
    "synthesis",
    "frame_operator",
    "synthesis_matrix",
    "optimal_bounds",
    "verify_frame",
    "check_synthesis_range",
    "scale_family",
    "refine_family",
    # duality
    "DualPair",
    "douglas_gamma",
    "bessel_constant",
    "lower_bound_from_dual",
    "theta_dual",
    "canonical_dual",
    "pullback_by",
    "k_power_family",
    # perturbation
    "PerturbationParams",
    "PerturbationReport",
    "predicted_bounds",
    "sample_condition",
    "verify_perturbation",
    "scalar_perturbation_params",
    "project_out_range",
    # scenarios
    "build_paper_example",
    "build_continuous_fourier",
    "build_random_frame",
    "run_config",
]
