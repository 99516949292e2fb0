"""Controlled g-frames on Hilbert C*-modules over M_k(C)."""
from .algebra import DEFAULT_TOL, Tolerance, alg_norm, involution, is_positive, psd_sqrt
from .controlled import (
    ControlPair,
    ControlledSystem,
    FrameBounds,
    analysis_apply,
    bessel_bound,
    c2_bound_transfer,
    controlled_bounds,
    controlled_frame_operator,
    synthesis_apply,
    telescoping_example,
    validate_control_pair,
)
from .errors import (
    CertificationError,
    CommutationViolated,
    DimensionMismatch,
    FrameError,
    NotAFrame,
    NotConverged,
    NotInGLPlus,
    NotModuleLinear,
    NotPositive,
    SingularPencil,
)
from .gframe import GFrameFamily, check_norm_condition, gframe_bounds, gframe_operator, rank_one_family
from .hmodule import CoefficientSequence, ModuleVector, inner, module_norm, sequence_inner, sequence_norm
from .operators import (
    AdjointableOperator,
    SpectralSummary,
    bounded_below_constant,
    commutes,
    complex_representation,
    in_gl_plus,
    is_surjective,
    op_adjoint,
    op_psd_sqrt,
    spectral_bounds,
)
from .perturb import difference_ratios, mixed_operator, perturbation_report, perturbed_bounds, surjectivity_transfer
from .recon import SolveReport, preconditioning_report, reconstruct, richardson_invert

__all__ = [
    "AdjointableOperator",
    "CertificationError",
    "CoefficientSequence",
    "CommutationViolated",
    "ControlPair",
    "ControlledSystem",
    "DEFAULT_TOL",
    "DimensionMismatch",
    "FrameBounds",
    "FrameError",
    "GFrameFamily",
    "ModuleVector",
    "NotAFrame",
    "NotConverged",
    "NotInGLPlus",
    "NotModuleLinear",
    "NotPositive",
    "SingularPencil",
    "SolveReport",
    "SpectralSummary",
    "Tolerance",
    "alg_norm",
    "analysis_apply",
    "bessel_bound",
    "bounded_below_constant",
    "c2_bound_transfer",
    "check_norm_condition",
    "commutes",
    "complex_representation",
    "controlled_bounds",
    "controlled_frame_operator",
    "difference_ratios",
    "gframe_bounds",
    "gframe_operator",
    "in_gl_plus",
    "inner",
    "involution",
    "is_positive",
    "is_surjective",
    "mixed_operator",
    "module_norm",
    "op_adjoint",
    "op_psd_sqrt",
    "perturbation_report",
    "perturbed_bounds",
    "preconditioning_report",
    "psd_sqrt",
    "rank_one_family",
    "reconstruct",
    "richardson_invert",
    "sequence_inner",
    "sequence_norm",
    "spectral_bounds",
    "surjectivity_transfer",
    "synthesis_apply",
    "telescoping_example",
    "validate_control_pair",
]
