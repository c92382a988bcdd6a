"""Linear stability and Gaussian vacuum properties of a levitated nanomagnet."""

__version__ = "0.1.0"

from .errors import (AsymmetricInput, MaglevError, NegativeJ, NoSignChange,
                     NonPositiveBlockDeterminant, NonPositiveInput, NotStable,
                     RootSolverFailure, TransverseTrapUndefined, ZeroNormVector)
from .gaussian import (BogoliubovTransform, CovarianceMatrix, StateMetrics,
                       StateScanRow, bogoliubov_from_form, bogoliubov_transform,
                       covariance, mode_metrics, state_scan)
from .hamiltonian import (MODE_NAMES, CouplingMatrixC, QuadraticModel, build_C,
                          build_MT, build_model, particle_hole_conjugate)
from .params import (DerivedQuantities, PhysicalConstants, RegimeReport,
                     SystemParams, derive_quantities, validate_regime)
from .stability import (Borders, CharPolyT, Classification, PhaseDiagram,
                        StabilityVerdict, analytic_borders, classify_params,
                        classify_point, companion_real_root_count,
                        crosscheck_spectrum, pt_coefficients, refine_boundary,
                        refine_boundary_radius, sturm_real_root_count,
                        sweep_grid)

__all__ = [
    "__version__",
    "MaglevError", "NonPositiveInput", "TransverseTrapUndefined", "NegativeJ",
    "AsymmetricInput", "RootSolverFailure", "NoSignChange", "NotStable",
    "ZeroNormVector", "NonPositiveBlockDeterminant",
    "PhysicalConstants", "SystemParams", "DerivedQuantities", "RegimeReport",
    "derive_quantities", "validate_regime",
    "MODE_NAMES", "CouplingMatrixC", "QuadraticModel", "build_C", "build_MT",
    "build_model", "particle_hole_conjugate",
    "Classification", "CharPolyT", "StabilityVerdict", "Borders",
    "PhaseDiagram", "pt_coefficients", "classify_point", "classify_params",
    "analytic_borders", "sweep_grid", "refine_boundary",
    "refine_boundary_radius", "crosscheck_spectrum", "sturm_real_root_count",
    "companion_real_root_count",
    "BogoliubovTransform", "CovarianceMatrix", "StateMetrics", "StateScanRow",
    "bogoliubov_transform", "bogoliubov_from_form", "covariance",
    "mode_metrics", "state_scan",
]
