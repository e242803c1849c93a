"""cyberalloc: optimal allocation between cybersecurity controls and cyber insurance.

Contrasts the allocations a prospect-theory decision-maker and an
expected-utility decision-maker would choose over parameterized risk
curves, and verifies the ordering results and conjectures numerically.
"""

from ._kernels import backend_name
from .analysis import (
    BespokeResult,
    ComparisonReport,
    SensitivityRecord,
    SensitivityReport,
    SweepReport,
    TheoremReport,
    bespoke_search,
    compare_models,
    conjecture_sweep,
    sensitivity_sweep,
    verify_theorems,
)
from .curves import (
    CurveValidationReport,
    ExponentialCurve,
    Segment,
    SteppedCurve,
    TabulatedCurve,
    TEMPLATE_NAMES,
    calibrate_exponential,
    eval_prob,
    eval_prob_array,
    scale_currency,
    template,
    validate_curve,
)
from .objectives import (
    OutcomeMatrix,
    Scenario,
    eut_expected_utility,
    eut_expected_utility_full,
    eut_expected_utility_grid,
    eut_expected_utility_linear,
    eut_expected_utility_uninsured,
    outcome_matrix,
    premium,
    pt_overall_value,
    pt_overall_value_full,
    pt_overall_value_grid,
    pt_overall_value_uninsured,
)
from .optimizer import AllocationResult, SolverDiagnostics, optimize_allocation, rank_insurance_options
from .preferences import EUTParams, PTParams, PT_BASE, crra_utility, pt_value, pt_weight, pt_weight_pair

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "backend_name",
    # curves
    "ExponentialCurve",
    "Segment",
    "SteppedCurve",
    "TabulatedCurve",
    "CurveValidationReport",
    "TEMPLATE_NAMES",
    "calibrate_exponential",
    "eval_prob",
    "eval_prob_array",
    "scale_currency",
    "template",
    "validate_curve",
    # preferences
    "PTParams",
    "EUTParams",
    "PT_BASE",
    "pt_value",
    "pt_weight",
    "pt_weight_pair",
    "crra_utility",
    # objectives
    "Scenario",
    "OutcomeMatrix",
    "premium",
    "outcome_matrix",
    "pt_overall_value",
    "pt_overall_value_full",
    "pt_overall_value_uninsured",
    "pt_overall_value_grid",
    "eut_expected_utility",
    "eut_expected_utility_full",
    "eut_expected_utility_uninsured",
    "eut_expected_utility_linear",
    "eut_expected_utility_grid",
    # optimizer
    "AllocationResult",
    "SolverDiagnostics",
    "optimize_allocation",
    "rank_insurance_options",
    # analysis
    "ComparisonReport",
    "compare_models",
    "SweepReport",
    "conjecture_sweep",
    "BespokeResult",
    "bespoke_search",
    "TheoremReport",
    "verify_theorems",
    "SensitivityRecord",
    "SensitivityReport",
    "sensitivity_sweep",
]
