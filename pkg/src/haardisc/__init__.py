"""haardisc: exact L2 discrepancy, Haar spectra, and lower-bound certificates
for finite (optionally weighted) point sets in the half-open unit cube."""

from .certificate import (
    CertificateReport,
    LevelReport,
    certify,
    count_empty_boxes,
    gamma_maximize,
    gamma_objective,
    gamma_objective_d,
    level_sum_bruteforce,
    level_sum_closed_form,
    level_sum_leading_coeff_d,
    theoretical_lower_bound,
    verify_constant_identities,
)
from .core import (
    BudgetExceededError,
    Constants,
    DyadicIndex,
    PointSet,
    PointSetError,
    Rational,
    constants_table,
    load_point_set,
    save_point_set,
    validate_point_set,
)
from .discrepancy import (
    DiscrepancyValue,
    discrepancy_at,
    l2_exact_grid,
    l2_monte_carlo,
    warnock_l2,
)
from .generators import GeneratorSpec, generate, radical_inverse_base2
from .haar import (
    HaarCoefficient,
    discrepancy_haar_coeff,
    haar_eval,
    haar_eval_1d,
    haar_spectrum,
    parseval_partial_sum,
    parseval_profile,
    point_coeff,
    tail_integral_1d,
    volume_coeff,
    volume_coeff_1d,
    write_spectrum_csv,
)

__version__ = "0.1.0"

__all__ = [
    "BudgetExceededError",
    "CertificateReport",
    "Constants",
    "DiscrepancyValue",
    "DyadicIndex",
    "GeneratorSpec",
    "HaarCoefficient",
    "LevelReport",
    "PointSet",
    "PointSetError",
    "Rational",
    "certify",
    "constants_table",
    "count_empty_boxes",
    "discrepancy_at",
    "discrepancy_haar_coeff",
    "gamma_maximize",
    "gamma_objective",
    "gamma_objective_d",
    "generate",
    "haar_eval",
    "haar_eval_1d",
    "haar_spectrum",
    "l2_exact_grid",
    "l2_monte_carlo",
    "level_sum_bruteforce",
    "level_sum_closed_form",
    "level_sum_leading_coeff_d",
    "load_point_set",
    "parseval_partial_sum",
    "parseval_profile",
    "point_coeff",
    "radical_inverse_base2",
    "save_point_set",
    "tail_integral_1d",
    "theoretical_lower_bound",
    "validate_point_set",
    "verify_constant_identities",
    "volume_coeff",
    "volume_coeff_1d",
    "warnock_l2",
    "write_spectrum_csv",
]
