"""Exact metrics on step fuzzy sets over [0, 1] and Zadeh's extension of PL maps."""

from .bruteforce import d0_bruteforce
from .core import (
    Diagnostic,
    IntervalUnion,
    StepFuzzySet,
    alpha_cut,
    as_rational,
    canonicalize,
    membership,
    validate,
)
from .dynamics import (
    PLMap,
    contraction_ratio_report,
    lipschitz_constant,
    pl_image,
    union_extension,
    zadeh_extend,
)
from .metrics import (
    DistanceReport,
    LowerBoundCertificate,
    Reparam,
    apply_reparam,
    d0_lower_bound_certificate,
    hausdorff,
    level_metric_dinf,
    reparam_sup_deviation,
    skorokhod_d0,
)

__version__ = "0.1.0"

__all__ = [
    "Diagnostic",
    "DistanceReport",
    "IntervalUnion",
    "LowerBoundCertificate",
    "PLMap",
    "Reparam",
    "StepFuzzySet",
    "alpha_cut",
    "apply_reparam",
    "as_rational",
    "canonicalize",
    "contraction_ratio_report",
    "d0_bruteforce",
    "d0_lower_bound_certificate",
    "hausdorff",
    "level_metric_dinf",
    "lipschitz_constant",
    "membership",
    "pl_image",
    "reparam_sup_deviation",
    "skorokhod_d0",
    "union_extension",
    "validate",
    "zadeh_extend",
]
