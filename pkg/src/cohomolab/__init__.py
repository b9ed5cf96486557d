"""Exact Hochschild cohomology of finite group algebras, with resolutions and certificates."""

__version__ = "0.1.0"

from .linalg import F2, F3, RATIONALS, ExactMatrix, FieldTag  # noqa: E402
from .groups import (  # noqa: E402
    GAction,
    Group,
    Subgroup,
    conjugacy_classes,
    conjugation_action,
    is_commutative_transitive,
    regular_action,
    trivial_action,
)
from .complexes import CohomologyReport, NormedComplex, certify_split, cohomology_dims, sniper_demo  # noqa: E402
from .hochschild import (  # noqa: E402
    augmentation_bimodule,
    dualize,
    function_dual_of_action,
    group_algebra_bimodule,
    hochschild_complex,
)
from .shapiro import brute_force_oracle, disintegrate, resolution_pipeline  # noqa: E402
from .augmentation import ct_proof_path, extend_trace, les_verify, simplicial_report  # noqa: E402

__all__ = [
    "F2", "F3", "RATIONALS", "ExactMatrix", "FieldTag",
    "GAction", "Group", "Subgroup", "conjugacy_classes", "conjugation_action",
    "is_commutative_transitive", "regular_action", "trivial_action",
    "CohomologyReport", "NormedComplex", "certify_split", "cohomology_dims", "sniper_demo",
    "augmentation_bimodule", "dualize", "function_dual_of_action", "group_algebra_bimodule",
    "hochschild_complex", "brute_force_oracle", "disintegrate", "resolution_pipeline",
    "ct_proof_path", "extend_trace", "les_verify", "simplicial_report",
]
