"""Genus, gonality and Mordell-Weil bookkeeping for modular curves with
mixed level structures at 3, 5 and 7, plus a finiteness rule engine for
their low-degree points.

Everything is exact integer/rational arithmetic over a small bundled set
of newform metadata (see ``modcurve.newforms``); no floating point enters
any computation path.
"""

from .decomposition import (
    IsotypicComponent,
    al_trace,
    decompose,
    eigenspace_dim,
    genus_al_quotient,
    genus_x0,
    old_multiplicity,
)
from .errors import (
    CertificateError,
    DataError,
    IncompleteSetError,
    MissingRankError,
    MissingSignError,
    NetworkError,
    SchemaError,
    UnsupportedDegreeError,
)
from .gonality import (
    KIM_SARNAK,
    LUO_RUDNICK_SARNAK,
    SELBERG,
    SpectralBound,
    abramovich_frey_finite,
    castelnuovo_severi_max_genus,
    custom_bound,
    gonality_lower_bound,
    integer_gonality_bound,
    min_nonfactoring_degree,
    no_degree_d_map_certificate,
    riemann_hurwitz_double_cover_genus,
)
from .jacobians import (
    JacobianDecomposition,
    JacobianFactor,
    chen_ns7_decomposition,
    elliptic_factors_all_rank_zero,
    jacobian_al_quotient,
    jacobian_x0,
    mordell_weil_rank,
    total_dimension,
)
from .levels import LevelStructure, SubgroupKind, group_order, local_index, psl2_index
from .newforms import (
    Newform,
    NewformSet,
    bundled_newforms,
    forms_of_level_dividing,
    load_fixtures,
    serialize,
)
from .verdicts import (
    CurveFacts,
    FinitenessVerdict,
    PipelineReport,
    Result,
    Rule,
    brill_noether_genus_threshold,
    gonality_sandwich_x0_105,
    propagate_over_cover,
    rule_gonality,
    rule_large_genus,
    rule_rank_zero,
    run_pipeline,
    verify_report,
)

__version__ = "0.1.0"

__all__ = [
    "CertificateError",
    "CurveFacts",
    "DataError",
    "FinitenessVerdict",
    "IncompleteSetError",
    "IsotypicComponent",
    "JacobianDecomposition",
    "JacobianFactor",
    "KIM_SARNAK",
    "LUO_RUDNICK_SARNAK",
    "LevelStructure",
    "MissingRankError",
    "MissingSignError",
    "NetworkError",
    "Newform",
    "NewformSet",
    "PipelineReport",
    "Result",
    "Rule",
    "SELBERG",
    "SchemaError",
    "SpectralBound",
    "SubgroupKind",
    "UnsupportedDegreeError",
    "abramovich_frey_finite",
    "al_trace",
    "brill_noether_genus_threshold",
    "bundled_newforms",
    "castelnuovo_severi_max_genus",
    "chen_ns7_decomposition",
    "custom_bound",
    "decompose",
    "eigenspace_dim",
    "elliptic_factors_all_rank_zero",
    "forms_of_level_dividing",
    "genus_al_quotient",
    "genus_x0",
    "gonality_lower_bound",
    "gonality_sandwich_x0_105",
    "group_order",
    "integer_gonality_bound",
    "jacobian_al_quotient",
    "jacobian_x0",
    "load_fixtures",
    "local_index",
    "min_nonfactoring_degree",
    "mordell_weil_rank",
    "no_degree_d_map_certificate",
    "old_multiplicity",
    "propagate_over_cover",
    "psl2_index",
    "riemann_hurwitz_double_cover_genus",
    "rule_gonality",
    "rule_large_genus",
    "rule_rank_zero",
    "run_pipeline",
    "serialize",
    "total_dimension",
    "verify_report",
]
