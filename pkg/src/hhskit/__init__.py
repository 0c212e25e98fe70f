"""Hierarchically hyperbolic structures on finite geodesic graphs."""

from .axioms import (
    AxiomReport,
    CheckConfig,
    check_bounded_geodesic_image,
    check_coarse_lipschitz,
    check_partial_realization,
    check_rho_coherence,
    check_transverse_consistency,
    check_uniqueness,
    full_report,
)
from .distance import QIFit, coarse_hull, df_sum, df_terms, df_thresholded, fit_qi_constants
from .generators import (
    Block,
    DomainDecl,
    IntervalComplexConfig,
    TreeOfFlatsConfig,
    bundled_json,
    bundled_structure,
    flat_grid,
    interval_complex,
    toy2_config,
    tree_of_flats,
)
from .metric import (
    DeltaReport,
    MetricSpace,
    build_graph,
    l1_product,
    path_graph,
)
from .structure import (
    DomainId,
    HHSStructure,
    Relation,
    RelationKind,
    Violation,
    new_structure,
)

__all__ = [
    "AxiomReport",
    "Block",
    "CheckConfig",
    "DomainDecl",
    "DeltaReport",
    "DomainId",
    "HHSStructure",
    "IntervalComplexConfig",
    "MetricSpace",
    "QIFit",
    "Relation",
    "RelationKind",
    "TreeOfFlatsConfig",
    "Violation",
    "build_graph",
    "bundled_json",
    "bundled_structure",
    "check_bounded_geodesic_image",
    "check_coarse_lipschitz",
    "check_partial_realization",
    "check_rho_coherence",
    "check_transverse_consistency",
    "check_uniqueness",
    "coarse_hull",
    "df_sum",
    "df_terms",
    "df_thresholded",
    "fit_qi_constants",
    "flat_grid",
    "full_report",
    "interval_complex",
    "l1_product",
    "new_structure",
    "path_graph",
    "toy2_config",
    "tree_of_flats",
]
