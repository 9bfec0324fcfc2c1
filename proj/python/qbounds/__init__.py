"""Exclusivity-graph workbench for the bounds of genuine n-body nonlocality."""

from ._core import (
    bounds_report,
    check_nonsignaling,
    derive_bound,
    evaluate,
    exclusive,
    ghz_correlator,
    hybrid_bound,
    independence_number,
    is_vertex_transitive,
    local_bound,
    lovasz_theta,
    ns_box,
    optimize_sn_angles,
    sigma_graph,
    sigma_support,
    sn_terms,
    verify_family,
)

__version__ = "0.1.0"

__all__ = [
    "bounds_report",
    "check_nonsignaling",
    "derive_bound",
    "evaluate",
    "exclusive",
    "ghz_correlator",
    "hybrid_bound",
    "independence_number",
    "is_vertex_transitive",
    "local_bound",
    "lovasz_theta",
    "ns_box",
    "optimize_sn_angles",
    "sigma_graph",
    "sigma_support",
    "sn_terms",
    "verify_family",
]
