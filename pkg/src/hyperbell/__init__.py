"""Hypergraph states: construction, Mermin non-locality invariants,
hyperdeterminant stratum classification, hyperplane-section singularity
analysis, and measurement-circuit compilation/simulation.
"""

from ._kernels import BACKEND_NAME
from .circuits import (
    Circuit,
    Gate,
    ShotCounts,
    ancilla_purity,
    basis_change_u3,
    circuit_from_dict,
    circuit_to_dict,
    emit_qasm,
    estimate_mermin,
    estimate_monomial,
    hypergraph_circuit,
    main_register_state,
    measurement_circuit,
    parse_qasm,
    sample,
    simulate,
)
from .hyperstate import (
    CatalogEntry,
    Hypergraph,
    StateVector,
    apply_controlled_z,
    build_hypergraph_state,
    catalog_entry,
    catalog_load,
    default_catalog_path,
    infer_hypergraph,
    is_connected,
    k_uniform,
    phase_distance,
    plus_state,
)
from .invariants import (
    BinaryQuartic,
    StratumReport,
    cayley_hyperdet_222,
    classify_stratum,
    hdet_2222,
    hdet_zero,
    quartic_discriminant,
    quartic_invariants,
    schlafli_quartic,
)
from .mermin import (
    BlochVector,
    MerminExpansion,
    MuResult,
    ObservableFamily,
    OptimizationConfig,
    WitnessReport,
    entanglement_witness,
    expand_mermin,
    mermin_expectation,
    mermin_pair_expectation,
    monomial_expectation,
    observable_matrix,
    optimize_mu,
    optimize_mu_tilde,
)
from .singular import (
    SectionConfig,
    SectionPolynomial,
    SectionReport,
    SingularPoint,
    analyze_section,
    find_critical_points,
    kuniform_section_survey,
    section_polynomial,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND_NAME",
    "BinaryQuartic",
    "BlochVector",
    "CatalogEntry",
    "Circuit",
    "Gate",
    "Hypergraph",
    "MerminExpansion",
    "MuResult",
    "ObservableFamily",
    "OptimizationConfig",
    "SectionConfig",
    "SectionPolynomial",
    "SectionReport",
    "ShotCounts",
    "SingularPoint",
    "StateVector",
    "StratumReport",
    "WitnessReport",
    "analyze_section",
    "ancilla_purity",
    "apply_controlled_z",
    "basis_change_u3",
    "build_hypergraph_state",
    "catalog_entry",
    "catalog_load",
    "cayley_hyperdet_222",
    "circuit_from_dict",
    "circuit_to_dict",
    "classify_stratum",
    "default_catalog_path",
    "emit_qasm",
    "entanglement_witness",
    "estimate_mermin",
    "estimate_monomial",
    "expand_mermin",
    "find_critical_points",
    "hdet_2222",
    "hdet_zero",
    "hypergraph_circuit",
    "infer_hypergraph",
    "is_connected",
    "k_uniform",
    "kuniform_section_survey",
    "main_register_state",
    "measurement_circuit",
    "mermin_expectation",
    "mermin_pair_expectation",
    "monomial_expectation",
    "observable_matrix",
    "optimize_mu",
    "optimize_mu_tilde",
    "parse_qasm",
    "phase_distance",
    "plus_state",
    "quartic_discriminant",
    "quartic_invariants",
    "sample",
    "schlafli_quartic",
    "section_polynomial",
    "simulate",
]
