"""Divisibility requirements, degree lower bounds and bound certificates."""

from torsionbound.bounds.arai import AraiConfig, FiniteSupportVerdict, finite_support_bound, load_arai
from torsionbound.bounds.certificate import (
    SCHEMA_VERSION,
    BoundCertificate,
    LogBound,
    ReplayReport,
    TraceStep,
    certificate_from_json,
    certificate_to_json,
    evaluate_bound,
    replay_trace,
    synthesize_certificate,
    toy_certificate,
    verify_certificate,
)
from torsionbound.bounds.divisibility import (
    DivisibilityRequirement,
    ExponentSplit,
    admissible_large_torsion,
    assemble_exponent_split,
    degree_lower_bound_x0,
    degree_lower_bound_x1,
    divisibility_requirement,
)

__all__ = [
    "AraiConfig", "BoundCertificate", "DivisibilityRequirement", "ExponentSplit", "FiniteSupportVerdict",
    "LogBound", "ReplayReport", "SCHEMA_VERSION", "TraceStep", "admissible_large_torsion",
    "assemble_exponent_split", "certificate_from_json", "certificate_to_json", "degree_lower_bound_x0",
    "degree_lower_bound_x1", "divisibility_requirement", "evaluate_bound", "finite_support_bound",
    "load_arai", "replay_trace", "synthesize_certificate", "toy_certificate", "verify_certificate",
]
