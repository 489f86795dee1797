"""Exact group enumeration, orbit degrees and bound certificates for torsion of
elliptic curves geometrically isogenous to rational curves."""

__version__ = "0.1.0"

from torsionbound._kernels import BACKEND
from torsionbound.arith import (
    FactoredInt,
    PhiBoundConstant,
    euler_phi,
    factorize,
    least_primitive_root,
    phi_lower_constant,
    prime_pi,
    squarefull_split,
    threshold_split,
)
from torsionbound.bounds import (
    BoundCertificate,
    admissible_large_torsion,
    divisibility_requirement,
    evaluate_bound,
    synthesize_certificate,
    verify_certificate,
)
from torsionbound.gl2 import GroupKind, Mat2, MatrixGroup, contains_scalars, generate, gl2_order, standard_subgroup
from torsionbound.orbits import CyclicSubgroupLabel, OrbitReport, TorsionVector, orbit_partition, orbit_size

__all__ = [
    "BACKEND", "BoundCertificate", "CyclicSubgroupLabel", "FactoredInt", "GroupKind", "Mat2", "MatrixGroup", "OrbitReport",
    "PhiBoundConstant", "TorsionVector", "contains_scalars", "euler_phi", "factorize", "generate", "gl2_order",
    "least_primitive_root", "orbit_partition", "orbit_size", "phi_lower_constant", "prime_pi",
    "squarefull_split", "standard_subgroup", "threshold_split", "admissible_large_torsion",
    "divisibility_requirement", "evaluate_bound", "synthesize_certificate", "verify_certificate",
]
