"""Simple vector bundles on projective space from exterior-algebra modules.

Construct bundles of prescribed rank and homological dimension as cokernels
of linear complexes attached to quotients of truncated free modules over the
exterior algebra, and verify every claimed property with exact linear
algebra: faithfulness by point scans, simplicity by endomorphism-space
dimension, rank by Euler characteristics, homological dimension by certified
cohomology vanishing.
"""

__version__ = "0.1.0"

from .fields import GF, QQ, FieldError, PrimeField, RationalField
from .matrix import (DenseMatrix, FieldMismatchError, MalformedSubspaceError,
                     ShapeError, Solution, Subspace, sum_intersection_dims)
from .extalg import basis_subsets, generator_action, left_mult_sign, vector_action
from .emod import (GradedEModule, ModuleInvariantError, chi, free_truncated,
                   hom_space_dim, quotient_top)
from .anchor import (AnchoringSearchError, AnchorProblem, AnchorVerdict,
                     SliceTensor, TensorContradictionError, annihilator,
                     anchoring_tensor, burnside_pair, commutant_dim,
                     general_position_range, is_anchoring, pair_solution_dim,
                     sample_anchoring, slices_from_subspace, tensor_to_subspace)
from .bgg import (FaithfulnessReport, LinearComplex, MatrixOfLinearForms,
                  PointBudgetError, bgg_complex, bundle_rank, evaluate_fiber,
                  exact_at_point, faithfulness_scan, projective_point_count)
from .sheafcoh import (CertificationError, CohomologyCalculator, CohomologyTable,
                       HdCertificate, certify_hd, cohomology_table, costrand_map,
                       euler_line, line_coh, monomials, strand_map)
from .pipeline import (BundleReport, ConstructionParams, ParameterError,
                       RetryBudgetError, VerificationPolicy, cas_script,
                       choose_parameters, construct, report_to_json,
                       report_to_json_str, verify, with_replaced_anchor)

__all__ = [
    "GF", "QQ", "FieldError", "PrimeField", "RationalField",
    "DenseMatrix", "FieldMismatchError", "MalformedSubspaceError", "ShapeError",
    "Solution", "Subspace", "sum_intersection_dims",
    "basis_subsets", "generator_action", "left_mult_sign", "vector_action",
    "GradedEModule", "ModuleInvariantError", "chi", "free_truncated",
    "hom_space_dim", "quotient_top",
    "AnchoringSearchError", "AnchorProblem", "AnchorVerdict", "SliceTensor",
    "TensorContradictionError", "annihilator", "anchoring_tensor",
    "burnside_pair", "commutant_dim", "general_position_range", "is_anchoring",
    "pair_solution_dim", "sample_anchoring", "slices_from_subspace",
    "tensor_to_subspace",
    "FaithfulnessReport", "LinearComplex", "MatrixOfLinearForms",
    "PointBudgetError", "bgg_complex", "bundle_rank", "evaluate_fiber",
    "exact_at_point", "faithfulness_scan", "projective_point_count",
    "CertificationError", "CohomologyCalculator", "CohomologyTable",
    "HdCertificate", "certify_hd", "cohomology_table", "costrand_map",
    "euler_line", "line_coh", "monomials", "strand_map",
    "BundleReport", "ConstructionParams", "ParameterError", "RetryBudgetError",
    "VerificationPolicy", "cas_script", "choose_parameters", "construct",
    "report_to_json", "report_to_json_str", "verify", "with_replaced_anchor",
]
