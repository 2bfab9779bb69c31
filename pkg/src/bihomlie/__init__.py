"""Exact computations with Bihom-Lie and 3-Bihom-Lie superalgebras over Q."""

from .binary import (BihomLieSuper2, lie_superalgebra, osp12, osp12_family, osp_alpha, verify2,
                     yau_twist2)
from .errors import (BihomError, CocycleFails, DimensionMismatch, FailedPrecondition,
                     IntertwiningFails, MapsDoNotCommute, NoDualBasis, NotAHomomorphism,
                     NotFixedPoint, OddAssociativeFactor, ParityError, ParityObstruction,
                     ParseError, ReportedMismatch, SingularMap, SymmetryConditionFails,
                     UnknownCommand, ValidationError, ZeroParameter)
from .graded import (Bracket, EvenMap, GradedSpace, LinearMap, Subspace, parse_scalar,
                     render_scalar, scalar)
from .io import AlgebraFile, load, load_bundled, parse_algebra, render
from .quadratic import (QuadraticAlgebra, SuperForm, dual_ideal, isometry_check,
                        isotropic_complement, isotropic_ideal_check, lemma_theta_condition,
                        qg_form, reconstruct_tstar, series_lift_check, tstar_bundle,
                        tstar_extension, verify_quadratic)
from .report import Check, VerificationReport
from .representation import (Cocycle, Representation, adjoint_rep, coadjoint_rep,
                             coboundary_theta_f, dual_conditions, dual_rep, semidirect,
                             sigma_iso, t_theta_extension, verify_cocycle, verify_rep,
                             zero_rep)
from .ternary import (DerivationRequest, ThreeBihomLieSuper, TotAssoc3, ab_center, center,
                      derivation_space, direct_sum, graph, graph_is_subalgebra,
                      inner_derivation, is_derivation, is_ideal, is_morphism, is_nilpotent,
                      is_solvable, is_subalgebra, supercommutator, tensor_assoc, three_lie,
                      twist_compose, twist_from_3lie, twist_power_k, verify3,
                      verify_partial_assoc, verify_tot_assoc)

CocycleTensor = Cocycle

__version__ = "0.1.0"

__all__ = [
    "AlgebraFile", "BihomError", "BihomLieSuper2", "Bracket", "Check", "Cocycle",
    "CocycleFails", "CocycleTensor", "DerivationRequest", "DimensionMismatch", "EvenMap",
    "FailedPrecondition", "GradedSpace", "IntertwiningFails", "LinearMap", "MapsDoNotCommute",
    "NoDualBasis", "NotAHomomorphism", "NotFixedPoint", "OddAssociativeFactor", "ParityError",
    "ParityObstruction", "ParseError", "QuadraticAlgebra", "ReportedMismatch",
    "Representation", "SingularMap", "Subspace", "SuperForm", "SymmetryConditionFails",
    "ThreeBihomLieSuper", "TotAssoc3", "UnknownCommand", "ValidationError",
    "VerificationReport", "ZeroParameter", "ab_center", "adjoint_rep", "center",
    "coadjoint_rep", "coboundary_theta_f", "derivation_space", "direct_sum", "dual_conditions",
    "dual_ideal", "dual_rep", "graph", "graph_is_subalgebra", "inner_derivation",
    "is_derivation", "is_ideal", "is_morphism", "is_nilpotent", "is_solvable", "is_subalgebra",
    "isometry_check", "isotropic_complement", "isotropic_ideal_check", "lemma_theta_condition",
    "lie_superalgebra", "load", "load_bundled", "osp12", "osp12_family", "osp_alpha",
    "parse_algebra", "parse_scalar", "qg_form", "reconstruct_tstar", "render", "render_scalar",
    "scalar", "semidirect", "series_lift_check", "sigma_iso", "supercommutator",
    "t_theta_extension", "tensor_assoc", "three_lie", "tstar_bundle", "tstar_extension",
    "twist_compose", "twist_from_3lie", "twist_power_k", "verify2", "verify3",
    "verify_cocycle", "verify_partial_assoc", "verify_quadratic", "verify_rep",
    "verify_tot_assoc", "yau_twist2", "zero_rep",
]
