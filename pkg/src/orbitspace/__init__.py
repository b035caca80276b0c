"""Exact semi-algebraic descriptions of real orbit spaces of finite matrix groups."""
from .descriptions import (
    Description,
    NonRealValueError,
    PreconditionError,
    SymPolyMatrix,
    abelian_inequalities,
    cyclic_inequalities,
    descent_basis,
    direct_product_combine,
    gram_matrix_B,
    invariant_generators,
    order2_inequality,
    predicted_inequality_count,
    procesi_schwarz_matrix,
    single_inequality_k1,
)
from .estimators import HermiteClassifier, MatrixDescriber, OrbitOracle, OrbitSpaceDescriber
from .exactalg import GaussianRational, ParseError, Polynomial, RatMatrix, parse_gaussian, parse_polynomial, psd_check
from .groups import (
    FiniteGroup,
    GroupError,
    Subgroup,
    abelian_cyclic_factorization,
    broad_subgroup,
    elementary_abelian_2_rank,
    group_closure,
    load_group,
    sylow2_chain,
)
from .hermite import BoundaryWarning, hermite_matrix, real_root_count, s4_generic_membership
from .oracle import (
    SamplePoint,
    VerificationReport,
    orbit_contains_real_point,
    sample_conjugation_points,
    sample_points,
    verify_description,
    verify_matrix_description,
)
from .reynolds import CertificateError, negative_certificate, reynolds

__version__ = "0.1.0"
