"""symsos: exact rational sum-of-squares certificates for differences of
term-normalized symmetric polynomials on the nonnegative orthant."""

from .polyring import Rational, SparsePoly
from .symfunc import (
    BasisKind,
    Dominance,
    Partition,
    dominance_compare,
    eval_at_ones,
    expand,
    normalized,
    normalized_difference,
    partitions_of,
)
from .grammodel import (
    EntryOrbit,
    GramModel,
    InfeasibleModelError,
    MonomialBasis,
    build_basis,
    build_model,
    default_sign_zeros,
    kernel_vectors_from_zeros,
    symmetry_orbits,
)
from .symmat import SymMatrix
from .sdpsolve import NumericSolution, SolveStatus, SolverConfig, min_eigenvalue_deflated, solve
from .rationalize import RoundingConfig, RoundingError, best_rational, round_solution
from .certify import (
    LdlDecomposition,
    NotPsdWitness,
    SosCertificate,
    VerifyReport,
    certificate_from_squares,
    check_gram_matrix,
    extract_certificate,
    gram_to_poly,
    ldl_psd,
    load_certificate,
    save_certificate,
    verify_certificate,
)
from .pipeline import CertificationOutcome, PipelineStatus, certify_difference
from .posetgen import PosetEdge, emit_dot, sweep

__version__ = "0.1.0"
