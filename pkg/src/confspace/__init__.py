"""Exact rational homology of unordered configuration spaces of manifolds."""

from .errors import (
    ConfspaceError,
    HypothesisError,
    InsufficientWindowError,
    ManifoldError,
    OddDimensionError,
    WindowTooLargeError,
)
from .graded_algebra import Generator, Monomial, SignedMonomial, enumerate_basis, koszul_sign, normalize_monomial
from .manifold import ManifoldData, builtin_catalog, catalog_names, dump_manifold, load_manifold, validate_manifold
from .ce_complex import (
    CEGeneratorSet,
    assemble_differential,
    build_generators,
    build_theta_slice,
    d2_check,
    pair_contraction,
)
from .linalg import SparseExactMatrix, exact_rank
from .homology import BettiTable, betti_numbers, compute_betti_table, stabilization_matrix
from .stability import (
    RangeReport,
    WitnessSet,
    compute_table,
    odd_dim_betti,
    verify_eventual_constancy,
    verify_improved_ranges,
    verify_optimality,
    verify_rw_range,
    witness_set,
)

__version__ = "0.1.0"
