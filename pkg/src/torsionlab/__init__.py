"""Exact Alexander polynomials, Mahler measures, operator determinants
and torsion homology of finite abelian covers, at desk scale."""

from .laurent import (
    CharacterPoint,
    DimensionMismatchError,
    LaurentMat,
    LaurentPoly,
    adjoint_matrix,
    canonical_unit_normal_form,
    cyclic_resultant,
    divides,
    div_exact,
    evaluate_at_character,
    gcd,
    is_zero_at_character,
    multiply,
    parse_poly,
    poly_to_string,
    specialize_along_vector,
)
from .lattice import (
    GpmSpec,
    InfiniteIndexError,
    Sublattice,
    UnsupportedRankError,
    alpha_min_norm,
    construct_gpm,
    cyclic_subgroup,
    dual_characters,
    next_primes,
    subgroup_from_generators,
)
from .alexmod import (
    ChainComplex,
    Presentation,
    alexander_polynomial,
    first_nonzero_alexander,
    presentation_rank,
    surface_gluing_presentation,
    validate_chain_complex,
)
from .mahler import (
    ColumnRankError,
    MahlerEstimate,
    SingularMatrixError,
    ZeroPolynomialError,
    best_mahler,
    fk_det_exact,
    fk_det_numeric,
    l2_torsion,
    l2_volume,
    mahler_multivariate,
    mahler_one_var,
)
from .covers import (
    CoverComputationError,
    CoverHomologyReport,
    CyclicSchedule,
    GpmSchedule,
    QuotientMatrix,
    SmithResult,
    betti_deviation_report,
    cover_homology,
    det_prime_via_characters,
    smith_normal_form,
    specialize_to_quotient,
    torsion_growth_sequence,
)
from .foxcalc import (
    FIXTURE_NAMES,
    FixtureRecord,
    GroupPresentation,
    alexander_matrix_from_presentation,
    builtin_fixture,
    fox_derivative,
    parse_presentation,
)

__version__ = "0.1.0"
