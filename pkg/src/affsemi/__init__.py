"""Exact Frobenius vectors, conductors and membership certificates for
affine subsemigroups of N^e, plus the semigroups of plane-branch and
quasi-ordinary singularities derived from characteristic exponents."""

from .errors import (
    ConditionsUnmetError,
    DimensionError,
    InvalidExponentsError,
    InvalidGeneratorsError,
    NotFullLatticeError,
    RankDeficientError,
    SearchBudgetExceededError,
    SingularMatrixError,
)
from .exactlinalg import (
    IntMatrix,
    adjugate,
    cramer_numerators,
    determinant,
    gcd_maximal_minors,
    lattice_basis,
    solve_square_integer,
)
from .frobenius import (
    CONDITIONS_UNMET,
    LATTICE_INFEASIBLE,
    NO_SOLUTION,
    SOLVABLE_BY_CONE,
    SOLVABLE_WITH_WITNESS,
    DiophantineAnswer,
    FrobeniusReport,
    beyond_frobenius,
    conductor_set,
    diophantine_solve,
    frobenius_subset,
    frobenius_vector,
    gaps,
    minimal_cone_points,
    sylvester_number,
)
from .lattice import (
    GeneratorSystem,
    LatticeChain,
    StandardRepresentation,
    build_chain,
    group_membership,
    multiple_order,
    standard_representation,
)
from .oracle import (
    BoxSpec,
    TheoremCheck,
    enumerate_semigroup,
    fast_membership_grid,
    frobenius_number_dp,
    numerical_gaps_dp,
    random_conditioned_system,
    reachable_grid,
    verify_conductor,
    verify_theorem1,
)
from .semigroup import (
    ConditionReport,
    MembershipResult,
    ScaledMembershipCheck,
    membership_bruteforce,
    membership_fast,
    validate_conditions,
)
from .singularities import (
    CurveExponents,
    CurveSemigroupData,
    QOExponents,
    QOSemigroupData,
    curve_semigroup,
    qo_semigroup,
    zariski_validate,
)

__version__ = "0.1.0"

__all__ = [
    "BoxSpec",
    "CONDITIONS_UNMET",
    "ConditionReport",
    "ConditionsUnmetError",
    "CurveExponents",
    "CurveSemigroupData",
    "DimensionError",
    "DiophantineAnswer",
    "FrobeniusReport",
    "GeneratorSystem",
    "IntMatrix",
    "InvalidExponentsError",
    "InvalidGeneratorsError",
    "LATTICE_INFEASIBLE",
    "LatticeChain",
    "MembershipResult",
    "NO_SOLUTION",
    "NotFullLatticeError",
    "QOExponents",
    "QOSemigroupData",
    "RankDeficientError",
    "SOLVABLE_BY_CONE",
    "SOLVABLE_WITH_WITNESS",
    "ScaledMembershipCheck",
    "SearchBudgetExceededError",
    "SingularMatrixError",
    "StandardRepresentation",
    "TheoremCheck",
    "adjugate",
    "beyond_frobenius",
    "build_chain",
    "conductor_set",
    "cramer_numerators",
    "curve_semigroup",
    "determinant",
    "diophantine_solve",
    "enumerate_semigroup",
    "fast_membership_grid",
    "frobenius_number_dp",
    "frobenius_subset",
    "frobenius_vector",
    "gaps",
    "gcd_maximal_minors",
    "group_membership",
    "lattice_basis",
    "membership_bruteforce",
    "membership_fast",
    "minimal_cone_points",
    "multiple_order",
    "numerical_gaps_dp",
    "qo_semigroup",
    "random_conditioned_system",
    "reachable_grid",
    "solve_square_integer",
    "standard_representation",
    "sylvester_number",
    "validate_conditions",
    "verify_conductor",
    "verify_theorem1",
    "zariski_validate",
]
