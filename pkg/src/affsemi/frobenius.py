"""Frobenius vectors, conductor sets and Diophantine feasibility.

For a generator system satisfying both chain conditions, the Frobenius
vector is

    g = sum over extras of (index - 1) * generator  -  sum of leading
        generators.

It is never in the semigroup, while every group element beyond it (inside
the open cone of the leading generators) is.  When the generators span all
of Z^e the conductor set ``{g + w}`` translates the minimal integral
vectors w of the open cone, and crossing any conductor point certifies
membership outright.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, replace
from typing import Optional, Sequence

from .errors import ConditionsUnmetError, NotFullLatticeError, SearchBudgetExceededError
from .exactlinalg import (
    Vector,
    as_int,
    as_vector,
    cramer_numerators,
    determinant,
    gcd_maximal_minors,
    lattice_basis,
    solve_lower_triangular,
)
from .lattice import (
    GeneratorSystem,
    LatticeChain,
    add,
    build_chain,
    scale,
    sub,
)
from .semigroup import (
    ConditionReport,
    membership_bruteforce,
    membership_fast,
    validate_conditions,
)

SOLVABLE_BY_CONE = "solvable_by_cone"
SOLVABLE_WITH_WITNESS = "solvable_with_witness"
LATTICE_INFEASIBLE = "lattice_infeasible"
NO_SOLUTION = "no_solution"
CONDITIONS_UNMET = "conditions_unmet"

#: Default node budget for the bounded search in diophantine_solve.
DEFAULT_SEARCH_BUDGET = 10**7

#: Largest fundamental-parallelepiped point count that conductor-set
#: enumeration will attempt (dimension >= 2 only; dimension 1 is closed-form).
CONDUCTOR_ENUMERATION_LIMIT = 2_000_000

#: Indices beyond this skip the defensive membership re-check of the
#: closed-form vector (the re-check enumerates residues level by level).
RECHECK_INDEX_LIMIT = 10**6


@dataclass(frozen=True)
class FrobeniusReport:
    """Frobenius vector together with how it was obtained.

    ``vector`` may have negative coordinates; it is a point of Z^e, not N^e.
    ``conductor`` is present exactly when the generators span all of Z^e.
    When ``threshold_only`` is set the vector came from the maximal
    well-behaved subset of the generators and is only an upper threshold:
    everything in the group beyond it is in the semigroup, but smaller
    non-members may exist.  ``used_subset`` then lists the 1-based positions
    of the extra generators that were kept.
    """

    vector: Vector
    conditions: ConditionReport
    conductor: Optional[tuple[Vector, ...]]
    threshold_only: bool = False
    used_subset: Optional[tuple[int, ...]] = None
    vector_in_group: bool = True
    vector_in_semigroup: bool = False


@dataclass(frozen=True)
class DiophantineAnswer:
    """Outcome of a nonnegative integer solve of  generators . X = target."""

    status: str
    witness: Optional[Vector] = None


def frobenius_formula(system: GeneratorSystem, chain: LatticeChain) -> Vector:
    """Evaluate the closed-form vector, valid or not."""
    total = (0,) * system.ambient_dim
    for k, extra in enumerate(system.extras()):
        total = add(total, scale(extra, chain.indices[k] - 1))
    for v in system.leading():
        total = sub(total, v)
    return total


def frobenius_vector(
    system: GeneratorSystem,
    chain: LatticeChain,
    conditions: Optional[ConditionReport] = None,
) -> FrobeniusReport:
    """Frobenius vector of the semigroup, requiring both chain conditions.

    The report also records the two defining facts (the vector is in the
    group but not in the semigroup, the latter re-checked through the
    standard representation) and, when the generators span all of Z^e, the
    conductor set.
    """
    report = conditions if conditions is not None else chain.conditions
    if report is None or not report.all_hold:
        raise ConditionsUnmetError(
            "frobenius_vector requires both chain conditions", report=report
        )
    g = frobenius_formula(system, chain)
    if max(chain.indices, default=1) <= RECHECK_INDEX_LIMIT:
        # Defensive re-check; residue enumeration rules it out for
        # astronomical indices, where the closed form stands on its own.
        membership = membership_fast(system, chain, g, report)
        if not membership.in_group or membership.in_semigroup:
            raise AssertionError(
                "the Frobenius vector must be a group element outside the "
                "semigroup"
            )
    conductor = None
    if chain.minor_gcds[-1] == 1 and (
        system.ambient_dim == 1
        or _parallelepiped_size(system) <= CONDUCTOR_ENUMERATION_LIMIT
    ):
        conductor = conductor_set(system, chain, g)
    return FrobeniusReport(vector=g, conditions=report, conductor=conductor)


def frobenius_subset(
    system: GeneratorSystem, search_budget: Optional[int] = None
) -> FrobeniusReport:
    """Frobenius threshold from the maximal strictly-descending subset.

    Extra generators already inside the group of their predecessors are
    dropped; the closed form applied to the survivors gives a vector beyond
    which every group element is in the (full) semigroup.  The result is
    flagged as threshold-only when anything was dropped, since the true
    Frobenius vector of the full system may be smaller.
    """
    e = system.ambient_dim
    kept: list[int] = []
    current = list(system.leading())
    for k, extra in enumerate(system.extras(), start=1):
        basis = lattice_basis(current)
        if solve_lower_triangular(basis, extra) is None:
            kept.append(k)
            current.append(extra)
    subsystem = GeneratorSystem(e, tuple(current))
    chain = build_chain(subsystem)
    report = validate_conditions(subsystem, chain, search_budget)
    if not report.all_hold:
        raise ConditionsUnmetError(
            "the filtered subset still fails the scaled-membership condition",
            report=report,
        )
    base = frobenius_vector(subsystem, chain, report)
    if len(kept) == system.extra_count:
        return base
    return replace(base, threshold_only=True, used_subset=tuple(kept))


def beyond_frobenius(
    system: GeneratorSystem, g: Sequence[int], vector: Sequence[int]
) -> bool:
    """Whether ``vector`` lies in g + (open cone of the leading generators).

    Exact rational sign tests: the difference must have strictly positive
    coefficients over the leading generators.  Points on proper faces of the
    cone (and g itself) are excluded; the membership guarantee does not
    cover them.
    """
    difference = sub(as_vector(vector), as_vector(g))
    if not any(difference):
        return False
    leading = system.leading_matrix()
    det = determinant(leading)
    return all(n * det > 0 for n in cramer_numerators(leading, difference))


def in_closed_cone(system: GeneratorSystem, vector: Sequence[int]) -> bool:
    """Whether ``vector`` lies in the closed cone of the leading generators."""
    leading = system.leading_matrix()
    det = determinant(leading)
    return all(n * det >= 0 for n in cramer_numerators(leading, vector))


def _parallelepiped_size(system: GeneratorSystem) -> int:
    """Points of the bounding box of the fundamental parallelepiped."""
    e = system.ambient_dim
    return math.prod(
        sum(v[j] for v in system.leading()) + 1 for j in range(e)
    )


def minimal_cone_points(system: GeneratorSystem) -> tuple[Vector, ...]:
    """Minimal integral vectors of the open cone of the leading generators.

    Minimality is with respect to u' <= u iff u - u' is in the closed cone.
    Every minimal point lies in the half-open fundamental parallelepiped
    {sum a_i v_i : 0 < a_i <= 1}: an interior integral point with some
    coefficient above 1 still lies in the open cone after subtracting that
    generator, so it dominates another integral point.  Conversely any
    dominator of a parallelepiped point is itself one, so filtering the
    parallelepiped's integral points for pairwise minimality yields exactly
    the global minimal set.
    """
    e = system.ambient_dim
    if e == 1:
        # The parallelepiped is (0, v_1] and 1 divides into everything.
        return ((1,),)
    if _parallelepiped_size(system) > CONDUCTOR_ENUMERATION_LIMIT:
        raise ValueError(
            "fundamental parallelepiped too large to enumerate "
            f"({_parallelepiped_size(system)} box points)"
        )
    leading = system.leading_matrix()
    det = determinant(leading)
    sign = 1 if det > 0 else -1
    bound = abs(det)
    upper = [sum(v[j] for v in system.leading()) for j in range(e)]
    candidates = []
    for point in itertools.product(*(range(u + 1) for u in upper)):
        nums = cramer_numerators(leading, point)
        if all(0 < n * sign <= bound for n in nums):
            candidates.append(point)
    minimal = []
    for u in candidates:
        dominated = False
        for w in candidates:
            if w != u and in_closed_cone(system, sub(u, w)):
                dominated = True
                break
        if not dominated:
            minimal.append(u)
    return tuple(sorted(minimal))


def conductor_set(
    system: GeneratorSystem, chain: LatticeChain, g: Sequence[int]
) -> tuple[Vector, ...]:
    """The set {g + w : w minimal integral vector of the open cone}.

    Only defined when the generators span all of Z^e: every lattice point of
    the open cone then sits above some conductor point, and everything above
    a conductor point is in the semigroup.
    """
    if chain.minor_gcds[-1] != 1:
        raise NotFullLatticeError(
            "the conductor set requires the generators to span all of Z^e "
            f"(covolume is {chain.minor_gcds[-1]})"
        )
    g = as_vector(g)
    return tuple(sorted(add(g, w) for w in minimal_cone_points(system)))


def sylvester_number(v1: int, v2: int) -> int:
    """Largest integer not representable over two coprime generators:
    (v1 - 1) * (v2 - 1) - 1."""
    v1, v2 = as_int(v1), as_int(v2)
    if v1 < 2 or v2 < 2:
        raise ValueError("both generators must be at least 2")
    if math.gcd(v1, v2) != 1:
        raise ValueError(f"generators must be coprime, gcd is {math.gcd(v1, v2)}")
    return (v1 - 1) * (v2 - 1) - 1


def gaps(system: GeneratorSystem, chain: LatticeChain) -> tuple[int, ...]:
    """All positive integers missing from a numerical semigroup (dim 1).

    When both chain conditions hold the closed form bounds the sieve (the
    conductor is the Frobenius number plus one); otherwise the sieve extends
    itself until a run of min(generators) consecutive representable numbers
    proves that no further gap exists.
    """
    if system.ambient_dim != 1:
        raise ValueError("gaps are only defined for subsemigroups of N")
    if chain.minor_gcds[-1] != 1:
        raise ValueError(
            f"gap set is infinite: gcd of the generators is {chain.minor_gcds[-1]}"
        )
    values = [v[0] for v in system.generators]
    if chain.conditions is not None and chain.conditions.all_hold:
        bound = frobenius_formula(system, chain)[0] + 1
        if bound <= 0:
            return ()
        table = _reachable_table(values, bound - 1)
        return tuple(n for n in range(1, bound) if not table[n])
    return tuple(_sieve_gaps(values))


def _reachable_table(values: Sequence[int], limit: int) -> bytearray:
    table = bytearray(limit + 1)
    table[0] = 1
    for n in range(1, limit + 1):
        for v in values:
            if v <= n and table[n - v]:
                table[n] = 1
                break
    return table


def _sieve_gaps(values: Sequence[int]) -> list[int]:
    """Gap list via a self-extending sieve with run detection."""
    smallest = min(values)
    if smallest == 1:
        return []
    limit = max(values) * smallest + 1
    while True:
        table = _reachable_table(values, limit)
        run = 0
        for n in range(limit + 1):
            run = run + 1 if table[n] else 0
            if run == smallest:
                first_safe = n - smallest + 1
                return [m for m in range(1, first_safe) if not table[m]]
        limit *= 2


def diophantine_solve(
    system: GeneratorSystem,
    target: Sequence[int],
    budget: int = DEFAULT_SEARCH_BUDGET,
) -> DiophantineAnswer:
    """Decide generators . X = target over nonnegative integers.

    Classification: targets outside the group are infeasible outright; when
    both chain conditions hold and the target lies beyond the Frobenius
    vector inside the open cone, solvability is certified by the cone
    position and the standard representation supplies the witness.
    Otherwise a bounded search runs; under the conditions an exceeded budget
    still resolves exactly through the representation's sign criterion,
    while without them it is reported as undecided.
    """
    goal = as_vector(target)
    if any(x < 0 for x in goal):
        raise ValueError("target must have nonnegative coordinates")
    chain = build_chain(system)
    conditions = validate_conditions(system, chain, budget)
    extended = chain.bases[-1].with_column(goal)
    if gcd_maximal_minors(extended) != chain.minor_gcds[-1]:
        return DiophantineAnswer(LATTICE_INFEASIBLE)
    if conditions.all_hold:
        g = frobenius_formula(system, chain)
        if beyond_frobenius(system, g, goal):
            result = membership_fast(system, chain, goal, conditions)
            if not result.in_semigroup:
                raise AssertionError("cone position must certify membership")
            return DiophantineAnswer(SOLVABLE_BY_CONE, result.representation.coefficients)
        try:
            witness = membership_bruteforce(system.generators, goal, budget)
        except SearchBudgetExceededError:
            result = membership_fast(system, chain, goal, conditions)
            if result.in_semigroup:
                return DiophantineAnswer(
                    SOLVABLE_WITH_WITNESS, result.representation.coefficients
                )
            return DiophantineAnswer(NO_SOLUTION)
        if witness is not None:
            return DiophantineAnswer(SOLVABLE_WITH_WITNESS, witness)
        return DiophantineAnswer(NO_SOLUTION)
    try:
        witness = membership_bruteforce(system.generators, goal, budget)
    except SearchBudgetExceededError:
        return DiophantineAnswer(CONDITIONS_UNMET)
    if witness is not None:
        return DiophantineAnswer(SOLVABLE_WITH_WITNESS, witness)
    return DiophantineAnswer(NO_SOLUTION)
