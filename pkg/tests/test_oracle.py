import itertools
import random

import numpy as np
import pytest

from affsemi import (
    BoxSpec,
    NotFullLatticeError,
    enumerate_semigroup,
    fast_membership_grid,
    frobenius_number_dp,
    frobenius_vector,
    membership_bruteforce,
    membership_fast,
    numerical_gaps_dp,
    random_conditioned_system,
    reachable_grid,
    verify_conductor,
    verify_theorem1,
)
from affsemi.oracle import _reachable_set_sparse
from tests.conftest import analyzed, make_system


class TestEnumerate:
    def test_numerical_box(self, numerical_example):
        system, _, _ = numerical_example
        got = enumerate_semigroup(system, BoxSpec.origin_to((12,)))
        assert got == {(0,), (4,), (6,), (7,), (8,), (10,), (11,), (12,)}

    def test_window_above_origin(self):
        system = make_system([(7,)])
        assert enumerate_semigroup(system, BoxSpec((1,), (5,))) == set()

    def test_unimodular_contains_generator_sums(self, unimodular_example):
        system, _, _ = unimodular_example
        got = enumerate_semigroup(system, BoxSpec.origin_to((4, 4)))
        assert (2, 4) in got  # v1 + v3
        assert (4, 3) in got  # v2 + v3
        assert (0, 0) in got
        assert (2, 1) not in got

    def test_monotone_under_box_growth(self, numerical_example):
        system, _, _ = numerical_example
        small = enumerate_semigroup(system, BoxSpec.origin_to((15,)))
        large = enumerate_semigroup(system, BoxSpec.origin_to((30,)))
        assert small <= large

    def test_agrees_with_bruteforce_pointwise(self):
        for vectors in ([(4,), (6,), (7,)], [(2, 1), (1, 2), (2, 2)]):
            system, _, _ = analyzed(vectors)
            e = system.ambient_dim
            top = 18 if e == 1 else 9
            box = BoxSpec.origin_to((top,) * e)
            enumerated = enumerate_semigroup(system, box)
            for point in itertools.product(range(top + 1), repeat=e):
                brute = membership_bruteforce(system.generators, point)
                assert (point in enumerated) == (brute is not None), point

    def test_sparse_path_matches_dense_logic(self):
        system = make_system(
            [(2, 0, 0, 0), (0, 2, 0, 0), (0, 0, 2, 0), (0, 0, 0, 2), (1, 1, 1, 1)]
        )
        got = enumerate_semigroup(system, BoxSpec.origin_to((3, 3, 3, 3)))
        for point in itertools.product(range(4), repeat=4):
            brute = membership_bruteforce(system.generators, point)
            assert (point in got) == (brute is not None), point

    def test_sparse_helper_matches_grid(self, unimodular_example):
        system, _, _ = unimodular_example
        upper = (6, 6)
        grid = reachable_grid(system, upper)
        sparse = _reachable_set_sparse(system, upper)
        dense = {
            tuple(int(x) for x in row) for row in np.argwhere(grid)
        }
        assert dense == sparse


class TestNumericalSieve:
    def test_degenerate_system(self):
        assert frobenius_number_dp([4, 6, 7, 9]) == 5

    def test_smallest(self):
        assert frobenius_number_dp([2, 3]) == 1

    def test_no_scaled_membership_example(self):
        # Only reachable values below 26: 8,10,11,16,18..22,24; so 25 is the
        # largest gap (26..33 are eight consecutive members).
        assert frobenius_number_dp([8, 10, 11]) == 25
        assert 27 == 8 + 8 + 11

    def test_non_coprime_rejected(self):
        with pytest.raises(ValueError):
            frobenius_number_dp([4, 6])

    def test_gap_list_matches_enumeration(self):
        gaps = numerical_gaps_dp([4, 6, 7])
        assert gaps == (1, 2, 3, 5, 9)

    def test_sylvester_cross_check(self):
        import math

        rng = random.Random(13)
        for _ in range(40):
            a, b = rng.randint(2, 60), rng.randint(2, 60)
            if math.gcd(a, b) != 1:
                continue
            assert frobenius_number_dp([a, b]) == (a - 1) * (b - 1) - 1


class TestVerifyTheorem:
    def test_numerical_holds(self, numerical_example):
        system, chain, report = numerical_example
        g = frobenius_vector(system, chain, report).vector
        check = verify_theorem1(system, chain, g, margin=3)
        assert check.holds and check.counterexample is None

    def test_unimodular_holds(self, unimodular_example):
        system, chain, report = unimodular_example
        g = frobenius_vector(system, chain, report).vector
        assert verify_theorem1(system, chain, g, margin=3).holds

    def test_axes_holds(self, axes_example):
        system, chain, report = axes_example
        g = frobenius_vector(system, chain, report).vector
        assert verify_theorem1(system, chain, g, margin=3).holds

    def test_every_group_point_beyond_is_reachable_by_search(
        self, unimodular_example
    ):
        from affsemi import beyond_frobenius

        # Literal witness-search leg of the guarantee on a small box.
        system, chain, report = unimodular_example
        g = frobenius_vector(system, chain, report).vector
        for point in itertools.product(range(9), repeat=2):
            if beyond_frobenius(system, g, point) and chain.contains(point, 1):
                assert membership_bruteforce(system.generators, point), point

    def test_invalid_formula_value_is_flagged(self):
        # Without the scaled-membership condition the closed form gives 33,
        # which is 3*11 and therefore inside the semigroup: the first claim
        # already fails.
        system, chain, _ = analyzed([(8,), (10,), (11,)])
        check = verify_theorem1(system, chain, (33,), margin=3)
        assert not check.holds
        assert check.counterexample == (33,)

    def test_scalar_and_vector_paths_agree(self, unimodular_example):
        system, chain, report = unimodular_example
        g = frobenius_vector(system, chain, report).vector
        fast = verify_theorem1(system, chain, g, margin=2)
        # Degrade to the scalar sweep by pretending int64 is unsafe.
        import affsemi.oracle as oracle_module

        original = oracle_module._int64_safe
        oracle_module._int64_safe = lambda *a: False
        try:
            slow = verify_theorem1(system, chain, g, margin=2)
        finally:
            oracle_module._int64_safe = original
        assert fast == slow


class TestVerifyConductor:
    def test_unimodular_cover(self, unimodular_example):
        system, chain, report = unimodular_example
        conductor = frobenius_vector(system, chain, report).conductor
        assert conductor == ((3, 2), (3, 3))
        assert verify_conductor(system, chain, conductor, margin=4)

    def test_skew_cover(self, skew_example):
        system, chain, report = skew_example
        conductor = frobenius_vector(system, chain, report).conductor
        assert conductor == ((40, 54),)
        assert verify_conductor(system, chain, conductor, margin=3)

    def test_numerical_cover(self, numerical_example):
        system, chain, report = numerical_example
        conductor = frobenius_vector(system, chain, report).conductor
        assert conductor == ((10,),)
        assert verify_conductor(system, chain, conductor, margin=3)

    def test_wrong_conductor_detected(self, unimodular_example):
        system, chain, _ = unimodular_example
        # (3,3) alone misses lattice points only covered through (3,2).
        assert not verify_conductor(system, chain, [(3, 3)], margin=3)

    def test_requires_full_lattice(self, axes_example):
        system, chain, _ = axes_example
        with pytest.raises(NotFullLatticeError):
            verify_conductor(system, chain, [(11, 7)], margin=2)


class TestFastMembershipGrid:
    def test_equals_scalar_on_random_systems(self):
        rng = random.Random(51)
        for _ in range(6):
            system, chain, report = random_conditioned_system(
                rng, rng.choice([1, 2]), rng.choice([1, 2]), max_entry=7
            )
            e = system.ambient_dim
            upper = (17,) * e
            grid = fast_membership_grid(system, chain, upper)
            for _ in range(60):
                point = tuple(rng.randint(0, 17) for _ in range(e))
                scalar = membership_fast(system, chain, point).in_semigroup
                assert bool(grid[point]) == scalar, point

    def test_equals_reachability_grid(self):
        rng = random.Random(52)
        for _ in range(6):
            system, chain, report = random_conditioned_system(
                rng, rng.choice([1, 2, 3]), rng.choice([1, 2]), max_entry=6
            )
            e = system.ambient_dim
            upper = tuple(
                3 * sum(v[j] for v in system.generators) for j in range(e)
            )
            fast = fast_membership_grid(system, chain, upper)
            dp = reachable_grid(system, upper)
            assert np.array_equal(fast, dp)


class TestRandomSystems:
    def test_generator_produces_valid_instances(self):
        rng = random.Random(77)
        for dim, extras in [(1, 1), (1, 2), (2, 1), (2, 2), (3, 1), (3, 2)]:
            system, chain, report = random_conditioned_system(rng, dim, extras)
            assert system.ambient_dim == dim
            assert system.extra_count == extras
            assert report.all_hold
            assert all(
                chain.minor_gcds[k] < chain.minor_gcds[k - 1]
                for k in range(1, len(chain.minor_gcds))
            )
            assert all(
                all(0 <= x <= 20 for x in v) for v in system.generators
            )
