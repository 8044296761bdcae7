import math

import pytest

from affsemi import CurveExponents, GeneratorSystem, build_chain, validate_conditions


def make_system(vectors):
    return GeneratorSystem.from_vectors([tuple(v) for v in vectors])


def random_curve_exponents(rng, max_steps=3, factor_pool=(2, 2, 2, 3, 3, 5)):
    """Build valid exponent data constructively from a factored gcd chain."""
    steps = rng.randint(1, max_steps)
    factors = [rng.choice(factor_pool) for _ in range(steps)]
    # gcd chain d_1 > d_2 > ... > d_{h+1} = 1 with d_k = product of the
    # factors from position k on; the multiplicity is d_1.
    d = [math.prod(factors[k:]) for k in range(steps + 1)]
    n = d[0]
    exponents = []
    previous = n
    for k in range(1, steps + 1):
        # The k-th exponent must be a multiple of d[k] coprime to the factor
        # being removed, strictly above its predecessor.
        while True:
            t = rng.randint(previous // d[k] + 1, previous // d[k] + 6)
            if math.gcd(t, factors[k - 1]) == 1:
                break
        exponents.append(t * d[k])
        previous = exponents[-1]
    return CurveExponents(n, tuple(exponents))


def analyzed(vectors):
    """System, chain and condition report, ready to use."""
    system = make_system(vectors)
    chain = build_chain(system)
    report = validate_conditions(system, chain)
    return system, chain, report


@pytest.fixture
def numerical_example():
    """One-dimensional fixture: generators 4, 6, 7."""
    return analyzed([(4,), (6,), (7,)])


@pytest.fixture
def axes_example():
    """Planar fixture on scaled axes: (8,0), (0,8), (2,2), (12,8)."""
    return analyzed([(8, 0), (0, 8), (2, 2), (12, 8)])


@pytest.fixture
def skew_example():
    """Planar fixture with a skew cone: (4,6), (6,3), (8,10), (3,4)."""
    return analyzed([(4, 6), (6, 3), (8, 10), (3, 4)])


@pytest.fixture
def unimodular_example():
    """Planar fixture spanning all of Z^2: (1,3), (3,2), (1,1)."""
    return analyzed([(1, 3), (3, 2), (1, 1)])
