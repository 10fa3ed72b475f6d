import random

import pytest

from udl.gaussian import (
    UNITS,
    GaussInt,
    are_associates,
    factor_over,
    gmul,
    representations,
    two_squares_prime,
)

from oracles import gaussian_rational_mul, two_squares_set


def as_tuples(points):
    return {p.as_tuple() for p in points}


def test_gmul_examples():
    assert gmul(GaussInt(1, 2), GaussInt(2, 3)) == GaussInt(-4, 7)
    assert gmul(GaussInt(1, 2), GaussInt(1, -2)) == GaussInt(5, 0)


def test_norm_is_multiplicative():
    rng = random.Random(2024)
    for _ in range(500):
        u = GaussInt(rng.randint(-1000, 1000), rng.randint(-1000, 1000))
        v = GaussInt(rng.randint(-1000, 1000), rng.randint(-1000, 1000))
        assert (u * v).norm() == u.norm() * v.norm()


def test_product_matches_rational_oracle_both_branches():
    # Brahmagupta-Fibonacci: (a^2+b^2)(c^2+d^2) = (ac-bd)^2 + (ad+bc)^2
    # and, with the conjugate, = (ac+bd)^2 + (ad-bc)^2.
    rng = random.Random(99)
    for _ in range(200):
        u = GaussInt(rng.randint(-50, 50), rng.randint(-50, 50))
        v = GaussInt(rng.randint(-50, 50), rng.randint(-50, 50))
        w = u * v
        assert (w.a, w.b) == tuple(int(c) for c in gaussian_rational_mul(u.as_tuple(), v.as_tuple()))
        first = (u.a * v.a - u.b * v.b) ** 2 + (u.a * v.b + u.b * v.a) ** 2
        second = (u.a * v.a + u.b * v.b) ** 2 + (u.a * v.b - u.b * v.a) ** 2
        assert first == u.norm() * v.norm()
        assert second == (u * v.conj()).norm() == u.norm() * v.norm()


def test_two_squares_prime_examples():
    assert two_squares_prime(5) == (1, 2)
    assert two_squares_prime(13) == (2, 3)
    assert two_squares_prime(2) == (1, 1)
    with pytest.raises(ValueError):
        two_squares_prime(7)
    with pytest.raises(ValueError):
        two_squares_prime(21)  # not prime


def test_two_squares_prime_small_sweep():
    from oracles import trial_division_primes

    for p in trial_division_primes(3000):
        if p % 4 != 1:
            continue
        x, y = two_squares_prime(p)
        assert 0 < x < y
        assert x * x + y * y == p
        assert (x, y) in two_squares_set(p)


def test_two_squares_prime_descent_branch():
    # primes above the exhaustive-search crossover hit Hermite-Serret
    for p in (1_000_033, 1_000_037, 2_147_483_629):
        x, y = two_squares_prime(p)
        assert 0 < x < y and x * x + y * y == p


def test_representations_cardinalities():
    units = representations([])
    assert as_tuples(units) == {(1, 0), (-1, 0), (0, 1), (0, -1)}
    assert len(representations([5])) == 8
    assert len(representations([5, 13])) == 16


def test_representations_match_bruteforce():
    for primes, m in [([], 1), ([5], 5), ([13], 13), ([5, 13], 65), ([5, 13, 17], 1105)]:
        assert as_tuples(representations(primes)) == two_squares_set(m)


def test_representations_rejects_bad_input():
    with pytest.raises(ValueError):
        representations([5, 5])
    with pytest.raises(ValueError):
        representations([3])
    with pytest.raises(ValueError):
        representations([25])


def test_are_associates_examples():
    assert are_associates(GaussInt(1, 2), GaussInt(-2, 1))
    assert not are_associates(GaussInt(1, 2), GaussInt(1, -2))
    assert are_associates(GaussInt(0, 0), GaussInt(0, 0))


def test_representations_split_into_associate_classes():
    # every representation set is a disjoint union of size-4 unit orbits, and
    # distinct sign-choice orbits are never associate to each other
    for primes in [[5], [5, 13], [5, 13, 17]]:
        points = sorted(representations(primes))
        orbits = []
        remaining = set(points)
        while remaining:
            p = min(remaining)
            orbit = {u * p for u in UNITS}
            assert orbit <= remaining
            remaining -= orbit
            orbits.append(p)
        assert len(orbits) == len(points) // 4
        for i, p in enumerate(orbits):
            for q in orbits[i + 1 :]:
                assert not are_associates(p, q)


def test_factor_over_examples():
    got = factor_over(GaussInt(-4, 7), [GaussInt(1, 2), GaussInt(2, 3)])
    assert got is not None
    assert got.factors == (GaussInt(1, 2), GaussInt(2, 3))
    assert got.unit == GaussInt(1, 0)
    assert got.element() == GaussInt(-4, 7)

    # 5 = (1+2i)(1-2i) needs both split factors; one atom cannot cover it
    assert factor_over(GaussInt(5, 0), [GaussInt(1, 2)]) is None

    got = factor_over(GaussInt(1, 2), [GaussInt(1, 2)])
    assert got is not None and got.unit == GaussInt(1, 0) and got.factors == (GaussInt(1, 2),)


def test_factor_over_empty_atoms_and_units():
    got = factor_over(GaussInt(0, -1), [])
    assert got is not None and got.unit == GaussInt(0, -1) and got.factors == ()
    assert factor_over(GaussInt(1, 1), []) is None


def test_factor_over_rejects_non_prime_norm_atom():
    with pytest.raises(ValueError):
        factor_over(GaussInt(5, 0), [GaussInt(3, 0)])  # norm 9


def test_factor_over_roundtrip_random():
    rng = random.Random(5)
    atom_pool = [GaussInt(*two_squares_prime(p)) for p in (5, 13, 17, 29, 37)]
    for _ in range(100):
        t = rng.randint(0, 5)
        atoms = rng.sample(atom_pool, t)
        unit = rng.choice(UNITS)
        g = unit
        expect = []
        for atom in atoms:
            f = atom if rng.random() < 0.5 else atom.conj()
            expect.append(f)
            g = g * f
        got = factor_over(g, atoms)
        assert got is not None
        assert got.element() == g
        # distinct prime norms make the sign choice per atom unique
        assert got.factors == tuple(expect)
        assert got.unit == unit


def test_factor_over_norm_mismatch_is_failure_value():
    assert factor_over(GaussInt(6, 7), [GaussInt(1, 2)]) is None
