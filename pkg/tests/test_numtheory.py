import math
import random

import pytest

from udl.numtheory import (
    APClass,
    PrimeTable,
    chebyshev,
    euler_phi,
    is_probable_prime,
    kth_prime_in_ap,
    primes_in_ap,
)

from oracles import trial_division_primes


def test_apclass_validation():
    APClass(4, 1)
    APClass(12, 7)
    with pytest.raises(ValueError):
        APClass(4, 2)  # gcd 2
    with pytest.raises(ValueError):
        APClass(4, 0)
    with pytest.raises(ValueError):
        APClass(4, 5)  # residue not reduced
    with pytest.raises(ValueError):
        APClass(1, 1)


def test_prime_table_against_trial_division():
    table = PrimeTable(10_000)
    assert table.primes == trial_division_primes(10_000)
    assert table.is_prime(9973)
    assert not table.is_prime(9999)
    assert table.primes_up_to(30) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    with pytest.raises(ValueError):
        table.is_prime(10_001)
    with pytest.raises(ValueError):
        PrimeTable(10**8 + 1)


def test_euler_phi_examples_and_bruteforce():
    assert euler_phi(1) == 1
    assert euler_phi(4) == 2
    assert euler_phi(12) == 4
    for d in range(1, 201):
        assert euler_phi(d) == sum(1 for i in range(1, d + 1) if math.gcd(i, d) == 1)
    with pytest.raises(ValueError):
        euler_phi(0)


def test_primes_in_ap_examples():
    assert primes_in_ap(30, APClass(4, 1)) == [5, 13, 17, 29]
    assert primes_in_ap(10, APClass(4, 3)) == [3, 7]
    assert primes_in_ap(2, APClass(4, 1)) == []


def test_primes_in_ap_matches_trial_division():
    base = trial_division_primes(2000)
    for d, a in [(4, 1), (4, 3), (3, 2), (12, 7), (2, 1)]:
        expect = [p for p in base if p % d == a]
        assert primes_in_ap(2000, APClass(d, a)) == expect


def test_chebyshev_pi_example():
    assert chebyshev("pi", 100, APClass(4, 1)) == 11


def test_chebyshev_theta_example():
    # Oracle value; the sum is log5 + log13 + log17 + log29.
    got = chebyshev("theta", 30, APClass(4, 1))
    assert got == pytest.approx(10.374896443938328, abs=1e-9)
    assert got == pytest.approx(sum(math.log(p) for p in (5, 13, 17, 29)), abs=1e-12)


def test_chebyshev_psi_congruence_is_on_the_power():
    # 9 = 3^2 = 1 (mod 4) counts toward psi for 1 mod 4 even though 3 = 3 (mod 4).
    got = chebyshev("psi", 10, APClass(4, 1))
    assert got == pytest.approx(math.log(5) + math.log(3), abs=1e-12)


def test_chebyshev_rejects_bad_kind_and_negative_x():
    with pytest.raises(ValueError):
        chebyshev("lambda", 10, APClass(4, 1))
    with pytest.raises(ValueError):
        chebyshev("pi", -1, APClass(4, 1))


def test_chebyshev_monotone_in_x():
    cls = APClass(4, 3)
    for kind in ("pi", "theta", "psi"):
        values = [chebyshev(kind, x, cls) for x in range(2, 400, 7)]
        assert all(a <= b for a, b in zip(values, values[1:]))


def test_psi_dominates_theta():
    for d, a in [(4, 1), (4, 3), (3, 2), (12, 7)]:
        cls = APClass(d, a)
        for x in (10, 100, 10_000):
            assert chebyshev("psi", x, cls) >= chebyshev("theta", x, cls)


def test_pi_partitions_over_residues():
    # Summing pi_{d,a} over the coprime residues recovers pi(x) minus the
    # primes dividing d.
    rng = random.Random(7)
    xs = [1000, 10_000, 100_000]
    table_primes = {x: primes_in_ap(x, APClass(2, 1)) for x in xs}  # odd primes
    for d in range(2, 13):
        residues = [a for a in range(1, d) if math.gcd(a, d) == 1]
        for x in xs:
            total = sum(chebyshev("pi", x, APClass(d, a)) for a in residues)
            all_primes = len(table_primes[x]) + 1  # put 2 back
            dividing = sum(1 for p in (2, 3, 5, 7, 11) if d % p == 0 and p <= x)
            assert total == all_primes - dividing, (d, x)
    # spot-check a random residue class against trial division
    base = trial_division_primes(3000)
    for _ in range(20):
        d = rng.randrange(2, 13)
        opts = [a for a in range(1, d) if math.gcd(a, d) == 1]
        a = rng.choice(opts)
        assert chebyshev("pi", 3000, APClass(d, a)) == sum(1 for p in base if p % d == a)


def test_kth_prime_in_ap_examples():
    assert kth_prime_in_ap(1, APClass(4, 1)) == 5
    assert kth_prime_in_ap(4, APClass(4, 1)) == 29
    assert kth_prime_in_ap(1, APClass(2, 1)) == 3
    with pytest.raises(ValueError):
        kth_prime_in_ap(0, APClass(4, 1))


def test_kth_prime_in_ap_deep_index_extends_sieve():
    # forces at least one geometric extension past the initial window
    p = kth_prime_in_ap(5000, APClass(4, 1))
    assert is_probable_prime(p) and p % 4 == 1
    assert len(primes_in_ap(p, APClass(4, 1))) == 5000


def test_is_probable_prime_against_trial_division():
    small = set(trial_division_primes(5000))
    for n in range(5001):
        assert is_probable_prime(n) == (n in small)
    # a few Carmichael numbers and large primes
    assert not is_probable_prime(561)
    assert not is_probable_prime(1_373_653)
    assert is_probable_prime(2_147_483_647)
    assert is_probable_prime(1_000_033)
