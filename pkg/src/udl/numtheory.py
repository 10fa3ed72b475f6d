"""Prime counting and Chebyshev sums over arithmetic progressions."""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass

# Flat bytearray sieves stay comfortable to ~1e8; refuse beyond that rather
# than silently thrash.
SIEVE_HARD_LIMIT = 10**8

_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


@dataclass(frozen=True)
class APClass:
    """Residue class a mod d; requires 0 < a < d and gcd(a, d) = 1."""

    d: int
    a: int

    def __post_init__(self) -> None:
        if self.d < 2:
            raise ValueError(f"modulus must be >= 2, got d={self.d}")
        if not 0 < self.a < self.d:
            raise ValueError(f"residue must satisfy 0 < a < d, got a={self.a}, d={self.d}")
        if math.gcd(self.a, self.d) != 1:
            raise ValueError(f"residue must be coprime to modulus, got a={self.a}, d={self.d}")


AP_1_MOD_4 = APClass(4, 1)


def _sieve_flags(limit: int) -> bytearray:
    flags = bytearray([1]) * (limit + 1)
    flags[0:2] = b"\x00\x00"[: min(2, limit + 1)]
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            step = len(range(p * p, limit + 1, p))
            flags[p * p :: p] = bytearray(step)
    return flags


class PrimeTable:
    """Primes up to a fixed limit via a flat sieve of Eratosthenes.

    Attributes:
        limit: inclusive sieve bound.
        primes: sorted list of all primes <= limit.
    """

    def __init__(self, limit: int):
        if limit < 0:
            raise ValueError(f"sieve limit must be nonnegative, got {limit}")
        if limit > SIEVE_HARD_LIMIT:
            raise ValueError(f"sieve limit {limit} exceeds hard cap {SIEVE_HARD_LIMIT}")
        self.limit = limit
        self._flags = _sieve_flags(limit)
        self.primes = [i for i in range(limit + 1) if self._flags[i]]

    def is_prime(self, n: int) -> bool:
        if not 0 <= n <= self.limit:
            raise ValueError(f"{n} is outside the sieved range [0, {self.limit}]")
        return bool(self._flags[n])

    def primes_up_to(self, x: int) -> list[int]:
        if x > self.limit:
            raise ValueError(f"{x} is outside the sieved range [0, {self.limit}]")
        return self.primes[: bisect_right(self.primes, x)]


_cache: PrimeTable | None = None


def _table(limit: int) -> PrimeTable:
    """Shared table, grown geometrically so repeat callers reuse one sieve."""
    global _cache
    if _cache is None or _cache.limit < limit:
        target = max(limit, 1 << 16)
        if _cache is not None:
            target = max(target, min(2 * _cache.limit, SIEVE_HARD_LIMIT))
        _cache = PrimeTable(target)
    return _cache


def is_probable_prime(n: int) -> bool:
    """Miller-Rabin with a witness set deterministic below 3.3e24."""
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = (d & -d).bit_length() - 1
    d >>= s
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def euler_phi(d: int) -> int:
    """Euler totient by trial division."""
    if d < 1:
        raise ValueError(f"totient needs d >= 1, got {d}")
    result = d
    n = d
    p = 2
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            result -= result // p
        p += 1 if p == 2 else 2
    if n > 1:
        result -= result // n
    return result


def primes_in_ap(limit: int, cls: APClass) -> list[int]:
    """All primes p <= limit with p = a (mod d), ascending."""
    if limit < 0:
        raise ValueError(f"limit must be nonnegative, got {limit}")
    d, a = cls.d, cls.a
    return [p for p in _table(max(limit, 2)).primes_up_to(limit) if p % d == a]


def chebyshev(kind: str, x: float, cls: APClass) -> float:
    """Prime-counting sums restricted to the class a mod d.

    kind "pi" counts primes p <= x with p = a (mod d); "theta" sums log p over
    the same primes; "psi" sums log p over prime powers p^l <= x whose value
    satisfies p^l = a (mod d).  Note the psi congruence condition is on the
    power itself, not on p: 9 = 3^2 contributes log 3 to psi for the class
    1 mod 4 even though 3 = 3 (mod 4).
    """
    if x < 0:
        raise ValueError(f"x must be nonnegative, got {x}")
    xf = math.floor(x)
    d, a = cls.d, cls.a
    if kind == "pi":
        return len(primes_in_ap(xf, cls))
    if kind == "theta":
        return math.fsum(math.log(p) for p in primes_in_ap(xf, cls))
    if kind == "psi":
        total = []
        for p in _table(max(xf, 2)).primes_up_to(max(xf, 0)):
            logp = math.log(p)
            power = p
            while power <= xf:
                if power % d == a:
                    total.append(logp)
                power *= p
        return math.fsum(total)
    raise ValueError(f"kind must be one of pi, theta, psi; got {kind!r}")


def kth_prime_in_ap(k: int, cls: APClass) -> int:
    """k-th smallest prime in the class a mod d (1-indexed).

    The sieve grows geometrically until the prime appears; a class that stays
    too thin past the hard sieve cap raises RuntimeError.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    limit = 1 << 12
    while True:
        found = primes_in_ap(limit, cls)
        if len(found) >= k:
            return found[k - 1]
        if limit >= SIEVE_HARD_LIMIT:
            raise RuntimeError(
                f"sieve exhausted at {SIEVE_HARD_LIMIT} before prime #{k} of {cls.a} mod {cls.d}"
            )
        limit = min(limit * 4, SIEVE_HARD_LIMIT)
